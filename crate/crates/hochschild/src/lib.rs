//! Exact computation of Hochschild homology of graded DG algebras and
//! coHochschild homology of graded DG coalgebras over GF(p) or Z, together
//! with the linear-duality bookkeeping that relates the two: dualizable and
//! quasi-dualizable objects, truncated bar/cobar complexes with per-degree
//! stability certificates, and rank-for-rank duality checks.
//!
//! No floating point, no approximation: every rank, kernel, and invariant
//! factor is computed exactly, and anything that cannot be certified at a
//! finite truncation is flagged rather than guessed.

pub mod bar_cobar;
pub mod dg;
pub mod duality;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod ring;
pub mod schema;

pub use bar_cobar::{
    cohochschild, conormalized_cobar, ext_from_resolution, hochschild, normalized_bar,
    oracle_crosscheck, oracle_unnormalized_bar, tor_one_sided, Direction, ExtTable,
    ExteriorElement, PeriodicResolution, TotalComplex, ORACLE_CAP_ENV,
};
pub use duality::{
    condition1_check, condition2_check, duality_transport_cohh, quasi_properness_report,
    tensor_rank_bound_demo, transport_from_table, truncated_duality_check, ConditionReport,
    DualityCheckReport, DualityCheckRow, DualitySubject, QuasiPropernessReport, TensorRankDemo,
    TransportResult, Verdict,
};
pub use error::{Error, Result};
pub use graded::{
    predict_bounds, BoundOp, Bounds, ChainComplex, GradedModule, HomologyTable, Stability,
    TableRow, TruncationMarker, Window,
};
pub use linalg::{homology_group, HomologyGroup, MatrixExact, SnfResult};
pub use ring::CoefficientRing;
pub use schema::{
    parse_structure_file, parse_structure_str, structure_to_value, table_to_json, ParsedStructure,
    TableJson, TableRowJson,
};
