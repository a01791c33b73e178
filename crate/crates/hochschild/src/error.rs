use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// The CLI maps these onto exit codes: schema/parameter problems are
/// "invalid input", `AxiomViolation` is its own failure class, and
/// `CertificationUnattainable` signals that a requested certified window
/// cannot be certified at the given truncation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("ring mismatch: expected {expected}, got {got}")]
    RingMismatch { expected: String, got: String },

    #[error("matrix shape mismatch: {context}")]
    ShapeMismatch { context: String },

    #[error("composite is not zero: {context}")]
    CompositionNotZero { context: String },

    #[error("integer overflow during exact arithmetic ({context}); entries exceed i64")]
    Overflow { context: String },

    #[error("exact division failed ({context}); this indicates corrupted input or an internal bug")]
    DivisionNotExact { context: String },

    #[error("window is invalid: lo {lo} > hi {hi}")]
    BadWindow { lo: i64, hi: i64 },

    #[error("data does not cover the requested window: {context}")]
    WindowNotCovered { context: String },

    #[error("structure constants are malformed: {context}")]
    BadStructureConstants { context: String },

    #[error("no usable unit: {context}")]
    NoDesignatedUnit { context: String },

    #[error("no usable counit: {context}")]
    NoDesignatedCounit { context: String },

    #[error("not augmented: {context}")]
    NotAugmented { context: String },

    #[error("axiom check failed:\n{report}")]
    AxiomViolation { report: String },

    #[error("operation requires field coefficients: {context}")]
    FieldRequired { context: String },

    #[error("declared-unbounded input: {context}")]
    Unbounded { context: String },

    #[error("size cap exceeded: {context} (raise the cap to override)")]
    CapExceeded { context: String },

    #[error("refusing to transport: {context}")]
    TransportRefused { context: String },

    #[error("certification unattainable: {context}")]
    CertificationUnattainable { context: String },

    #[error("unknown example '{0}'")]
    UnknownExample(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
