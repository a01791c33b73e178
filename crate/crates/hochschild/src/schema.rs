//! The JSON structure-constant format: parsing user-supplied (co)algebras
//! and emitting computed ones.
//!
//! A file describes one object over one ring. Top-level fields: `ring`,
//! `basis`, then either `unit` + optional `mult` (an algebra) or `counit` +
//! optional `comult` (a coalgebra), plus an optional `diff`. Products and
//! coproducts not listed are zero. Every error carries a JSON pointer to the
//! offending field, so a bad file is rejected with `/mult/3/out/1` rather
//! than a parser backtrace.
//!
//! Parsing validates shape and name resolution only; whether the constants
//! satisfy the (co)algebra axioms is a separate question answered by the
//! axiom checkers, which callers can skip explicitly. The one structural
//! exception is d² = 0, which complex assembly always enforces.

use crate::dg::{
    check_algebra_axioms, check_coalgebra_axioms, BasisRef, CoExpansion, DGAlgebra, DGCoalgebra,
    Expansion,
};
use crate::error::{Error, Result};
use crate::graded::{ChainComplex, GradedModule, HomologyTable};
use crate::linalg::MatrixExact;
use crate::ring::CoefficientRing;
use serde::Serialize;
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use std::path::Path;

/// A structure file names either an algebra or a coalgebra.
#[derive(Debug, Clone)]
pub enum ParsedStructure {
    Algebra(DGAlgebra),
    Coalgebra(DGCoalgebra),
}

impl ParsedStructure {
    pub fn kind(&self) -> &'static str {
        match self {
            ParsedStructure::Algebra(_) => "algebra",
            ParsedStructure::Coalgebra(_) => "coalgebra",
        }
    }

    pub fn complex(&self) -> &ChainComplex {
        match self {
            ParsedStructure::Algebra(a) => a.complex(),
            ParsedStructure::Coalgebra(c) => c.complex(),
        }
    }

    /// Run the matching axiom checker.
    pub fn check_axioms(&self) -> Result<()> {
        match self {
            ParsedStructure::Algebra(a) => check_algebra_axioms(a).into_result(),
            ParsedStructure::Coalgebra(c) => check_coalgebra_axioms(c).into_result(),
        }
    }
}

fn schema_err<T>(pointer: &str, message: impl Into<String>) -> Result<T> {
    Err(Error::Schema { pointer: pointer.to_string(), message: message.into() })
}

fn as_object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or(()).or_else(|_| schema_err(ptr, "expected an object"))
}

fn as_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or(()).or_else(|_| schema_err(ptr, "expected an array"))
}

fn as_string<'a>(v: &'a Value, ptr: &str) -> Result<&'a str> {
    v.as_str().ok_or(()).or_else(|_| schema_err(ptr, "expected a string"))
}

fn as_integer(v: &Value, ptr: &str) -> Result<i64> {
    v.as_i64().ok_or(()).or_else(|_| schema_err(ptr, "expected an integer"))
}

fn require<'a>(m: &'a Map<String, Value>, key: &str, ptr: &str) -> Result<&'a Value> {
    m.get(key).ok_or(()).or_else(|_| schema_err(ptr, format!("missing required field '{key}'")))
}

fn reject_unknown_keys(m: &Map<String, Value>, allowed: &[&str], ptr: &str) -> Result<()> {
    for key in m.keys() {
        if !allowed.contains(&key.as_str()) {
            return schema_err(&format!("{ptr}/{key}"), "unknown field");
        }
    }
    Ok(())
}

fn parse_ring(v: &Value) -> Result<CoefficientRing> {
    let m = as_object(v, "/ring")?;
    reject_unknown_keys(m, &["kind", "p"], "/ring")?;
    match as_string(require(m, "kind", "/ring")?, "/ring/kind")? {
        "integers" => {
            if m.contains_key("p") {
                return schema_err("/ring/p", "integers take no modulus");
            }
            Ok(CoefficientRing::integers())
        }
        "prime_field" => {
            let p = as_integer(require(m, "p", "/ring")?, "/ring/p")?;
            let p: u32 = p
                .try_into()
                .ok()
                .filter(|&p| p >= 2)
                .ok_or(())
                .or_else(|_| schema_err("/ring/p", format!("modulus {p} out of range")))?;
            CoefficientRing::prime_field(p)
                .map_err(|_| ())
                .or_else(|_| schema_err("/ring/p", format!("{p} is not prime")))
        }
        other => schema_err("/ring/kind", format!("unknown ring kind '{other}'")),
    }
}

/// Basis section: global name table plus the labelled graded module.
struct BasisTable {
    by_name: BTreeMap<String, BasisRef>,
    module: GradedModule,
}

impl BasisTable {
    fn resolve(&self, name: &str, ptr: &str) -> Result<BasisRef> {
        self.by_name
            .get(name)
            .copied()
            .ok_or(())
            .or_else(|_| schema_err(ptr, format!("unknown basis vector '{name}'")))
    }
}

fn parse_basis(v: &Value, ring: CoefficientRing) -> Result<BasisTable> {
    let entries = as_array(v, "/basis")?;
    let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut staged: Vec<(String, i64)> = Vec::new();
    for (i, entry) in entries.iter().enumerate() {
        let ptr = format!("/basis/{i}");
        let m = as_object(entry, &ptr)?;
        reject_unknown_keys(m, &["name", "degree"], &ptr)?;
        let name = as_string(require(m, "name", &ptr)?, &format!("{ptr}/name"))?;
        let degree = as_integer(require(m, "degree", &ptr)?, &format!("{ptr}/degree"))?;
        if staged.iter().any(|(n, _)| n == name) {
            return schema_err(&format!("{ptr}/name"), format!("duplicate basis name '{name}'"));
        }
        staged.push((name.to_string(), degree));
        labels.entry(degree).or_default().push(name.to_string());
    }
    let module = GradedModule::with_labels(ring, labels)?;
    let mut by_name = BTreeMap::new();
    let mut counters: BTreeMap<i64, usize> = BTreeMap::new();
    for (name, degree) in staged {
        let index = counters.entry(degree).or_insert(0);
        by_name.insert(name, (degree, *index));
        *index += 1;
    }
    Ok(BasisTable { by_name, module })
}

/// `[[name, coeff], …]` lists, shared by diff targets and product outputs.
fn parse_pair_list(v: &Value, basis: &BasisTable, ptr: &str) -> Result<Expansion> {
    let pairs = as_array(v, ptr)?;
    let mut out = Vec::with_capacity(pairs.len());
    for (j, pair) in pairs.iter().enumerate() {
        let pptr = format!("{ptr}/{j}");
        let items = as_array(pair, &pptr)?;
        if items.len() != 2 {
            return schema_err(&pptr, "expected a [name, coefficient] pair");
        }
        let target = basis.resolve(as_string(&items[0], &format!("{pptr}/0"))?, &format!("{pptr}/0"))?;
        let coeff = as_integer(&items[1], &format!("{pptr}/1"))?;
        out.push((target, coeff));
    }
    Ok(out)
}

fn parse_diff(v: &Value, basis: &BasisTable) -> Result<ChainComplex> {
    let entries = as_array(v, "/diff")?;
    let mut columns: BTreeMap<BasisRef, Expansion> = BTreeMap::new();
    for (i, entry) in entries.iter().enumerate() {
        let ptr = format!("/diff/{i}");
        let m = as_object(entry, &ptr)?;
        reject_unknown_keys(m, &["from", "to"], &ptr)?;
        let from_ptr = format!("{ptr}/from");
        let from = basis.resolve(as_string(require(m, "from", &ptr)?, &from_ptr)?, &from_ptr)?;
        if columns.contains_key(&from) {
            return schema_err(&from_ptr, "duplicate differential entry");
        }
        let expansion = parse_pair_list(require(m, "to", &ptr)?, basis, &format!("{ptr}/to"))?;
        for (j, &((d, _), _)) in expansion.iter().enumerate() {
            if d != from.0 - 1 {
                return schema_err(
                    &format!("{ptr}/to/{j}"),
                    format!("differential target must sit in degree {}, found {d}", from.0 - 1),
                );
            }
        }
        columns.insert(from, expansion);
    }
    let mut diffs: BTreeMap<i64, MatrixExact> = BTreeMap::new();
    for (&(t, col), expansion) in &columns {
        let matrix = diffs.entry(t).or_insert_with(|| {
            MatrixExact::zero(basis.module.ring(), basis.module.rank(t - 1), basis.module.rank(t))
        });
        for &((_, row), coeff) in expansion {
            matrix.set(row, col, coeff)?;
        }
    }
    diffs.retain(|_, m| !m.is_zero());
    // d² = 0 is enforced here, no way to opt out.
    ChainComplex::new(basis.module.clone(), diffs)
}

fn parse_mult(
    v: &Value,
    basis: &BasisTable,
) -> Result<BTreeMap<(BasisRef, BasisRef), Expansion>> {
    let entries = as_array(v, "/mult")?;
    let mut products = BTreeMap::new();
    for (i, entry) in entries.iter().enumerate() {
        let ptr = format!("/mult/{i}");
        let m = as_object(entry, &ptr)?;
        reject_unknown_keys(m, &["a", "b", "out"], &ptr)?;
        let a_ptr = format!("{ptr}/a");
        let b_ptr = format!("{ptr}/b");
        let a = basis.resolve(as_string(require(m, "a", &ptr)?, &a_ptr)?, &a_ptr)?;
        let b = basis.resolve(as_string(require(m, "b", &ptr)?, &b_ptr)?, &b_ptr)?;
        if products.contains_key(&(a, b)) {
            return schema_err(&ptr, "duplicate product entry");
        }
        let out = parse_pair_list(require(m, "out", &ptr)?, basis, &format!("{ptr}/out"))?;
        products.insert((a, b), out);
    }
    Ok(products)
}

fn parse_comult(v: &Value, basis: &BasisTable) -> Result<BTreeMap<BasisRef, CoExpansion>> {
    let entries = as_array(v, "/comult")?;
    let mut coproducts = BTreeMap::new();
    for (i, entry) in entries.iter().enumerate() {
        let ptr = format!("/comult/{i}");
        let m = as_object(entry, &ptr)?;
        reject_unknown_keys(m, &["from", "out"], &ptr)?;
        let from_ptr = format!("{ptr}/from");
        let from = basis.resolve(as_string(require(m, "from", &ptr)?, &from_ptr)?, &from_ptr)?;
        if coproducts.contains_key(&from) {
            return schema_err(&from_ptr, "duplicate coproduct entry");
        }
        let triples = as_array(require(m, "out", &ptr)?, &format!("{ptr}/out"))?;
        let mut out = Vec::with_capacity(triples.len());
        for (j, triple) in triples.iter().enumerate() {
            let tptr = format!("{ptr}/out/{j}");
            let items = as_array(triple, &tptr)?;
            if items.len() != 3 {
                return schema_err(&tptr, "expected a [left, right, coefficient] triple");
            }
            let left =
                basis.resolve(as_string(&items[0], &format!("{tptr}/0"))?, &format!("{tptr}/0"))?;
            let right =
                basis.resolve(as_string(&items[1], &format!("{tptr}/1"))?, &format!("{tptr}/1"))?;
            let coeff = as_integer(&items[2], &format!("{tptr}/2"))?;
            out.push(((left, right), coeff));
        }
        coproducts.insert(from, out);
    }
    Ok(coproducts)
}

/// Collapse the counit map to its designated basis vector: after dropping
/// zeros it must be a single degree-0 vector with coefficient 1, the
/// splitting the conormalized cobar construction quotients against.
fn parse_counit(v: &Value, basis: &BasisTable) -> Result<BasisRef> {
    let m = as_object(v, "/counit")?;
    let mut support = Vec::new();
    for (name, coeff) in m {
        let ptr = format!("/counit/{name}");
        let target = basis.resolve(name, &ptr)?;
        let value = as_integer(coeff, &ptr)?;
        if value != 0 {
            support.push((target, value, ptr));
        }
    }
    match support.as_slice() {
        [(target, 1, _)] if target.0 == 0 => Ok(*target),
        [(_, _, ptr)] => Err(Error::NoDesignatedCounit {
            context: format!(
                "counit must be 1 on a single degree-0 basis vector; offending entry at {ptr}"
            ),
        }),
        _ => Err(Error::NoDesignatedCounit {
            context: format!("counit must single out one basis vector, found {}", support.len()),
        }),
    }
}

/// Parse a structure file from already-loaded JSON. Shape and name
/// resolution only — run `check_axioms` on the result (or use
/// `parse_structure_file`) to validate the algebraic laws.
pub fn parse_structure_value(v: &Value) -> Result<ParsedStructure> {
    let root = as_object(v, "")?;
    reject_unknown_keys(root, &["ring", "basis", "unit", "counit", "diff", "mult", "comult"], "")?;
    let ring = parse_ring(require(root, "ring", "")?)?;
    let basis = parse_basis(require(root, "basis", "")?, ring)?;
    let complex = match root.get("diff") {
        Some(d) => parse_diff(d, &basis)?,
        None => ChainComplex::with_zero_differential(basis.module.clone()),
    };

    match (root.get("unit"), root.get("counit")) {
        (Some(_), Some(_)) => schema_err("/counit", "file declares both unit and counit"),
        (Some(unit), None) => {
            if root.contains_key("comult") {
                return schema_err("/comult", "an algebra file cannot carry comult");
            }
            let unit = basis.resolve(as_string(unit, "/unit")?, "/unit")?;
            let products = match root.get("mult") {
                Some(m) => parse_mult(m, &basis)?,
                None => BTreeMap::new(),
            };
            Ok(ParsedStructure::Algebra(DGAlgebra::new(complex, products, unit)?))
        }
        (None, Some(counit)) => {
            if root.contains_key("mult") {
                return schema_err("/mult", "a coalgebra file cannot carry mult");
            }
            let counit = parse_counit(counit, &basis)?;
            let coproducts = match root.get("comult") {
                Some(c) => parse_comult(c, &basis)?,
                None => BTreeMap::new(),
            };
            Ok(ParsedStructure::Coalgebra(DGCoalgebra::new(complex, coproducts, counit)?))
        }
        (None, None) => {
            schema_err("", "file must declare a unit (algebra) or a counit (coalgebra)")
        }
    }
}

pub fn parse_structure_str(text: &str) -> Result<ParsedStructure> {
    let value: Value = serde_json::from_str(text)?;
    parse_structure_value(&value)
}

/// Load, parse, and (unless told otherwise) check axioms.
pub fn parse_structure_file(path: &Path, check_axioms: bool) -> Result<ParsedStructure> {
    let text = std::fs::read_to_string(path)?;
    let parsed = parse_structure_str(&text)?;
    if check_axioms {
        parsed.check_axioms()?;
    }
    Ok(parsed)
}

// ---------------------------------------------------------------------------
// Emission: computed objects back out in the same format.

fn ring_to_value(ring: CoefficientRing) -> Value {
    match ring {
        CoefficientRing::PrimeField { p } => {
            serde_json::json!({ "kind": "prime_field", "p": p })
        }
        CoefficientRing::Integers => serde_json::json!({ "kind": "integers" }),
    }
}

/// Basis names for emission; fails when labels collide, since the format
/// identifies vectors by name alone.
fn emission_names(complex: &ChainComplex) -> Result<BTreeMap<BasisRef, String>> {
    let module = complex.module();
    let mut names = BTreeMap::new();
    let mut seen = BTreeMap::new();
    for d in module.support() {
        for i in 0..module.rank(d) {
            let name = module.label(d, i);
            if let Some(prior) = seen.insert(name.clone(), (d, i)) {
                return schema_err(
                    "/basis",
                    format!("label '{name}' used at both {prior:?} and {:?}", (d, i)),
                );
            }
            names.insert((d, i), name);
        }
    }
    Ok(names)
}

fn basis_to_value(names: &BTreeMap<BasisRef, String>) -> Value {
    let entries: Vec<Value> = names
        .iter()
        .map(|(&(d, _), name)| serde_json::json!({ "name": name, "degree": d }))
        .collect();
    Value::Array(entries)
}

fn diff_to_value(complex: &ChainComplex, names: &BTreeMap<BasisRef, String>) -> Value {
    let mut entries = Vec::new();
    for t in complex.module().support() {
        let d = complex.differential(t);
        for col in 0..d.cols() {
            let targets: Vec<Value> = (0..d.rows())
                .filter(|&row| d.get(row, col) != 0)
                .map(|row| serde_json::json!([names[&(t - 1, row)], d.get(row, col)]))
                .collect();
            if !targets.is_empty() {
                entries.push(serde_json::json!({ "from": names[&(t, col)], "to": targets }));
            }
        }
    }
    Value::Array(entries)
}

fn expansion_to_value(expansion: &Expansion, names: &BTreeMap<BasisRef, String>) -> Value {
    Value::Array(
        expansion.iter().map(|&(x, c)| serde_json::json!([names[&x], c])).collect(),
    )
}

pub fn algebra_to_value(a: &DGAlgebra) -> Result<Value> {
    let names = emission_names(a.complex())?;
    let mult: Vec<Value> = a
        .products()
        .iter()
        .map(|(&(x, y), out)| {
            serde_json::json!({
                "a": names[&x],
                "b": names[&y],
                "out": expansion_to_value(out, &names),
            })
        })
        .collect();
    let mut root = Map::new();
    root.insert("ring".to_string(), ring_to_value(a.ring()));
    root.insert("basis".to_string(), basis_to_value(&names));
    root.insert("unit".to_string(), Value::String(names[&a.unit()].clone()));
    let diff = diff_to_value(a.complex(), &names);
    if !diff.as_array().unwrap().is_empty() {
        root.insert("diff".to_string(), diff);
    }
    if !mult.is_empty() {
        root.insert("mult".to_string(), Value::Array(mult));
    }
    Ok(Value::Object(root))
}

pub fn coalgebra_to_value(c: &DGCoalgebra) -> Result<Value> {
    let names = emission_names(c.complex())?;
    let comult: Vec<Value> = c
        .coproducts()
        .iter()
        .map(|(&x, out)| {
            let triples: Vec<Value> = out
                .iter()
                .map(|&((y, z), coeff)| serde_json::json!([names[&y], names[&z], coeff]))
                .collect();
            serde_json::json!({ "from": names[&x], "out": triples })
        })
        .collect();
    let mut root = Map::new();
    root.insert("ring".to_string(), ring_to_value(c.ring()));
    root.insert("basis".to_string(), basis_to_value(&names));
    root.insert(
        "counit".to_string(),
        Value::Object([(names[&c.counit()].clone(), Value::from(1))].into_iter().collect()),
    );
    let diff = diff_to_value(c.complex(), &names);
    if !diff.as_array().unwrap().is_empty() {
        root.insert("diff".to_string(), diff);
    }
    if !comult.is_empty() {
        root.insert("comult".to_string(), Value::Array(comult));
    }
    Ok(Value::Object(root))
}

pub fn structure_to_value(s: &ParsedStructure) -> Result<Value> {
    match s {
        ParsedStructure::Algebra(a) => algebra_to_value(a),
        ParsedStructure::Coalgebra(c) => coalgebra_to_value(c),
    }
}

// ---------------------------------------------------------------------------
// Homology tables as JSON, mirroring the text rendering column for column.

#[derive(Debug, Clone, Serialize)]
pub struct TableRowJson {
    pub degree: i64,
    pub free: usize,
    pub torsion: Vec<i64>,
    pub flag: String,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableJson {
    pub ring: String,
    pub rows: Vec<TableRowJson>,
}

pub fn table_to_json(table: &HomologyTable) -> TableJson {
    TableJson {
        ring: table.ring.describe(),
        rows: table
            .rows
            .iter()
            .map(|(&degree, row)| TableRowJson {
                degree,
                free: row.group.free_rank,
                torsion: row.group.torsion.clone(),
                flag: row.stability.short_name().to_string(),
                note: row.stability.note(),
            })
            .collect(),
    }
}
