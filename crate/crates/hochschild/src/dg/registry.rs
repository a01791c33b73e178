//! Named example (co)algebras behind a common builder trait, selected at
//! runtime by name. Each entry constructs its structure from parameters
//! (ring, generator degrees, truncation order, rank, window).

use super::{dualize_algebra, BasisRef, CoExpansion, DGAlgebra, DGCoalgebra, Expansion};
use crate::error::{Error, Result};
use crate::graded::{ChainComplex, GradedModule, Window};
use crate::linalg::MatrixExact;
use crate::ring::CoefficientRing;
use std::collections::BTreeMap;

/// What a builder can hand back: structured objects or a bare complex.
#[derive(Debug, Clone)]
pub enum ExampleObject {
    Algebra(DGAlgebra),
    Coalgebra(DGCoalgebra),
    Module(ChainComplex),
}

impl ExampleObject {
    pub fn kind(&self) -> &'static str {
        match self {
            ExampleObject::Algebra(_) => "algebra",
            ExampleObject::Coalgebra(_) => "coalgebra",
            ExampleObject::Module(_) => "module",
        }
    }

    pub fn complex(&self) -> &ChainComplex {
        match self {
            ExampleObject::Algebra(a) => a.complex(),
            ExampleObject::Coalgebra(c) => c.complex(),
            ExampleObject::Module(m) => m,
        }
    }
}

/// Parameters a builder may consume; unused fields are ignored by entries
/// that don't need them, missing required ones produce `BadParameter`.
#[derive(Debug, Clone, Default)]
pub struct ExampleParams {
    pub ring: Option<CoefficientRing>,
    pub p: Option<u32>,
    pub gen_degrees: Vec<i64>,
    pub truncation: Option<u32>,
    pub size: Option<usize>,
    pub window: Option<Window>,
}

impl ExampleParams {
    fn field_ring(&self) -> CoefficientRing {
        self.ring.unwrap_or(CoefficientRing::PrimeField { p: 2 })
    }

    fn required_p(&self, who: &str) -> Result<u32> {
        self.p.ok_or_else(|| Error::BadParameter(format!("{who} needs --p <prime>")))
    }
}

/// One constructible example; implementations are registered by name.
pub trait ExampleBuilder: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn build(&self, params: &ExampleParams) -> Result<ExampleObject>;
}

/// Name-indexed collection of builders.
pub struct ExampleRegistry {
    builders: Vec<Box<dyn ExampleBuilder>>,
}

impl ExampleRegistry {
    pub fn new() -> Self {
        ExampleRegistry { builders: Vec::new() }
    }

    /// Registry with every shipped example installed.
    pub fn with_defaults() -> Self {
        let mut reg = ExampleRegistry::new();
        reg.register(Box::new(ExteriorAlgebraBuilder));
        reg.register(Box::new(ExteriorCoalgebraBuilder));
        reg.register(Box::new(TruncatedPolynomialBuilder));
        reg.register(Box::new(KoszulModelBuilder));
        reg.register(Box::new(DualKoszulBuilder));
        reg.register(Box::new(LaurentPatternBuilder));
        reg.register(Box::new(FiniteVectorSpaceBuilder));
        reg
    }

    pub fn register(&mut self, builder: Box<dyn ExampleBuilder>) {
        self.builders.push(builder);
    }

    pub fn lookup(&self, name: &str) -> Result<&dyn ExampleBuilder> {
        self.builders
            .iter()
            .find(|b| b.name() == name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnknownExample(name.to_string()))
    }

    pub fn build(&self, name: &str, params: &ExampleParams) -> Result<ExampleObject> {
        self.lookup(name)?.build(params)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&'static str, &'static str)> + '_ {
        self.builders.iter().map(|b| (b.name(), b.summary()))
    }

    /// The fixed instantiation list that quantified test suites run over:
    /// every shipped builder at small representative parameters.
    pub fn standard_instances(&self) -> Result<Vec<(ExampleObject, String)>> {
        let gf = |p: u32| CoefficientRing::PrimeField { p };
        let mut out = Vec::new();
        let cases: Vec<(&str, ExampleParams)> = vec![
            (
                "exterior",
                ExampleParams { ring: Some(gf(2)), gen_degrees: vec![1], ..Default::default() },
            ),
            (
                "exterior",
                ExampleParams { ring: Some(gf(3)), gen_degrees: vec![-1], ..Default::default() },
            ),
            (
                "exterior",
                ExampleParams { ring: Some(gf(5)), gen_degrees: vec![1], ..Default::default() },
            ),
            (
                "exterior",
                ExampleParams { ring: Some(gf(2)), gen_degrees: vec![1, 2], ..Default::default() },
            ),
            (
                "exterior-coalgebra",
                ExampleParams { ring: Some(gf(2)), gen_degrees: vec![1], ..Default::default() },
            ),
            (
                "exterior-coalgebra",
                ExampleParams { ring: Some(gf(3)), gen_degrees: vec![1], ..Default::default() },
            ),
            (
                "exterior-coalgebra",
                ExampleParams { ring: Some(gf(2)), gen_degrees: vec![1, 2], ..Default::default() },
            ),
            (
                "truncated-polynomial",
                ExampleParams {
                    ring: Some(gf(2)),
                    gen_degrees: vec![2],
                    truncation: Some(3),
                    ..Default::default()
                },
            ),
            ("koszul", ExampleParams { p: Some(2), ..Default::default() }),
            ("koszul", ExampleParams { p: Some(3), ..Default::default() }),
            ("dual-koszul", ExampleParams { p: Some(2), ..Default::default() }),
            ("dual-koszul", ExampleParams { p: Some(3), ..Default::default() }),
            (
                "laurent",
                ExampleParams {
                    ring: Some(gf(2)),
                    window: Some(Window::new(-2, 2)?),
                    ..Default::default()
                },
            ),
            (
                "finite-vector-space",
                ExampleParams { ring: Some(gf(2)), size: Some(3), ..Default::default() },
            ),
        ];
        for (name, params) in cases {
            let object = self.build(name, &params)?;
            let tag = format!(
                "{name}({}{}{}{})",
                params.ring.map(|r| r.describe()).unwrap_or_default(),
                params
                    .p
                    .map(|p| format!(" p={p}"))
                    .unwrap_or_default(),
                if params.gen_degrees.is_empty() {
                    String::new()
                } else {
                    format!(" degrees {:?}", params.gen_degrees)
                },
                params.size.map(|s| format!(" rank {s}")).unwrap_or_default(),
            );
            out.push((object, tag));
        }
        Ok(out)
    }
}

impl Default for ExampleRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}

/// Basis bookkeeping shared by the subset-basis builders: assign each subset
/// of generators a (degree, index) slot, degrees from the sum of member
/// degrees, indices in subset enumeration order within each degree.
struct SubsetBasis {
    degrees: Vec<i64>,
    /// subset bitmask → (degree, index)
    slots: BTreeMap<u32, BasisRef>,
    labels: BTreeMap<i64, Vec<String>>,
}

impl SubsetBasis {
    fn new(gen_degrees: &[i64]) -> Result<Self> {
        if gen_degrees.is_empty() {
            return Err(Error::BadParameter(
                "at least one generator degree is required".to_string(),
            ));
        }
        if gen_degrees.len() > 16 {
            return Err(Error::BadParameter("too many generators (max 16)".to_string()));
        }
        if gen_degrees.contains(&0) {
            return Err(Error::BadParameter(
                "generator degree 0 would collide with the unit".to_string(),
            ));
        }
        let k = gen_degrees.len();
        let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut slots = BTreeMap::new();
        for mask in 0u32..(1 << k) {
            let degree: i64 = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| gen_degrees[i]).sum();
            let label = if mask == 0 {
                "1".to_string()
            } else {
                (0..k)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| format!("x{}", i + 1))
                    .collect::<Vec<_>>()
                    .join("")
            };
            let names = labels.entry(degree).or_default();
            slots.insert(mask, (degree, names.len()));
            names.push(label);
        }
        Ok(SubsetBasis { degrees: gen_degrees.to_vec(), slots, labels })
    }

    /// Koszul sign of e_S·e_T: (−1) to the sum of |x_i||x_j| over pairs
    /// i ∈ S, j ∈ T with i > j (each such pair is one transposition chain
    /// when merging the sorted generator lists).
    fn merge_sign(&self, s: u32, t: u32) -> i64 {
        let k = self.degrees.len();
        let mut exponent: i64 = 0;
        for i in 0..k {
            if s & (1 << i) == 0 {
                continue;
            }
            for j in 0..k {
                if t & (1 << j) != 0 && j < i {
                    exponent += self.degrees[i] * self.degrees[j];
                }
            }
        }
        if exponent.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

/// Exterior algebra Λ(x₁, …, x_k) with x_i² = 0, zero differential.
struct ExteriorAlgebraBuilder;

impl ExampleBuilder for ExteriorAlgebraBuilder {
    fn name(&self) -> &'static str {
        "exterior"
    }

    fn summary(&self) -> &'static str {
        "exterior algebra on generators of given degrees (--ring, --gen-degree)"
    }

    fn build(&self, params: &ExampleParams) -> Result<ExampleObject> {
        let ring = params.field_ring();
        let degrees = if params.gen_degrees.is_empty() { vec![1] } else { params.gen_degrees.clone() };
        let basis = SubsetBasis::new(&degrees)?;
        let module = GradedModule::with_labels(ring, basis.labels.clone())?;
        let complex = ChainComplex::with_zero_differential(module);
        let mut products: BTreeMap<(BasisRef, BasisRef), Expansion> = BTreeMap::new();
        let masks: Vec<u32> = basis.slots.keys().copied().collect();
        for &s in &masks {
            for &t in &masks {
                if s & t != 0 {
                    continue; // repeated generator: product is zero
                }
                let sign = basis.merge_sign(s, t);
                products.insert((basis.slots[&s], basis.slots[&t]), vec![(basis.slots[&(s | t)], sign)]);
            }
        }
        let unit = basis.slots[&0];
        Ok(ExampleObject::Algebra(DGAlgebra::new(complex, products, unit)?))
    }
}

/// The coalgebra dual to an exterior algebra, with its generators placed in
/// the *requested* degrees: built as the linear dual of Λ on negated degrees.
struct ExteriorCoalgebraBuilder;

impl ExampleBuilder for ExteriorCoalgebraBuilder {
    fn name(&self) -> &'static str {
        "exterior-coalgebra"
    }

    fn summary(&self) -> &'static str {
        "exterior coalgebra (deconcatenation) on generators of given degrees"
    }

    fn build(&self, params: &ExampleParams) -> Result<ExampleObject> {
        let degrees = if params.gen_degrees.is_empty() { vec![1] } else { params.gen_degrees.clone() };
        let negated: Vec<i64> = degrees.iter().map(|d| -d).collect();
        let alg_params = ExampleParams {
            ring: params.ring,
            gen_degrees: negated,
            ..Default::default()
        };
        let algebra = match ExteriorAlgebraBuilder.build(&alg_params)? {
            ExampleObject::Algebra(a) => a,
            _ => unreachable!(),
        };
        let w = algebra
            .complex()
            .natural_window()
            .expect("exterior algebra is never empty")
            .reflect();
        Ok(ExampleObject::Coalgebra(dualize_algebra(&algebra, w)?))
    }
}

/// Truncated polynomial algebra k[x]/x^n with |x| given, zero differential.
struct TruncatedPolynomialBuilder;

impl ExampleBuilder for TruncatedPolynomialBuilder {
    fn name(&self) -> &'static str {
        "truncated-polynomial"
    }

    fn summary(&self) -> &'static str {
        "truncated polynomial algebra k[x]/xⁿ (--ring, --gen-degree, --truncation)"
    }

    fn build(&self, params: &ExampleParams) -> Result<ExampleObject> {
        let ring = params.field_ring();
        let x_degree = *params.gen_degrees.first().unwrap_or(&1);
        if x_degree == 0 {
            return Err(Error::BadParameter(
                "generator degree 0 would collide with the unit".to_string(),
            ));
        }
        let n = params.truncation.unwrap_or(2);
        if n < 2 {
            return Err(Error::BadParameter("truncation order must be ≥ 2".to_string()));
        }
        let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let mut slot = Vec::new();
        for k in 0..n {
            let degree = x_degree * k as i64;
            let names = labels.entry(degree).or_default();
            slot.push((degree, names.len()));
            names.push(match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            });
        }
        let module = GradedModule::with_labels(ring, labels)?;
        let complex = ChainComplex::with_zero_differential(module);
        let mut products: BTreeMap<(BasisRef, BasisRef), Expansion> = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if a + b < n {
                    products.insert(
                        (slot[a as usize], slot[b as usize]),
                        vec![(slot[(a + b) as usize], 1)],
                    );
                }
            }
        }
        Ok(ExampleObject::Algebra(DGAlgebra::new(complex, products, slot[0])?))
    }
}

/// The two-cell DG algebra over Z resolving F_p: Z·1 in degree 0, Z·ε in
/// degree 1, dε = p, ε² = 0.
struct KoszulModelBuilder;

impl ExampleBuilder for KoszulModelBuilder {
    fn name(&self) -> &'static str {
        "koszul"
    }

    fn summary(&self) -> &'static str {
        "two-cell Koszul model over Z: dε = p, ε² = 0 (--p)"
    }

    fn build(&self, params: &ExampleParams) -> Result<ExampleObject> {
        let p = params.required_p("koszul")?;
        CoefficientRing::prime_field(p)?; // primality gate; the ring itself is Z
        let ring = CoefficientRing::Integers;
        let module = GradedModule::with_labels(
            ring,
            [(0, vec!["1".to_string()]), (1, vec!["e".to_string()])].into(),
        )?;
        let mut diffs = BTreeMap::new();
        diffs.insert(1, MatrixExact::from_rows(ring, &[vec![p as i64]])?);
        let complex = ChainComplex::new(module, diffs)?;
        let unit = (0, 0);
        let eps = (1, 0);
        let mut products: BTreeMap<(BasisRef, BasisRef), Expansion> = BTreeMap::new();
        products.insert((unit, unit), vec![(unit, 1)]);
        products.insert((unit, eps), vec![(eps, 1)]);
        products.insert((eps, unit), vec![(eps, 1)]);
        // ε·ε = 0: omitted.
        Ok(ExampleObject::Algebra(DGAlgebra::new(complex, products, unit)?))
    }
}

/// The coalgebra dual of the Koszul model: degrees 0 and −1 over Z with
/// differential ±p, comultiplication dual to the two-cell product.
struct DualKoszulBuilder;

impl ExampleBuilder for DualKoszulBuilder {
    fn name(&self) -> &'static str {
        "dual-koszul"
    }

    fn summary(&self) -> &'static str {
        "linear dual of the Koszul model: Z in degrees 0 and −1, d = −p (--p)"
    }

    fn build(&self, params: &ExampleParams) -> Result<ExampleObject> {
        let algebra = match KoszulModelBuilder.build(params)? {
            ExampleObject::Algebra(a) => a,
            _ => unreachable!(),
        };
        Ok(ExampleObject::Coalgebra(dualize_algebra(&algebra, Window::new(-1, 0)?)?))
    }
}

/// Rank-one free module in every degree of a window, zero differential —
/// a declared finite window of the unbounded Laurent pattern.
struct LaurentPatternBuilder;

impl ExampleBuilder for LaurentPatternBuilder {
    fn name(&self) -> &'static str {
        "laurent"
    }

    fn summary(&self) -> &'static str {
        "rank-1 module in every degree, windowed (--window); declared unbounded"
    }

    fn build(&self, params: &ExampleParams) -> Result<ExampleObject> {
        let ring = params.field_ring();
        let w = params.window.unwrap_or(Window { lo: -3, hi: 3 });
        let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for d in w.iter() {
            labels.insert(d, vec![format!("t^{d}")]);
        }
        let module = GradedModule::with_labels(ring, labels)?;
        let complex = ChainComplex::with_zero_differential(module)
            .declare_truncation("free rank-1 module in every integer degree (Laurent pattern)", w);
        Ok(ExampleObject::Module(complex))
    }
}

/// Rank-m coalgebra in degree 0 — the divided-power coalgebra dual to
/// k[t]/t^m, declared as a rank window of the unbounded divided-power
/// coalgebra (the degree-0 object whose dual inflates in rank).
struct FiniteVectorSpaceBuilder;

impl ExampleBuilder for FiniteVectorSpaceBuilder {
    fn name(&self) -> &'static str {
        "finite-vector-space"
    }

    fn summary(&self) -> &'static str {
        "rank-m divided-power coalgebra in degree 0 (--size); declared rank window"
    }

    fn build(&self, params: &ExampleParams) -> Result<ExampleObject> {
        let ring = params.field_ring();
        let m = params.size.unwrap_or(3);
        if m == 0 {
            return Err(Error::BadParameter("rank must be ≥ 1".to_string()));
        }
        let labels: BTreeMap<i64, Vec<String>> =
            [(0, (0..m).map(|k| format!("g{k}")).collect())].into();
        let module = GradedModule::with_labels(ring, labels)?;
        let complex = ChainComplex::with_zero_differential(module).declare_rank_truncation(
            "rank-m window of the unbounded degree-0 divided-power coalgebra",
        );
        let mut coproducts: BTreeMap<BasisRef, CoExpansion> = BTreeMap::new();
        for k in 0..m {
            let mut expansion = CoExpansion::new();
            for i in 0..=k {
                expansion.push((((0, i), (0, k - i)), 1));
            }
            coproducts.insert((0, k), expansion);
        }
        Ok(ExampleObject::Coalgebra(DGCoalgebra::new(complex, coproducts, (0, 0))?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::{check_algebra_axioms, check_coalgebra_axioms};

    #[test]
    fn registry_lists_all_entries() {
        let reg = ExampleRegistry::with_defaults();
        let names: Vec<&str> = reg.entries().map(|(n, _)| n).collect();
        for expected in [
            "exterior",
            "exterior-coalgebra",
            "truncated-polynomial",
            "koszul",
            "dual-koszul",
            "laurent",
            "finite-vector-space",
        ] {
            assert!(names.contains(&expected), "missing {expected}");
        }
    }

    #[test]
    fn two_generator_exterior_signs_are_graded_commutative() {
        let reg = ExampleRegistry::with_defaults();
        let p = ExampleParams {
            ring: Some(CoefficientRing::PrimeField { p: 3 }),
            gen_degrees: vec![1, 1],
            ..Default::default()
        };
        let a = match reg.build("exterior", &p).unwrap() {
            ExampleObject::Algebra(a) => a,
            _ => panic!(),
        };
        // both generators live in degree 1: slots (1,0) and (1,1)
        let x1 = (1, 0);
        let x2 = (1, 1);
        let forward = a.product(x1, x2).to_vec();
        let backward = a.product(x2, x1).to_vec();
        assert_eq!(forward.len(), 1);
        assert_eq!(backward.len(), 1);
        assert_eq!(forward[0].0, backward[0].0);
        // odd×odd: x2·x1 = −x1·x2
        assert_eq!(forward[0].1, 1);
        assert_eq!(backward[0].1, 3 - 1);
        assert!(check_algebra_axioms(&a).passed());
    }

    #[test]
    fn divided_power_coalgebra_is_coassociative() {
        let reg = ExampleRegistry::with_defaults();
        for m in [1, 2, 5] {
            let p = ExampleParams { size: Some(m), ..Default::default() };
            let c = match reg.build("finite-vector-space", &p).unwrap() {
                ExampleObject::Coalgebra(c) => c,
                _ => panic!(),
            };
            let report = check_coalgebra_axioms(&c);
            assert!(report.passed(), "m={m}: {:?}", report.violations);
            assert!(!c.complex().is_complete(), "must be declared a rank window");
        }
    }

    #[test]
    fn laurent_pattern_respects_requested_window() {
        let reg = ExampleRegistry::with_defaults();
        let p = ExampleParams { window: Some(Window::new(-1, 4).unwrap()), ..Default::default() };
        let m = match reg.build("laurent", &p).unwrap() {
            ExampleObject::Module(m) => m,
            _ => panic!(),
        };
        for d in -1..=4 {
            assert_eq!(m.rank(d), 1);
        }
        assert_eq!(m.covered(), Some(Window::new(-1, 4).unwrap()));
    }

    #[test]
    fn koszul_requires_a_prime() {
        let reg = ExampleRegistry::with_defaults();
        assert!(reg.build("koszul", &ExampleParams::default()).is_err());
        let p = ExampleParams { p: Some(4), ..Default::default() };
        assert!(matches!(reg.build("koszul", &p), Err(Error::NotPrime(4))));
    }

    #[test]
    fn standard_instances_build_cleanly() {
        let reg = ExampleRegistry::with_defaults();
        let instances = reg.standard_instances().unwrap();
        assert!(instances.len() >= 10);
    }
}
