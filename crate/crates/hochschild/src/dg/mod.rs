//! DG algebras and coalgebras as structure constants on a chosen basis,
//! axiom checkers, and the linear-dual functor between them.
//!
//! Structure constants are stored elementwise: `products[(a, b)]` lists the
//! basis expansion of a·b, `coproducts[x]` the expansion of Δx. Missing
//! entries are zero. The unit (resp. counit support) must be a designated
//! basis vector in degree 0 — the bar and cobar constructions normalize
//! against exactly that vector.

pub mod registry;

use crate::error::{Error, Result};
use crate::graded::{ChainComplex, Window};
use crate::ring::CoefficientRing;
use std::collections::BTreeMap;

/// A basis vector, addressed as (degree, index within that degree).
pub type BasisRef = (i64, usize);

/// Expansion of a product: sorted by basis ref, zero coefficients dropped.
pub type Expansion = Vec<(BasisRef, i64)>;

/// Expansion of a coproduct into simple tensors y⊗z.
pub type CoExpansion = Vec<((BasisRef, BasisRef), i64)>;

fn normalize_expansion(ring: CoefficientRing, raw: Expansion) -> Result<Expansion> {
    let mut acc: BTreeMap<BasisRef, i64> = BTreeMap::new();
    for (key, c) in raw {
        let entry = acc.entry(key).or_insert(0);
        *entry = ring.add(*entry, ring.normalize(c))?;
    }
    Ok(acc.into_iter().filter(|&(_, c)| c != 0).collect())
}

fn normalize_coexpansion(ring: CoefficientRing, raw: CoExpansion) -> Result<CoExpansion> {
    let mut acc: BTreeMap<(BasisRef, BasisRef), i64> = BTreeMap::new();
    for (key, c) in raw {
        let entry = acc.entry(key).or_insert(0);
        *entry = ring.add(*entry, ring.normalize(c))?;
    }
    Ok(acc.into_iter().filter(|&(_, c)| c != 0).collect())
}

/// An associative unital DG algebra of finite type.
#[derive(Debug, Clone)]
pub struct DGAlgebra {
    complex: ChainComplex,
    products: BTreeMap<(BasisRef, BasisRef), Expansion>,
    unit: BasisRef,
}

impl DGAlgebra {
    /// Assemble from structure constants. Shapes are validated here; algebra
    /// axioms are the business of `check_algebra_axioms`.
    pub fn new(
        complex: ChainComplex,
        products: BTreeMap<(BasisRef, BasisRef), Expansion>,
        unit: BasisRef,
    ) -> Result<Self> {
        let ring = complex.ring();
        if unit.0 != 0 || unit.1 >= complex.rank(0) {
            return Err(Error::NoDesignatedUnit {
                context: format!(
                    "unit must be a degree-0 basis vector; got degree {} index {}",
                    unit.0, unit.1
                ),
            });
        }
        let mut normalized = BTreeMap::new();
        for ((a, b), expansion) in products {
            for &x in [&a, &b] {
                if x.1 >= complex.rank(x.0) {
                    return Err(Error::BadStructureConstants {
                        context: format!("product indexed by missing basis vector {x:?}"),
                    });
                }
            }
            let expansion = normalize_expansion(ring, expansion)?;
            for &((d, i), _) in &expansion {
                if i >= complex.rank(d) {
                    return Err(Error::BadStructureConstants {
                        context: format!(
                            "product of {a:?} and {b:?} mentions missing basis vector ({d}, {i})"
                        ),
                    });
                }
            }
            if !expansion.is_empty() {
                normalized.insert((a, b), expansion);
            }
        }
        Ok(DGAlgebra { complex, products: normalized, unit })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn ring(&self) -> CoefficientRing {
        self.complex.ring()
    }

    pub fn unit(&self) -> BasisRef {
        self.unit
    }

    /// The expansion of a·b (empty = zero).
    pub fn product(&self, a: BasisRef, b: BasisRef) -> &[(BasisRef, i64)] {
        self.products.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn products(&self) -> &BTreeMap<(BasisRef, BasisRef), Expansion> {
        &self.products
    }

    pub fn basis(&self) -> Vec<BasisRef> {
        let mut out = Vec::new();
        for d in self.complex.module().support() {
            for i in 0..self.complex.rank(d) {
                out.push((d, i));
            }
        }
        out
    }

    pub fn label(&self, x: BasisRef) -> String {
        self.complex.module().label(x.0, x.1)
    }

    /// The differential of a basis vector as an expansion in degree d−1.
    pub fn differential_of(&self, x: BasisRef) -> Expansion {
        let d = self.complex.differential(x.0);
        d.column(x.1)
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(i, c)| (((x.0 - 1), i), c))
            .collect()
    }

    /// Multiply two expansions (used by the associativity checker).
    pub fn multiply_expansions(&self, left: &Expansion, right: &Expansion) -> Result<Expansion> {
        let ring = self.ring();
        let mut out = Vec::new();
        for &(a, ca) in left {
            for &(b, cb) in right {
                let c = ring.mul(ca, cb)?;
                for &(t, ct) in self.product(a, b) {
                    out.push((t, ring.mul(c, ct)?));
                }
            }
        }
        normalize_expansion(ring, out)
    }
}

/// A coassociative counital DG coalgebra of finite type.
#[derive(Debug, Clone)]
pub struct DGCoalgebra {
    complex: ChainComplex,
    coproducts: BTreeMap<BasisRef, CoExpansion>,
    counit: BasisRef,
}

impl DGCoalgebra {
    /// Assemble from structure constants. The counit functional must be 1 on
    /// the designated degree-0 basis vector and 0 on every other — the cobar
    /// construction conormalizes against exactly this splitting.
    pub fn new(
        complex: ChainComplex,
        coproducts: BTreeMap<BasisRef, CoExpansion>,
        counit: BasisRef,
    ) -> Result<Self> {
        let ring = complex.ring();
        if counit.0 != 0 || counit.1 >= complex.rank(0) {
            return Err(Error::NoDesignatedCounit {
                context: format!(
                    "counit support must be a degree-0 basis vector; got degree {} index {}",
                    counit.0, counit.1
                ),
            });
        }
        let mut normalized = BTreeMap::new();
        for (x, expansion) in coproducts {
            if x.1 >= complex.rank(x.0) {
                return Err(Error::BadStructureConstants {
                    context: format!("coproduct indexed by missing basis vector {x:?}"),
                });
            }
            let expansion = normalize_coexpansion(ring, expansion)?;
            for &((y, z), _) in &expansion {
                for t in [y, z] {
                    if t.1 >= complex.rank(t.0) {
                        return Err(Error::BadStructureConstants {
                            context: format!(
                                "coproduct of {x:?} mentions missing basis vector {t:?}"
                            ),
                        });
                    }
                }
            }
            if !expansion.is_empty() {
                normalized.insert(x, expansion);
            }
        }
        Ok(DGCoalgebra { complex, coproducts: normalized, counit })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn ring(&self) -> CoefficientRing {
        self.complex.ring()
    }

    pub fn counit(&self) -> BasisRef {
        self.counit
    }

    /// Counit value on a basis vector: 1 on the designated vector, else 0.
    pub fn counit_value(&self, x: BasisRef) -> i64 {
        if x == self.counit {
            1
        } else {
            0
        }
    }

    pub fn coproduct(&self, x: BasisRef) -> &[((BasisRef, BasisRef), i64)] {
        self.coproducts.get(&x).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn coproducts(&self) -> &BTreeMap<BasisRef, CoExpansion> {
        &self.coproducts
    }

    pub fn basis(&self) -> Vec<BasisRef> {
        let mut out = Vec::new();
        for d in self.complex.module().support() {
            for i in 0..self.complex.rank(d) {
                out.push((d, i));
            }
        }
        out
    }

    pub fn label(&self, x: BasisRef) -> String {
        self.complex.module().label(x.0, x.1)
    }

    pub fn differential_of(&self, x: BasisRef) -> Expansion {
        let d = self.complex.differential(x.0);
        d.column(x.1)
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(i, c)| (((x.0 - 1), i), c))
            .collect()
    }
}

/// Outcome of an axiom check: empty `violations` means the axioms hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::AxiomViolation { report: self.violations.join("; ") })
        }
    }
}

impl std::fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            write!(f, "all axioms hold")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

fn expansions_equal(a: &Expansion, b: &Expansion) -> bool {
    a == b
}

fn format_expansion(labels: &dyn Fn(BasisRef) -> String, e: &Expansion) -> String {
    if e.is_empty() {
        return "0".to_string();
    }
    e.iter()
        .map(|&(x, c)| if c == 1 { labels(x) } else { format!("{c}·{}", labels(x)) })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Check grading, unit laws, unit-is-a-cycle, associativity, and the Leibniz
/// rule on every stored basis combination. Violations name the offending
/// basis elements.
pub fn check_algebra_axioms(a: &DGAlgebra) -> AxiomReport {
    let mut violations = Vec::new();
    let ring = a.ring();
    let label = |x: BasisRef| a.label(x);

    // Grading: a product from degrees (i, j) must land in degree i + j.
    for (&(x, y), expansion) in a.products() {
        for &((d, i), _) in expansion {
            if d != x.0 + y.0 {
                violations.push(format!(
                    "grading: {}·{} has a component {} in degree {d}, expected {}",
                    label(x),
                    label(y),
                    a.label((d, i)),
                    x.0 + y.0
                ));
            }
        }
    }
    if !violations.is_empty() {
        // Degree-inhomogeneous products poison every later check; stop here.
        return AxiomReport { violations };
    }

    // Unit laws and d(unit) = 0.
    let unit = a.unit();
    if !a.differential_of(unit).is_empty() {
        violations.push(format!("unit: d({}) ≠ 0", label(unit)));
    }
    for x in a.basis() {
        let expect = vec![(x, 1)];
        let left = a.product(unit, x).to_vec();
        if !expansions_equal(&left, &expect) {
            violations.push(format!(
                "unit law: {}·{} = {}, expected {}",
                label(unit),
                label(x),
                format_expansion(&label, &left),
                label(x)
            ));
        }
        let right = a.product(x, unit).to_vec();
        if !expansions_equal(&right, &expect) {
            violations.push(format!(
                "unit law: {}·{} = {}, expected {}",
                label(x),
                label(unit),
                format_expansion(&label, &right),
                label(x)
            ));
        }
    }

    // Associativity on all basis triples with nonzero inner products.
    let basis = a.basis();
    for &x in &basis {
        for &y in &basis {
            for &z in &basis {
                let xy = a.product(x, y).to_vec();
                let yz = a.product(y, z).to_vec();
                if xy.is_empty() && yz.is_empty() {
                    continue;
                }
                let lhs = a.multiply_expansions(&xy, &vec![(z, 1)]);
                let rhs = a.multiply_expansions(&vec![(x, 1)], &yz);
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => {
                        if !expansions_equal(&l, &r) {
                            violations.push(format!(
                                "associativity: ({}·{})·{} = {} but {}·({}·{}) = {}",
                                label(x),
                                label(y),
                                label(z),
                                format_expansion(&label, &l),
                                label(x),
                                label(y),
                                label(z),
                                format_expansion(&label, &r)
                            ));
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => violations.push(format!(
                        "associativity on ({}, {}, {}): {e}",
                        label(x),
                        label(y),
                        label(z)
                    )),
                }
            }
        }
    }

    // Leibniz: d(x·y) = dx·y + (−1)^{|x|} x·dy.
    for &x in &basis {
        for &y in &basis {
            let xy = a.product(x, y).to_vec();
            let d_of_product = {
                let mut acc = Vec::new();
                for &(t, c) in &xy {
                    for (u, cu) in a.differential_of(t) {
                        match ring.mul(c, cu) {
                            Ok(v) => acc.push((u, v)),
                            Err(e) => {
                                violations.push(format!("Leibniz overflow: {e}"));
                                return AxiomReport { violations };
                            }
                        }
                    }
                }
                normalize_expansion(ring, acc)
            };
            let leibniz = (|| -> Result<Expansion> {
                let sign = if x.0.rem_euclid(2) == 0 { 1 } else { -1 };
                let mut acc = Vec::new();
                for (u, cu) in a.differential_of(x) {
                    for &(t, ct) in a.product(u, y) {
                        acc.push((t, ring.mul(cu, ct)?));
                    }
                }
                for (u, cu) in a.differential_of(y) {
                    for &(t, ct) in a.product(x, u) {
                        acc.push((t, ring.mul(sign, ring.mul(cu, ct)?)?));
                    }
                }
                normalize_expansion(ring, acc)
            })();
            match (d_of_product, leibniz) {
                (Ok(l), Ok(r)) => {
                    if !expansions_equal(&l, &r) {
                        violations.push(format!(
                            "Leibniz: d({}·{}) = {} but dx·y ± x·dy = {}",
                            label(x),
                            label(y),
                            format_expansion(&label, &l),
                            format_expansion(&label, &r)
                        ));
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    violations.push(format!("Leibniz on ({}, {}): {e}", label(x), label(y)))
                }
            }
        }
    }

    AxiomReport { violations }
}

/// Check grading, counit laws, coassociativity, and the co-Leibniz rule.
pub fn check_coalgebra_axioms(c: &DGCoalgebra) -> AxiomReport {
    let mut violations = Vec::new();
    let ring = c.ring();
    let label = |x: BasisRef| c.label(x);

    // Grading.
    for (&x, expansion) in c.coproducts() {
        for &((y, z), _) in expansion {
            if y.0 + z.0 != x.0 {
                violations.push(format!(
                    "grading: Δ({}) has a component {}⊗{} of degree {}, expected {}",
                    label(x),
                    label(y),
                    label(z),
                    y.0 + z.0,
                    x.0
                ));
            }
        }
    }
    if !violations.is_empty() {
        return AxiomReport { violations };
    }

    // Counit laws: (ε⊗1)Δx = x = (1⊗ε)Δx, using ε = the designated vector's
    // dual functional.
    for x in c.basis() {
        let mut left: Expansion = Vec::new();
        let mut right: Expansion = Vec::new();
        for &((y, z), coeff) in c.coproduct(x) {
            if c.counit_value(y) == 1 {
                left.push((z, coeff));
            }
            if c.counit_value(z) == 1 {
                right.push((y, coeff));
            }
        }
        let left = normalize_expansion(ring, left).unwrap_or_default();
        let right = normalize_expansion(ring, right).unwrap_or_default();
        let expect = vec![(x, 1)];
        if left != expect {
            violations.push(format!(
                "counit law: (ε⊗1)Δ({}) = {}, expected {}",
                label(x),
                format_expansion(&label, &left),
                label(x)
            ));
        }
        if right != expect {
            violations.push(format!(
                "counit law: (1⊗ε)Δ({}) = {}, expected {}",
                label(x),
                format_expansion(&label, &right),
                label(x)
            ));
        }
    }

    // Coassociativity: (Δ⊗1)Δ = (1⊗Δ)Δ, compared as triple expansions.
    type Triple = (BasisRef, BasisRef, BasisRef);
    for x in c.basis() {
        let mut lhs: BTreeMap<Triple, i64> = BTreeMap::new();
        let mut rhs: BTreeMap<Triple, i64> = BTreeMap::new();
        let mut overflow = None;
        for &((y, z), coeff) in c.coproduct(x) {
            for &((u, v), c2) in c.coproduct(y) {
                match ring.mul(coeff, c2) {
                    Ok(val) => {
                        let e = lhs.entry((u, v, z)).or_insert(0);
                        *e = ring.add(*e, val).unwrap_or(*e);
                    }
                    Err(e) => overflow = Some(e),
                }
            }
            for &((u, v), c2) in c.coproduct(z) {
                match ring.mul(coeff, c2) {
                    Ok(val) => {
                        let e = rhs.entry((y, u, v)).or_insert(0);
                        *e = ring.add(*e, val).unwrap_or(*e);
                    }
                    Err(e) => overflow = Some(e),
                }
            }
        }
        if let Some(e) = overflow {
            violations.push(format!("coassociativity on {}: {e}", label(x)));
            continue;
        }
        lhs.retain(|_, v| *v != 0);
        rhs.retain(|_, v| *v != 0);
        if lhs != rhs {
            let diff_key = lhs
                .iter()
                .find(|(k, v)| rhs.get(k) != Some(v))
                .map(|(k, _)| *k)
                .or_else(|| rhs.iter().find(|(k, v)| lhs.get(k) != Some(v)).map(|(k, _)| *k));
            let witness = diff_key
                .map(|(u, v, w)| format!("{}⊗{}⊗{}", label(u), label(v), label(w)))
                .unwrap_or_default();
            violations.push(format!(
                "coassociativity: (Δ⊗1)Δ ≠ (1⊗Δ)Δ on {}, first differing term {witness}",
                label(x)
            ));
        }
    }

    // Co-Leibniz: Δ(dx) = (d⊗1)Δx + (1⊗d)Δx with the Koszul sign (−1)^{|y|}
    // on the second term.
    for x in c.basis() {
        let mut lhs: BTreeMap<(BasisRef, BasisRef), i64> = BTreeMap::new();
        let mut rhs: BTreeMap<(BasisRef, BasisRef), i64> = BTreeMap::new();
        let mut failed = None;
        for (u, cu) in c.differential_of(x) {
            for &((y, z), cyz) in c.coproduct(u) {
                match ring.mul(cu, cyz) {
                    Ok(v) => {
                        let e = lhs.entry((y, z)).or_insert(0);
                        *e = ring.add(*e, v).unwrap_or(*e);
                    }
                    Err(e) => failed = Some(e),
                }
            }
        }
        for &((y, z), cyz) in c.coproduct(x) {
            for (u, cu) in c.differential_of(y) {
                match ring.mul(cyz, cu) {
                    Ok(v) => {
                        let e = rhs.entry((u, z)).or_insert(0);
                        *e = ring.add(*e, v).unwrap_or(*e);
                    }
                    Err(e) => failed = Some(e),
                }
            }
            let sign = if y.0.rem_euclid(2) == 0 { 1 } else { -1 };
            for (u, cu) in c.differential_of(z) {
                match ring.mul(sign, cyz).and_then(|s| ring.mul(s, cu)) {
                    Ok(v) => {
                        let e = rhs.entry((y, u)).or_insert(0);
                        *e = ring.add(*e, v).unwrap_or(*e);
                    }
                    Err(e) => failed = Some(e),
                }
            }
        }
        if let Some(e) = failed {
            violations.push(format!("co-Leibniz on {}: {e}", label(x)));
            continue;
        }
        lhs.retain(|_, v| *v != 0);
        rhs.retain(|_, v| *v != 0);
        if lhs != rhs {
            violations.push(format!(
                "co-Leibniz: Δ(d{}) ≠ (d⊗1 ± 1⊗d)Δ({})",
                label(x),
                label(x)
            ));
        }
    }

    AxiomReport { violations }
}

/// The linear dual of an algebra is a coalgebra: on dual bases,
/// Δ(a*) = Σ (−1)^{|b||c|} ⟨a*, b·c⟩ b*⊗c*. The sign is the Koszul cost of
/// the pairing (f⊗g)(x⊗y) = (−1)^{|g||x|} f(x)g(y).
pub fn dualize_algebra(a: &DGAlgebra, w: Window) -> Result<DGCoalgebra> {
    if a.complex().connective_bound().is_none() && a.complex().coconnective_bound().is_none() {
        return Err(Error::Unbounded {
            context: "dualize_algebra needs a connective or coconnective certificate".to_string(),
        });
    }
    let dual_complex = a.complex().dual(w)?;
    let mut coproducts: BTreeMap<BasisRef, CoExpansion> = BTreeMap::new();
    for (&(b, c), expansion) in a.products() {
        // b·c = Σ coeff·t contributes coeff to ⟨t*, b·c⟩.
        let sign = if (b.0 * c.0).rem_euclid(2) == 0 { 1 } else { -1 };
        for &(t, coeff) in expansion {
            // Dual basis vectors live in negated degrees with the same index.
            let (bd, cd, td) = ((-b.0, b.1), (-c.0, c.1), (-t.0, t.1));
            if !w.contains(bd.0) || !w.contains(cd.0) || !w.contains(td.0) {
                return Err(Error::WindowNotCovered {
                    context: format!(
                        "dualize_algebra: product {}·{} lands outside the window {w}",
                        a.label(b),
                        a.label(c)
                    ),
                });
            }
            coproducts
                .entry(td)
                .or_default()
                .push(((bd, cd), a.ring().mul(sign, coeff)?));
        }
    }
    let counit = (0, a.unit().1);
    DGCoalgebra::new(dual_complex, coproducts, counit)
}

/// The linear dual of a coalgebra is an algebra: y*·z* = Σ (−1)^{|y||z|}
/// (coefficient of y⊗z in Δx) x*.
pub fn dualize_coalgebra(c: &DGCoalgebra, w: Window) -> Result<DGAlgebra> {
    let dual_complex = c.complex().dual(w)?;
    let mut products: BTreeMap<(BasisRef, BasisRef), Expansion> = BTreeMap::new();
    for (&x, expansion) in c.coproducts() {
        for &((y, z), coeff) in expansion {
            let sign = if (y.0 * z.0).rem_euclid(2) == 0 { 1 } else { -1 };
            let (yd, zd, xd) = ((-y.0, y.1), (-z.0, z.1), (-x.0, x.1));
            if !w.contains(yd.0) || !w.contains(zd.0) || !w.contains(xd.0) {
                return Err(Error::WindowNotCovered {
                    context: format!(
                        "dualize_coalgebra: coproduct of {} reaches outside the window {w}",
                        c.label(x)
                    ),
                });
            }
            products
                .entry((yd, zd))
                .or_default()
                .push((xd, c.ring().mul(sign, coeff)?));
        }
    }
    let unit = (0, c.counit().1);
    DGAlgebra::new(dual_complex, products, unit)
}

/// Per-degree verdict of the canonical map η : X → X^∨∨, which on the chosen
/// bases is (−1)^n times the identity in degree n (that sign is what makes η
/// a chain map against the double-dual differential).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleDualReport {
    pub degrees: BTreeMap<i64, bool>,
    pub all_iso: bool,
}

pub fn double_dual_unit(x: &ChainComplex, w: Window) -> Result<DoubleDualReport> {
    let dd = x.dual(w.reflect())?.dual(w)?;
    let mut degrees = BTreeMap::new();
    let mut all = true;
    for n in w.iter() {
        // η_n = (−1)^n·id is invertible exactly when the ranks agree.
        let iso = x.rank(n) == dd.rank(n);
        all &= iso;
        degrees.insert(n, iso);
    }
    // Chain-map sanity: η∘d = d^∨∨∘η, i.e. (−1)^{n−1} d_n = (−1)^n d^∨∨_n,
    // so the double dual differential must be the negated original.
    for n in (w.lo + 1)..=w.hi {
        let expect = x.differential(n).scaled(-1)?;
        if dd.differential(n) != expect {
            return Err(Error::ShapeMismatch {
                context: format!("double dual differential at degree {n} is not −d"),
            });
        }
    }
    Ok(DoubleDualReport { all_iso: all, degrees })
}

/// Dualizability = bounded support with finite ranks. Finite complete data
/// is always dualizable; a declared truncation of an unbounded pattern never
/// is, no matter how the window looks.
pub fn is_dualizable(x: &ChainComplex) -> (bool, String) {
    match x.marker() {
        Some(m) => (
            false,
            format!("declared window of an unbounded pattern: {}", m.pattern),
        ),
        None => (
            true,
            "complete data with finite rank in each degree and bounded support".to_string(),
        ),
    }
}
