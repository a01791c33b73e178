//! Graded modules and chain complexes: tensor products with Koszul signs,
//! linear duals, shifts, good truncations, homology tables, and the
//! connectivity-bound bookkeeping used to certify truncated computations.
//!
//! Sign conventions (fixed once, asserted by tests):
//!   * tensor Leibniz      d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db
//!   * dual differential   (d^∨f)(x) = (−1)^{|f|+1} f(dx)
//!   * shift by k          multiplies the differential by (−1)^k
//!
//! The dual sign is the one that makes evaluation C^∨ ⊗ C → 𝕀 a chain map;
//! see `evaluation_is_a_chain_map` below.

use crate::error::{Error, Result};
use crate::linalg::{homology_group, HomologyGroup, MatrixExact};
use crate::ring::CoefficientRing;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Closed integer degree range `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::BadWindow { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// `[−hi, −lo]`: where the data of a dual in this window comes from.
    pub fn reflect(&self) -> Window {
        Window { lo: -self.hi, hi: -self.lo }
    }

    pub fn shifted(&self, k: i64) -> Window {
        Window { lo: self.lo + k, hi: self.hi + k }
    }

    /// Widen by `margin` on both sides.
    pub fn padded(&self, margin: i64) -> Window {
        Window { lo: self.lo - margin, hi: self.hi + margin }
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Finitely supported rank data, optionally with basis labels per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    ring: CoefficientRing,
    ranks: BTreeMap<i64, usize>,
    labels: Option<BTreeMap<i64, Vec<String>>>,
}

impl GradedModule {
    pub fn new(ring: CoefficientRing, ranks: BTreeMap<i64, usize>) -> Self {
        let ranks = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        GradedModule { ring, ranks, labels: None }
    }

    pub fn with_labels(
        ring: CoefficientRing,
        labels: BTreeMap<i64, Vec<String>>,
    ) -> Result<Self> {
        let ranks: BTreeMap<i64, usize> = labels
            .iter()
            .filter(|(_, names)| !names.is_empty())
            .map(|(&d, names)| (d, names.len()))
            .collect();
        let labels = labels.into_iter().filter(|(_, n)| !n.is_empty()).collect();
        Ok(GradedModule { ring, ranks, labels: Some(labels) })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn rank(&self, degree: i64) -> usize {
        *self.ranks.get(&degree).unwrap_or(&0)
    }

    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    pub fn labels(&self) -> Option<&BTreeMap<i64, Vec<String>>> {
        self.labels.as_ref()
    }

    pub fn label(&self, degree: i64, index: usize) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get(&degree))
            .and_then(|v| v.get(index).cloned())
            .unwrap_or_else(|| format!("e{{{degree},{index}}}"))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.ranks.keys().copied()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.ranks.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.ranks.keys().last().copied()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// Records that a complex is a finite window of a declared unbounded object.
///
/// `covered` is the degree range the stored data spans. When
/// `degreewise_faithful` holds, the chains in each covered degree equal the
/// pattern's (a Laurent-type pattern truncated in the degree direction);
/// when it fails, the truncation cut ranks inside a degree and no degree is
/// exact (an unbounded-rank object windowed to finite rank).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationMarker {
    pub pattern: String,
    pub covered: Window,
    pub degreewise_faithful: bool,
}

/// A chain complex of finitely generated free modules, `d_n : C_n → C_{n−1}`,
/// with `d∘d = 0` checked at construction.
///
/// A complex either holds *complete* data (it is zero outside its stored
/// support — the usual case), or is an explicit finite window of a declared
/// unbounded pattern, recorded in `marker`. Duality verdicts depend on the
/// difference: complete finite-type objects are dualizable, declared
/// truncations are not.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    module: GradedModule,
    diffs: BTreeMap<i64, MatrixExact>,
    connective: Option<i64>,
    coconnective: Option<i64>,
    marker: Option<TruncationMarker>,
}

impl ChainComplex {
    /// Build and validate: differential shapes must match ranks and every
    /// composite d∘d must vanish.
    pub fn new(module: GradedModule, diffs: BTreeMap<i64, MatrixExact>) -> Result<Self> {
        let diffs: BTreeMap<i64, MatrixExact> =
            diffs.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        for (&n, d) in &diffs {
            if d.ring() != module.ring() {
                return Err(Error::RingMismatch {
                    expected: module.ring().describe(),
                    got: d.ring().describe(),
                });
            }
            if d.rows() != module.rank(n - 1) || d.cols() != module.rank(n) {
                return Err(Error::ShapeMismatch {
                    context: format!(
                        "differential at degree {n} is {}x{}, ranks demand {}x{}",
                        d.rows(),
                        d.cols(),
                        module.rank(n - 1),
                        module.rank(n)
                    ),
                });
            }
        }
        let complex = ChainComplex {
            connective: module.min_degree(),
            coconnective: module.max_degree(),
            module,
            diffs,
            marker: None,
        };
        complex.check_d_squared()?;
        Ok(complex)
    }

    /// Zero-differential complex on the given ranks.
    pub fn with_zero_differential(module: GradedModule) -> Self {
        ChainComplex {
            connective: module.min_degree(),
            coconnective: module.max_degree(),
            module,
            diffs: BTreeMap::new(),
            marker: None,
        }
    }

    /// Mark this complex as a finite window of an unbounded pattern.
    /// `covered` is the degree range on which the data is degreewise faithful.
    pub fn declare_truncation(mut self, pattern: &str, covered: Window) -> Self {
        self.marker =
            Some(TruncationMarker { pattern: pattern.to_string(), covered, degreewise_faithful: true });
        // Support-derived homology certificates are no longer sound.
        self.connective = None;
        self.coconnective = None;
        self
    }

    /// Mark this complex as a finite-rank window of an object with unbounded
    /// rank inside a degree: the stored data is honest as a finite object but
    /// no degree faithfully represents the pattern.
    pub fn declare_rank_truncation(mut self, pattern: &str) -> Self {
        let covered = self.natural_window().unwrap_or(Window { lo: 0, hi: 0 });
        self.marker = Some(TruncationMarker {
            pattern: pattern.to_string(),
            covered,
            degreewise_faithful: false,
        });
        self.connective = None;
        self.coconnective = None;
        self
    }

    fn check_d_squared(&self) -> Result<()> {
        for &n in self.diffs.keys() {
            let lower = self.differential(n);
            let upper = self.differential(n + 1);
            let comp = lower.matmul(&upper)?;
            if !comp.is_zero() {
                return Err(Error::CompositionNotZero {
                    context: format!("d_{} ∘ d_{} is nonzero", n, n + 1),
                });
            }
        }
        Ok(())
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn ring(&self) -> CoefficientRing {
        self.module.ring()
    }

    pub fn rank(&self, n: i64) -> usize {
        self.module.rank(n)
    }

    /// The differential `C_n → C_{n−1}`, materializing zeros.
    pub fn differential(&self, n: i64) -> MatrixExact {
        self.diffs.get(&n).cloned().unwrap_or_else(|| {
            MatrixExact::zero(self.ring(), self.module.rank(n - 1), self.module.rank(n))
        })
    }

    pub fn stored_differentials(&self) -> &BTreeMap<i64, MatrixExact> {
        &self.diffs
    }

    pub fn is_complete(&self) -> bool {
        self.marker.is_none()
    }

    pub fn marker(&self) -> Option<&TruncationMarker> {
        self.marker.as_ref()
    }

    pub fn pattern(&self) -> Option<&str> {
        self.marker.as_ref().map(|m| m.pattern.as_str())
    }

    pub fn covered(&self) -> Option<Window> {
        self.marker.as_ref().map(|m| m.covered)
    }

    /// True when some degree of the stored data is not even chain-level
    /// faithful to the declared pattern (rank-direction truncation).
    fn rank_truncated(&self) -> bool {
        self.marker.as_ref().is_some_and(|m| !m.degreewise_faithful)
    }

    /// Homology-vanishing certificates, when known: H_i = 0 for
    /// i < connective and for i > coconnective.
    pub fn connective_bound(&self) -> Option<i64> {
        self.connective
    }

    pub fn coconnective_bound(&self) -> Option<i64> {
        self.coconnective
    }

    pub fn set_bounds(&mut self, connective: Option<i64>, coconnective: Option<i64>) {
        self.connective = connective;
        self.coconnective = coconnective;
    }

    pub fn natural_window(&self) -> Option<Window> {
        match (self.module.min_degree(), self.module.max_degree()) {
            (Some(lo), Some(hi)) => Some(Window { lo, hi }),
            _ => None,
        }
    }

    /// Degrees where this complex's data can be trusted as-is: everything for
    /// complete complexes, the declared range for pattern windows.
    fn faithful_window(&self) -> Option<Window> {
        self.marker.as_ref().map(|m| m.covered)
    }

    /// Tensor product restricted to total degrees in `w`, with the Leibniz
    /// sign (−1)^{|a|} on the right factor. Basis in each total degree is
    /// ordered by (left degree, left index, right index) ascending.
    pub fn tensor(&self, other: &ChainComplex, w: Window) -> Result<ChainComplex> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch {
                expected: self.ring().describe(),
                got: other.ring().describe(),
            });
        }
        let ring = self.ring();

        // Layout: per total degree, the ordered list of (left deg, right deg)
        // blocks with their ranks.
        let layout = |n: i64| -> Vec<(i64, i64, usize, usize)> {
            let mut blocks = Vec::new();
            for i in self.module.support() {
                let j = n - i;
                let (ri, rj) = (self.module.rank(i), other.module.rank(j));
                if ri > 0 && rj > 0 {
                    blocks.push((i, j, ri, rj));
                }
            }
            blocks
        };
        let degree_rank =
            |blocks: &[(i64, i64, usize, usize)]| blocks.iter().map(|b| b.2 * b.3).sum::<usize>();
        let block_offset = |blocks: &[(i64, i64, usize, usize)], left_deg: i64| -> Option<usize> {
            let mut off = 0;
            for &(i, _, ri, rj) in blocks {
                if i == left_deg {
                    return Some(off);
                }
                off += ri * rj;
            }
            None
        };

        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        let mut label_map: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        let both_labeled = self.module.labels().is_some() && other.module.labels().is_some();
        for n in w.iter() {
            let blocks = layout(n);
            let r = degree_rank(&blocks);
            if r > 0 {
                ranks.insert(n, r);
                if both_labeled {
                    let mut names = Vec::with_capacity(r);
                    for &(i, j, ri, rj) in &blocks {
                        for a in 0..ri {
                            for b in 0..rj {
                                names.push(format!(
                                    "{}⊗{}",
                                    self.module.label(i, a),
                                    other.module.label(j, b)
                                ));
                            }
                        }
                    }
                    label_map.insert(n, names);
                }
            }
        }

        let mut diffs: BTreeMap<i64, MatrixExact> = BTreeMap::new();
        for n in (w.lo + 1)..=w.hi {
            let src = layout(n);
            let dst = layout(n - 1);
            let rows = degree_rank(&dst);
            let cols = degree_rank(&src);
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut d = MatrixExact::zero(ring, rows, cols);
            let mut col_off = 0usize;
            for &(i, j, ri, rj) in &src {
                // d_left ⊗ id : block (i,j) → block (i−1, j)
                let dl = self.differential(i);
                if let Some(dst_off) = block_offset(&dst, i - 1) {
                    let rj_dst = other.module.rank(j);
                    debug_assert_eq!(rj_dst, rj);
                    for (r_out, a, v) in dl.nonzero_entries() {
                        for b in 0..rj {
                            d.add_to(dst_off + r_out * rj + b, col_off + a * rj + b, v)?;
                        }
                    }
                }
                // (−1)^i id ⊗ d_right : block (i,j) → block (i, j−1)
                let dr = other.differential(j);
                if let Some(dst_off) = block_offset(&dst, i) {
                    let rj_dst = other.module.rank(j - 1);
                    let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                    for (s_out, b, v) in dr.nonzero_entries() {
                        debug_assert!(s_out < rj_dst);
                        for a in 0..ri {
                            d.add_to(
                                dst_off + a * rj_dst + s_out,
                                col_off + a * rj + b,
                                ring.mul(sign, v)?,
                            )?;
                        }
                    }
                }
                col_off += ri * rj;
            }
            if !d.is_zero() {
                diffs.insert(n, d);
            }
        }

        let module = if both_labeled {
            GradedModule::with_labels(ring, label_map)?
        } else {
            GradedModule::new(ring, ranks)
        };
        let mut out = ChainComplex {
            connective: None,
            coconnective: None,
            module,
            diffs,
            marker: None,
        };

        // Completeness: the window must contain the full support sum, and
        // both inputs must be complete.
        let tensor_complete = self.is_complete()
            && other.is_complete()
            && match (self.natural_window(), other.natural_window()) {
                (Some(a), Some(b)) => w.lo <= a.lo + b.lo && a.hi + b.hi <= w.hi,
                _ => true, // a zero factor: the tensor is zero, hence complete
            };
        if !tensor_complete {
            let pat = format!(
                "tensor of {} and {}",
                self.pattern().unwrap_or("bounded complex"),
                other.pattern().unwrap_or("bounded complex")
            );
            if self.rank_truncated() || other.rank_truncated() {
                out = out.declare_rank_truncation(&pat);
            } else {
                out = out.declare_truncation(&pat, w);
            }
        } else {
            out.connective = out.module.min_degree();
            out.coconnective = out.module.max_degree();
        }
        // Tighten with the certified bounds when both inputs carry them.
        let d = ring.global_dimension();
        if let (Some(m), Some(n)) = (self.connective, other.connective) {
            out.connective = Some(out.connective.map_or(m + n, |s| s.max(m + n)));
        }
        if let (Some(m), Some(n)) = (self.coconnective, other.coconnective) {
            let bound = m + n + d;
            out.coconnective = Some(out.coconnective.map_or(bound, |s| s.min(bound)));
        }
        out.check_d_squared()?;
        Ok(out)
    }

    /// Linear dual restricted to `w`: (C^∨)_i = (C_{−i})^∨ with differential
    /// the transpose signed by (−1)^{|f|+1}.
    pub fn dual(&self, w: Window) -> Result<ChainComplex> {
        let source = w.reflect();
        if let Some(covered) = self.faithful_window() {
            if !covered.contains_window(&source) {
                return Err(Error::WindowNotCovered {
                    context: format!(
                        "dual on {w} needs source degrees {source}, but data only covers {covered}"
                    ),
                });
            }
        }
        let ring = self.ring();
        let mut ranks = BTreeMap::new();
        let mut label_map = BTreeMap::new();
        for i in w.iter() {
            let r = self.module.rank(-i);
            if r > 0 {
                ranks.insert(i, r);
                if self.module.labels().is_some() {
                    label_map.insert(
                        i,
                        (0..r).map(|a| format!("{}*", self.module.label(-i, a))).collect(),
                    );
                }
            }
        }
        let mut diffs = BTreeMap::new();
        for i in (w.lo + 1)..=w.hi {
            // d^∨_i = (−1)^{i+1} (d_{1−i})ᵀ : (C_{−i})^∨ → (C_{1−i})^∨
            let d = self.differential(1 - i);
            if d.is_zero() {
                continue;
            }
            let sign = if (i + 1).rem_euclid(2) == 0 { 1 } else { -1 };
            let dt = d.transpose().scaled(sign)?;
            diffs.insert(i, dt);
        }
        let module = if self.module.labels().is_some() {
            GradedModule::with_labels(ring, label_map)?
        } else {
            GradedModule::new(ring, ranks)
        };
        let mut out = ChainComplex {
            connective: None,
            coconnective: None,
            module,
            diffs,
            marker: None,
        };
        let dual_complete = self.is_complete()
            && match self.natural_window() {
                Some(nat) => w.contains_window(&nat.reflect()),
                None => true,
            };
        if !dual_complete {
            let pat = format!("dual of {}", self.pattern().unwrap_or("bounded complex"));
            if self.rank_truncated() {
                out = out.declare_rank_truncation(&pat);
            } else {
                out = out.declare_truncation(&pat, w);
            }
        } else {
            out.connective = out.module.min_degree();
            out.coconnective = out.module.max_degree();
        }
        // Certified bounds flip: H_i = 0 below n ⟹ dual vanishes above −n;
        // H_i = 0 above m ⟹ dual vanishes below −(m + global dimension).
        let d = ring.global_dimension();
        if let Some(n) = self.connective {
            out.coconnective = Some(out.coconnective.map_or(-n, |s| s.min(-n)));
        }
        if let Some(m) = self.coconnective {
            let bound = -(m + d);
            out.connective = Some(out.connective.map_or(bound, |s| s.max(bound)));
        }
        out.check_d_squared()?;
        Ok(out)
    }

    /// Shift degrees up by `k`; the differential picks up (−1)^k.
    pub fn shift(&self, k: i64) -> Result<ChainComplex> {
        let ring = self.ring();
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut ranks = BTreeMap::new();
        let mut label_map = BTreeMap::new();
        for (&n, &r) in self.module.ranks() {
            ranks.insert(n + k, r);
            if self.module.labels().is_some() {
                label_map
                    .insert(n + k, (0..r).map(|a| self.module.label(n, a)).collect());
            }
        }
        let mut diffs = BTreeMap::new();
        for (&n, d) in &self.diffs {
            diffs.insert(n + k, d.scaled(sign)?);
        }
        let module = if self.module.labels().is_some() {
            GradedModule::with_labels(ring, label_map)?
        } else {
            GradedModule::new(ring, ranks)
        };
        Ok(ChainComplex {
            connective: self.connective.map(|c| c + k),
            coconnective: self.coconnective.map(|c| c + k),
            module,
            diffs,
            marker: self.marker.as_ref().map(|m| TruncationMarker {
                pattern: m.pattern.clone(),
                covered: m.covered.shifted(k),
                degreewise_faithful: m.degreewise_faithful,
            }),
        })
    }

    /// Per-degree homology over `w`.
    ///
    /// Complete complexes certify every degree (the data is the whole
    /// object). Pattern windows certify a degree only when the adjacent
    /// differentials lie inside the faithful range; window-edge degrees are
    /// reported from the available data and flagged as observed.
    pub fn homology(&self, w: Window) -> Result<HomologyTable> {
        if let Some(covered) = self.faithful_window() {
            if !covered.contains_window(&w) {
                return Err(Error::WindowNotCovered {
                    context: format!("homology on {w} but data only covers {covered}"),
                });
            }
        }
        let mut table = HomologyTable::new(self.ring());
        for t in w.iter() {
            let d_out = self.differential(t);
            let d_in = self.differential(t + 1);
            let group = homology_group(&d_in, &d_out, self.ring())?;
            let stability = match &self.marker {
                None => Stability::Certified { rule: "complete complex data".to_string() },
                Some(m) if !m.degreewise_faithful => Stability::Observed {
                    note: format!("rank truncation of: {}", m.pattern),
                },
                Some(m) => {
                    let covered = m.covered;
                    if covered.lo <= t - 1 && t + 1 <= covered.hi {
                        Stability::Certified {
                            rule: format!(
                                "pattern window {covered} covers degrees {} through {}",
                                t - 1,
                                t + 1
                            ),
                        }
                    } else {
                        Stability::Observed {
                            note: format!(
                                "window edge: differentials beyond {covered} unavailable"
                            ),
                        }
                    }
                }
            };
            table.insert(t, group, stability);
        }
        Ok(table)
    }

    /// Good truncation from below: homology agrees with `C` in degrees ≥ n
    /// and vanishes below. Realized by the subcomplex `… → C_{n+1} → ker d_n`.
    pub fn truncate_connective(&self, n: i64) -> Result<ChainComplex> {
        if let Some(covered) = self.faithful_window() {
            if n - 1 < covered.lo {
                return Err(Error::WindowNotCovered {
                    context: format!("truncation at {n} but data only covers {covered}"),
                });
            }
        }
        let ring = self.ring();
        let kernel = self.differential(n).kernel_basis()?;
        let mut ranks: BTreeMap<i64, usize> = self
            .module
            .ranks()
            .iter()
            .filter(|&(&d, _)| d > n)
            .map(|(&d, &r)| (d, r))
            .collect();
        if kernel.cols() > 0 {
            ranks.insert(n, kernel.cols());
        }
        let mut diffs: BTreeMap<i64, MatrixExact> = self
            .diffs
            .iter()
            .filter(|&(&d, _)| d > n + 1)
            .map(|(&d, m)| (d, m.clone()))
            .collect();
        // Re-express C_{n+1} → C_n in kernel coordinates; the image lies in
        // ker d_n because d∘d = 0.
        let incoming = self.differential(n + 1);
        if kernel.cols() > 0 && !incoming.is_zero() {
            let rewritten = kernel.solve_exact(&incoming)?;
            if !rewritten.is_zero() {
                diffs.insert(n + 1, rewritten);
            }
        }
        let module = GradedModule::new(ring, ranks);
        let out = ChainComplex {
            connective: Some(n),
            coconnective: self.coconnective,
            module,
            diffs,
            marker: self.marker.clone(),
        };
        out.check_d_squared()?;
        Ok(out)
    }

    /// Good truncation from above: homology agrees with `C` in degrees ≤ n
    /// and vanishes beyond. Keeping the chain groups free (which matters over
    /// Z, where coker d_{n+1} may have torsion) this is realized as
    /// `im d_{n+1} ↪ C_n → C_{n−1} → …` with the image placed in degree n+1.
    pub fn truncate_coconnective(&self, n: i64) -> Result<ChainComplex> {
        if let Some(covered) = self.faithful_window() {
            if n + 1 > covered.hi {
                return Err(Error::WindowNotCovered {
                    context: format!("truncation at {n} but data only covers {covered}"),
                });
            }
        }
        let ring = self.ring();
        let image = image_basis(&self.differential(n + 1))?;
        let mut ranks: BTreeMap<i64, usize> = self
            .module
            .ranks()
            .iter()
            .filter(|&(&d, _)| d <= n)
            .map(|(&d, &r)| (d, r))
            .collect();
        let mut diffs: BTreeMap<i64, MatrixExact> = self
            .diffs
            .iter()
            .filter(|&(&d, _)| d <= n)
            .map(|(&d, m)| (d, m.clone()))
            .collect();
        if image.cols() > 0 {
            ranks.insert(n + 1, image.cols());
            diffs.insert(n + 1, image);
        }
        let module = GradedModule::new(ring, ranks);
        let out = ChainComplex {
            connective: self.connective,
            coconnective: Some(n),
            module,
            diffs,
            marker: self.marker.clone(),
        };
        out.check_d_squared()?;
        Ok(out)
    }
}

/// Basis for the column space of `m`, as matrix columns. Over Z this is a
/// basis of the image lattice (not its saturation).
pub fn image_basis(m: &MatrixExact) -> Result<MatrixExact> {
    match m.ring() {
        CoefficientRing::PrimeField { .. } => {
            // Pivot columns of the original matrix span the column space.
            let mut keep = Vec::new();
            let mut probe = MatrixExact::zero(m.ring(), m.rows(), 0);
            let mut rank = 0usize;
            for j in 0..m.cols() {
                let mut trial = MatrixExact::zero(m.ring(), m.rows(), probe.cols() + 1);
                trial.paste(&probe, 0, 0)?;
                for (i, v) in m.column(j).iter().enumerate() {
                    if *v != 0 {
                        trial.set(i, probe.cols(), *v)?;
                    }
                }
                if trial.rank_field()? > rank {
                    rank += 1;
                    keep.push(j);
                    probe = trial;
                }
            }
            let mut out = MatrixExact::zero(m.ring(), m.rows(), keep.len());
            for (jj, &j) in keep.iter().enumerate() {
                for (i, v) in m.column(j).iter().enumerate() {
                    if *v != 0 {
                        out.set(i, jj, *v)?;
                    }
                }
            }
            Ok(out)
        }
        CoefficientRing::Integers => {
            // U·M·V = D ⟹ image(M) = U⁻¹ · image(D), and image(D) has basis
            // d_i·e_i. U is unimodular so U⁻¹ is exact.
            let snf = m.smith_normal_form(true)?;
            let u = snf.left.expect("transforms requested");
            let u_inv = u.solve_exact(&MatrixExact::identity(m.ring(), u.rows()))?;
            let k = snf.diagonal.len();
            let mut out = MatrixExact::zero(m.ring(), m.rows(), k);
            for (i, &d) in snf.diagonal.iter().enumerate() {
                for r in 0..m.rows() {
                    let v = u_inv.get(r, i);
                    if v != 0 {
                        out.set(r, i, v.checked_mul(d).ok_or(Error::Overflow {
                            context: format!("{v} * {d}"),
                        })?)?;
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Reliability of a reported homology value at a finite truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "flag")]
pub enum Stability {
    /// Exact: justified by a stated certificate.
    #[serde(rename = "certified")]
    Certified { rule: String },
    /// Not certified, but the data shows no movement (or no data beyond the
    /// window exists to contradict it).
    #[serde(rename = "observed-stable")]
    Observed { note: String },
    /// Values still changing with the truncation level; the rank sequence
    /// per level is reported.
    #[serde(rename = "unstable")]
    Unstable { ranks_by_level: Vec<usize>, note: String },
}

impl Stability {
    pub fn short_name(&self) -> &'static str {
        match self {
            Stability::Certified { .. } => "certified",
            Stability::Observed { .. } => "observed-stable",
            Stability::Unstable { .. } => "unstable",
        }
    }

    pub fn is_reliable(&self) -> bool {
        !matches!(self, Stability::Unstable { .. })
    }

    pub fn note(&self) -> String {
        match self {
            Stability::Certified { rule } => rule.clone(),
            Stability::Observed { note } => note.clone(),
            Stability::Unstable { ranks_by_level, note } => {
                let seq =
                    ranks_by_level.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
                if note.is_empty() {
                    format!("ranks by level: {seq}")
                } else {
                    format!("{note}; ranks by level: {seq}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub group: HomologyGroup,
    pub stability: Stability,
}

/// Per-degree homology output: group + stability flag, degrees ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub ring: CoefficientRing,
    pub rows: BTreeMap<i64, TableRow>,
}

impl HomologyTable {
    pub fn new(ring: CoefficientRing) -> Self {
        HomologyTable { ring, rows: BTreeMap::new() }
    }

    pub fn insert(&mut self, degree: i64, group: HomologyGroup, stability: Stability) {
        self.rows.insert(degree, TableRow { group, stability });
    }

    pub fn get(&self, degree: i64) -> Option<&TableRow> {
        self.rows.get(&degree)
    }

    pub fn group(&self, degree: i64) -> HomologyGroup {
        self.rows.get(&degree).map(|r| r.group.clone()).unwrap_or_else(HomologyGroup::zero)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.keys().copied()
    }

    /// Plain-text rendering: one row per degree, ascending.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("degree  free  torsion       flag             note\n");
        for (deg, row) in &self.rows {
            let torsion = if row.group.torsion.is_empty() {
                "-".to_string()
            } else {
                row.group
                    .torsion
                    .iter()
                    .map(|d| format!("Z/{d}"))
                    .collect::<Vec<_>>()
                    .join("+")
            };
            out.push_str(&format!(
                "{:>6}  {:>4}  {:<12}  {:<15}  {}\n",
                deg,
                row.group.free_rank,
                torsion,
                row.stability.short_name(),
                row.stability.note()
            ));
        }
        out
    }
}

/// Homology-vanishing bounds: `connective = n` means H_i = 0 for i < n,
/// `coconnective = m` means H_i = 0 for i > m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Bounds {
    pub connective: Option<i64>,
    pub coconnective: Option<i64>,
}

/// Which operation `predict_bounds` should reason about.
#[derive(Debug, Clone, Copy)]
pub enum BoundOp {
    Dual { input: Bounds },
    Tensor { left: Bounds, right: Bounds },
}

/// Connectivity arithmetic for duals and tensor products. The `d` correction
/// (0 over a field, 1 over Z) enters exactly where torsion can shift a degree.
pub fn predict_bounds(op: BoundOp, ring: CoefficientRing) -> Result<Bounds> {
    let d = ring.global_dimension();
    match op {
        BoundOp::Dual { input } => {
            if input.connective.is_none() && input.coconnective.is_none() {
                return Err(Error::BadParameter(
                    "predict_bounds: dual needs a connective or coconnective certificate"
                        .to_string(),
                ));
            }
            Ok(Bounds {
                coconnective: input.connective.map(|n| -n),
                connective: input.coconnective.map(|n| -(n + d)),
            })
        }
        BoundOp::Tensor { left, right } => {
            let connective = match (left.connective, right.connective) {
                (Some(m), Some(n)) => Some(m + n),
                _ => None,
            };
            let coconnective = match (left.coconnective, right.coconnective) {
                (Some(m), Some(n)) => Some(m + n + d),
                _ => None,
            };
            if connective.is_none() && coconnective.is_none() {
                return Err(Error::BadParameter(
                    "predict_bounds: tensor needs matching certificates on both factors"
                        .to_string(),
                ));
            }
            Ok(Bounds { connective, coconnective })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> CoefficientRing {
        CoefficientRing::prime_field(p).unwrap()
    }

    fn zz() -> CoefficientRing {
        CoefficientRing::integers()
    }

    fn ranks(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
        pairs.iter().copied().collect()
    }

    /// Λ(y), |y| = 1, zero differential, over the given field.
    fn exterior_line(ring: CoefficientRing, gen_degree: i64) -> ChainComplex {
        ChainComplex::with_zero_differential(GradedModule::new(
            ring,
            ranks(&[(0, 1), (gen_degree, 1)]),
        ))
    }

    /// Koszul model over Z: Z·1 in degree 0, Z·ε in degree 1, dε = p.
    fn koszul(p: i64) -> ChainComplex {
        let module = GradedModule::new(zz(), ranks(&[(0, 1), (1, 1)]));
        let mut diffs = BTreeMap::new();
        diffs.insert(1, MatrixExact::from_rows(zz(), &[vec![p]]).unwrap());
        ChainComplex::new(module, diffs).unwrap()
    }

    #[test]
    fn construction_rejects_bad_shapes_and_nonzero_d_squared() {
        let module = GradedModule::new(zz(), ranks(&[(0, 1), (1, 1)]));
        let mut bad_shape = BTreeMap::new();
        bad_shape.insert(1, MatrixExact::from_rows(zz(), &[vec![1, 2]]).unwrap());
        assert!(ChainComplex::new(module.clone(), bad_shape).is_err());

        let module2 = GradedModule::new(zz(), ranks(&[(0, 1), (1, 1), (2, 1)]));
        let mut bad_d2 = BTreeMap::new();
        bad_d2.insert(1, MatrixExact::from_rows(zz(), &[vec![1]]).unwrap());
        bad_d2.insert(2, MatrixExact::from_rows(zz(), &[vec![1]]).unwrap());
        assert!(matches!(
            ChainComplex::new(module2, bad_d2),
            Err(Error::CompositionNotZero { .. })
        ));
    }

    #[test]
    fn tensor_of_exterior_lines_has_binomial_ranks() {
        let c = exterior_line(gf(2), 1);
        let t = c.tensor(&c, Window::new(0, 2).unwrap()).unwrap();
        assert_eq!(t.rank(0), 1);
        assert_eq!(t.rank(1), 2);
        assert_eq!(t.rank(2), 1);
    }

    #[test]
    fn tensor_with_unit_is_identity_on_ranks_and_differentials() {
        let unit = ChainComplex::with_zero_differential(GradedModule::new(zz(), ranks(&[(0, 1)])));
        let k = koszul(3);
        let t = unit.tensor(&k, Window::new(0, 1).unwrap()).unwrap();
        assert_eq!(t.rank(0), 1);
        assert_eq!(t.rank(1), 1);
        assert_eq!(t.differential(1).get(0, 0), 3);
    }

    #[test]
    fn tensor_koszul_koszul_leibniz_signs() {
        // Degree 1 basis: ε⊗1, 1⊗ε. d(ε⊗ε) = p·1⊗ε − p·ε⊗1.
        let k = koszul(5);
        let t = k.tensor(&k, Window::new(0, 2).unwrap()).unwrap();
        assert_eq!((t.rank(0), t.rank(1), t.rank(2)), (1, 2, 1));
        let d1 = t.differential(1);
        assert_eq!((d1.get(0, 0), d1.get(0, 1)), (5, 5));
        // Degree-1 basis is ordered by left degree: row 0 = 1⊗ε, row 1 = ε⊗1.
        let d2 = t.differential(2);
        assert_eq!(d2.get(0, 0), 5);
        assert_eq!(d2.get(1, 0), -5, "ε⊗1 coefficient carries the Leibniz sign");
        // d∘d = 0 was checked at construction; double-check by hand.
        assert!(d1.matmul(&d2).unwrap().is_zero());
    }

    #[test]
    fn dual_reflects_degrees_and_transposes_with_sign() {
        let k = koszul(7);
        let d = k.dual(Window::new(-1, 0).unwrap()).unwrap();
        assert_eq!(d.rank(0), 1);
        assert_eq!(d.rank(-1), 1);
        // d^∨_0 = (−1)^{0+1} (d_1)ᵀ = −[7]
        assert_eq!(d.differential(0).get(0, 0), -7);
    }

    #[test]
    fn dual_of_shifted_point() {
        let pt = ChainComplex::with_zero_differential(GradedModule::new(gf(3), ranks(&[(4, 2)])));
        let d = pt.dual(Window::new(-4, -4).unwrap()).unwrap();
        assert_eq!(d.rank(-4), 2);
    }

    #[test]
    fn double_dual_restores_ranks_and_negates_differential() {
        let k = koszul(2);
        let dd = k
            .dual(Window::new(-1, 0).unwrap())
            .unwrap()
            .dual(Window::new(0, 1).unwrap())
            .unwrap();
        assert_eq!(dd.rank(0), 1);
        assert_eq!(dd.rank(1), 1);
        // The canonical comparison is (−1)^n per degree, under which
        // d^∨∨ = −d; ranks and homology agree.
        assert_eq!(dd.differential(1).get(0, 0), -2);
        let h = dd.homology(Window::new(0, 1).unwrap()).unwrap();
        assert_eq!(h.group(0).torsion, vec![2]);
    }

    #[test]
    fn shift_moves_degrees_and_signs() {
        let k = koszul(3);
        let s = k.shift(1).unwrap();
        assert_eq!(s.rank(1), 1);
        assert_eq!(s.rank(2), 1);
        assert_eq!(s.differential(2).get(0, 0), -3);
        let back = s.shift(-1).unwrap();
        assert_eq!(back.differential(1).get(0, 0), 3);
        assert_eq!(back.rank(0), 1);
    }

    #[test]
    fn homology_of_koszul_and_its_dual() {
        let k = koszul(5);
        let h = k.homology(Window::new(0, 1).unwrap()).unwrap();
        assert_eq!(h.group(0), HomologyGroup { free_rank: 0, torsion: vec![5] });
        assert!(h.group(1).is_zero());

        let dual = k.dual(Window::new(-1, 0).unwrap()).unwrap();
        let hd = dual.homology(Window::new(-1, 0).unwrap()).unwrap();
        // Universal coefficients: torsion moves one degree down.
        assert_eq!(hd.group(-1), HomologyGroup { free_rank: 0, torsion: vec![5] });
        assert!(hd.group(0).is_zero());
    }

    #[test]
    fn homology_of_zero_differential_equals_ranks() {
        let c = exterior_line(gf(2), 3);
        let h = c.homology(Window::new(0, 3).unwrap()).unwrap();
        assert_eq!(h.group(0), HomologyGroup::free(1));
        assert_eq!(h.group(3), HomologyGroup::free(1));
        assert!(h.group(1).is_zero() && h.group(2).is_zero());
        for d in h.degrees() {
            assert!(matches!(h.get(d).unwrap().stability, Stability::Certified { .. }));
        }
    }

    #[test]
    fn dual_free_rank_mirrors_over_a_field() {
        // Random-ish GF(3) complex with a nonzero differential.
        let module = GradedModule::new(gf(3), ranks(&[(0, 2), (1, 2), (2, 1)]));
        let mut diffs = BTreeMap::new();
        diffs.insert(1, MatrixExact::from_rows(gf(3), &[vec![1, 2], vec![2, 1]]).unwrap());
        // d1 ∘ d2 = 0 needs columns of d2 in ker d1; ker d1 is spanned by (1,1).
        diffs.insert(2, MatrixExact::from_rows(gf(3), &[vec![1], vec![1]]).unwrap());
        let c = ChainComplex::new(module, diffs).unwrap();
        let h = c.homology(Window::new(0, 2).unwrap()).unwrap();
        let dual = c.dual(Window::new(-2, 0).unwrap()).unwrap();
        let hd = dual.homology(Window::new(-2, 0).unwrap()).unwrap();
        for t in 0..=2 {
            assert_eq!(
                h.group(t).free_rank,
                hd.group(-t).free_rank,
                "free rank at degree {t} should mirror at −{t}"
            );
        }
    }

    #[test]
    fn truncations_are_good() {
        let k = koszul(3);
        // τ≤0 : only H₀ = Z/3 survives.
        let low = k.truncate_coconnective(0).unwrap();
        let h = low.homology(Window::new(-1, 2).unwrap()).unwrap();
        assert_eq!(h.group(0).torsion, vec![3]);
        for t in [-1, 1, 2] {
            assert!(h.group(t).is_zero(), "H_{t} should vanish");
        }
        // τ≥1 : H₀ dies, H₁ (= 0 here) kept: everything vanishes.
        let high = k.truncate_connective(1).unwrap();
        let h = high.homology(Window::new(-1, 2).unwrap()).unwrap();
        for t in -1..=2 {
            assert!(h.group(t).is_zero());
        }
    }

    #[test]
    fn truncation_sandwich_concentrates_homology() {
        let module = GradedModule::new(gf(2), ranks(&[(0, 1), (1, 2), (2, 1)]));
        let mut diffs = BTreeMap::new();
        diffs.insert(1, MatrixExact::from_rows(gf(2), &[vec![1, 0]]).unwrap());
        let c = ChainComplex::new(module, diffs).unwrap();
        let t = c.truncate_connective(1).unwrap().truncate_coconnective(1).unwrap();
        let h = t.homology(Window::new(-1, 3).unwrap()).unwrap();
        for deg in -1..=3 {
            if deg == 1 {
                assert_eq!(h.group(1), HomologyGroup::free(1));
            } else {
                assert!(h.group(deg).is_zero(), "H_{deg} should vanish");
            }
        }
    }

    #[test]
    fn truncation_of_zero_differential_is_brutal() {
        let c = exterior_line(gf(2), 2);
        let t = c.truncate_coconnective(1).unwrap();
        assert_eq!(t.rank(0), 1);
        assert_eq!(t.rank(1), 0);
        assert_eq!(t.rank(2), 0);
        let t = c.truncate_connective(1).unwrap();
        assert_eq!(t.rank(0), 0);
        assert_eq!(t.rank(2), 1);
    }

    #[test]
    fn predict_bounds_matches_stated_rules() {
        let field = gf(2);
        let b = predict_bounds(
            BoundOp::Dual { input: Bounds { connective: Some(1), coconnective: None } },
            field,
        )
        .unwrap();
        assert_eq!(b.coconnective, Some(-1));
        assert_eq!(b.connective, None);

        let b = predict_bounds(
            BoundOp::Tensor {
                left: Bounds { connective: Some(1), coconnective: None },
                right: Bounds { connective: Some(1), coconnective: None },
            },
            field,
        )
        .unwrap();
        assert_eq!(b.connective, Some(2));

        let b = predict_bounds(
            BoundOp::Dual { input: Bounds { connective: None, coconnective: Some(0) } },
            zz(),
        )
        .unwrap();
        assert_eq!(b.connective, Some(-1));

        assert!(predict_bounds(BoundOp::Dual { input: Bounds::default() }, field).is_err());
    }

    #[test]
    fn evaluation_is_a_chain_map() {
        // ev : C^∨ ⊗ C → 𝕀, ev(e_a^* ⊗ e_b) = δ_{ab} in total degree 0.
        // With the dual sign (−1)^{|f|+1} this is a chain map: ev∘d = 0.
        for c in [koszul(3), {
            let module = GradedModule::new(gf(5), ranks(&[(0, 2), (1, 2)]));
            let mut diffs = BTreeMap::new();
            diffs.insert(1, MatrixExact::from_rows(gf(5), &[vec![1, 2], vec![3, 1]]).unwrap());
            ChainComplex::new(module, diffs).unwrap()
        }] {
            let ring = c.ring();
            let w = Window::new(-2, 2).unwrap();
            let dual = c.dual(w).unwrap();
            let t = dual.tensor(&c, Window::new(-1, 1).unwrap()).unwrap();

            // Build ev on total degree 0: blocks (i, −i) pair dual basis
            // against basis with the identity matrix.
            let mut ev = MatrixExact::zero(ring, 1, t.rank(0));
            let mut offset = 0usize;
            for i in dual.module().support() {
                let ri = dual.rank(i);
                let rj = c.rank(-i);
                if ri == 0 || rj == 0 {
                    continue;
                }
                assert_eq!(ri, rj);
                for a in 0..ri {
                    for b in 0..rj {
                        if a == b {
                            ev.set(0, offset + a * rj + b, 1).unwrap();
                        }
                    }
                }
                offset += ri * rj;
            }
            // Chain map into the unit complex: ev must kill all boundaries
            // from total degree 1.
            let boundary = t.differential(1);
            let composite = ev.matmul(&boundary).unwrap();
            assert!(
                composite.is_zero(),
                "evaluation failed to be a chain map: {composite:?}"
            );
        }
    }

    #[test]
    fn tensor_is_associative_up_to_canonical_reindexing() {
        let a = koszul(2);
        let b = koszul(3);
        let c = koszul(5);
        let w = Window::new(0, 3).unwrap();
        let left = a.tensor(&b, Window::new(0, 2).unwrap()).unwrap().tensor(&c, w).unwrap();
        let right = a.tensor(&b.tensor(&c, Window::new(0, 2).unwrap()).unwrap(), w).unwrap();
        for n in 0..=3 {
            assert_eq!(left.rank(n), right.rank(n), "rank mismatch in degree {n}");
        }
        // Identify ((x⊗y)⊗z) with (x⊗(y⊗z)) by the permutation that sorts
        // flattened (|x|, x, |y|, y, |z|, z) keys, then compare differentials.
        let flatten = |nested_left: bool, n: i64| -> Vec<(i64, usize, i64, usize, i64, usize)> {
            // Enumerate basis in storage order and emit flattened keys.
            let mut keys = Vec::new();
            if nested_left {
                // storage: (m = i+j asc, (i asc, a, b), k, c)
                for m in 0..=n {
                    let k = n - m;
                    if c.rank(k) == 0 {
                        continue;
                    }
                    for i in 0..=m {
                        let j = m - i;
                        if a.rank(i) == 0 || b.rank(j) == 0 {
                            continue;
                        }
                        for ai in 0..a.rank(i) {
                            for bi in 0..b.rank(j) {
                                for ci in 0..c.rank(k) {
                                    keys.push((i, ai, j, bi, k, ci));
                                }
                            }
                        }
                    }
                }
            } else {
                // storage: (i asc, a, (t = j+k asc, j asc, b, c))
                for i in 0..=n {
                    let t = n - i;
                    if a.rank(i) == 0 {
                        continue;
                    }
                    for ai in 0..a.rank(i) {
                        for j in 0..=t {
                            let k = t - j;
                            if b.rank(j) == 0 || c.rank(k) == 0 {
                                continue;
                            }
                            for bi in 0..b.rank(j) {
                                for ci in 0..c.rank(k) {
                                    keys.push((i, ai, j, bi, k, ci));
                                }
                            }
                        }
                    }
                }
            }
            keys
        };
        // Permutation matrices mapping storage order to sorted flattened order.
        let perm = |keys: &[(i64, usize, i64, usize, i64, usize)],
                    ring: CoefficientRing|
         -> MatrixExact {
            let mut sorted: Vec<_> = keys.iter().copied().enumerate().collect();
            sorted.sort_by_key(|&(_, k)| k);
            let mut p = MatrixExact::zero(ring, keys.len(), keys.len());
            for (new_pos, (old_pos, _)) in sorted.into_iter().enumerate() {
                p.set(new_pos, old_pos, 1).unwrap();
            }
            p
        };
        for n in 1..=3i64 {
            let kl = flatten(true, n);
            let kr = flatten(false, n);
            assert_eq!(kl.len(), left.rank(n));
            assert_eq!(kr.len(), right.rank(n));
            let kl_prev = flatten(true, n - 1);
            let kr_prev = flatten(false, n - 1);
            let pl = perm(&kl, zz());
            let pr = perm(&kr, zz());
            let pl_prev = perm(&kl_prev, zz());
            let pr_prev = perm(&kr_prev, zz());
            // Conjugate both differentials into the canonical order.
            let dl = pl_prev.matmul(&left.differential(n)).unwrap().matmul(&pl.transpose()).unwrap();
            let dr = pr_prev.matmul(&right.differential(n)).unwrap().matmul(&pr.transpose()).unwrap();
            assert_eq!(dl, dr, "differentials differ in degree {n}");
        }
    }

    #[test]
    fn pattern_windows_flag_edges_and_refuse_outside() {
        let module = GradedModule::new(gf(2), (-2..=2).map(|d| (d, 1)).collect());
        let c = ChainComplex::with_zero_differential(module)
            .declare_truncation("rank 1 in every degree", Window::new(-2, 2).unwrap());
        assert!(c.homology(Window::new(-3, 0).unwrap()).is_err());
        let h = c.homology(Window::new(-2, 2).unwrap()).unwrap();
        assert!(matches!(h.get(-2).unwrap().stability, Stability::Observed { .. }));
        assert!(matches!(h.get(0).unwrap().stability, Stability::Certified { .. }));
        assert!(matches!(h.get(2).unwrap().stability, Stability::Observed { .. }));
        // Dual demands the reflected window inside the covered range.
        assert!(c.dual(Window::new(-4, 4).unwrap()).is_err());
        assert!(c.dual(Window::new(-1, 1).unwrap()).is_ok());
    }
}
