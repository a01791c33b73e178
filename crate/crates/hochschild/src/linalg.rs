//! Exact sparse linear algebra over GF(p) and Z.
//!
//! Everything here is deterministic: elimination always takes the
//! lowest-index usable pivot over a field, and Smith reduction picks the
//! magnitude-minimal entry (ties broken by position) to keep integer growth
//! down. No modular shortcuts, no floats — results are exact or an error.

use crate::error::{Error, Result};
use crate::ring::CoefficientRing;
use std::collections::BTreeMap;

/// Sparse matrix with only nonzero entries stored, keyed `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixExact {
    ring: CoefficientRing,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl MatrixExact {
    pub fn zero(ring: CoefficientRing, rows: usize, cols: usize) -> Self {
        MatrixExact { ring, rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(ring: CoefficientRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.entries.insert((i, i), 1);
        }
        m
    }

    pub fn from_rows(ring: CoefficientRing, data: &[Vec<i64>]) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zero(ring, rows, cols);
        for (i, row) in data.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch {
                    context: format!("row {i} has {} entries, expected {cols}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v)?;
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        *self.entries.get(&(r, c)).unwrap_or(&0)
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "index ({r},{c}) out of range for {}x{} matrix",
                    self.rows, self.cols
                ),
            });
        }
        let v = self.ring.normalize(v);
        if v == 0 {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
        Ok(())
    }

    /// Add `v` to the entry at `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, v: i64) -> Result<()> {
        let cur = self.get(r, c);
        let sum = self.ring.add(cur, v)?;
        self.set(r, c, sum)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn transpose(&self) -> MatrixExact {
        let mut t = Self::zero(self.ring, self.cols, self.rows);
        for (&(r, c), &v) in &self.entries {
            t.entries.insert((c, r), v);
        }
        t
    }

    pub fn matmul(&self, other: &MatrixExact) -> Result<MatrixExact> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                expected: self.ring.describe(),
                got: other.ring.describe(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "cannot multiply {}x{} by {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let mut out = Self::zero(self.ring, self.rows, other.cols);
        // Group the right factor by row for the sparse product.
        let mut right_rows: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for (&(r, c), &v) in &other.entries {
            right_rows.entry(r).or_default().push((c, v));
        }
        for (&(r, k), &a) in &self.entries {
            if let Some(row) = right_rows.get(&k) {
                for &(c, b) in row {
                    let prod = self.ring.mul(a, b)?;
                    out.add_to(r, c, prod)?;
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, s: i64) -> Result<MatrixExact> {
        let mut out = Self::zero(self.ring, self.rows, self.cols);
        for (&(r, c), &v) in &self.entries {
            out.set(r, c, self.ring.mul(v, s)?)?;
        }
        Ok(out)
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        let mut v = vec![0; self.rows];
        for (&(r, cc), &x) in &self.entries {
            if cc == c {
                v[r] = x;
            }
        }
        v
    }

    /// Paste `other` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, other: &MatrixExact, r0: usize, c0: usize) -> Result<()> {
        for (r, c, v) in other.nonzero_entries() {
            self.set(r0 + r, c0 + c, v)?;
        }
        Ok(())
    }

    fn to_sparse_rows(&self) -> Vec<BTreeMap<usize, i64>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (&(r, c), &v) in &self.entries {
            rows[r].insert(c, v);
        }
        rows
    }

    /// Rank over GF(p). Errors on integer matrices — use the Smith form there.
    pub fn rank_field(&self) -> Result<usize> {
        if !self.ring.is_field() {
            return Err(Error::RingMismatch {
                expected: "GF(p)".to_string(),
                got: self.ring.describe(),
            });
        }
        Ok(self.row_echelon_field()?.1.len())
    }

    /// Row echelon form over GF(p); returns the reduced rows and pivot columns.
    /// Pivot choice: scan columns left to right, take the lowest-index row.
    fn row_echelon_field(&self) -> Result<(Vec<BTreeMap<usize, i64>>, Vec<usize>)> {
        let p_inv = |x: i64| self.ring.inverse(x);
        let mut work = self.to_sparse_rows();
        let mut pivots: Vec<usize> = Vec::new();
        let mut next_row = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (next_row..self.rows).find(|&r| work[r].get(&col).copied().unwrap_or(0) != 0)
            else {
                continue;
            };
            work.swap(next_row, pr);
            // Normalize the pivot row to a leading 1.
            let inv = p_inv(work[next_row][&col])?;
            let prow: BTreeMap<usize, i64> = work[next_row]
                .iter()
                .map(|(&c, &v)| (c, self.ring.mul(v, inv).unwrap()))
                .collect();
            work[next_row] = prow;
            for r in 0..self.rows {
                if r == next_row {
                    continue;
                }
                let factor = work[r].get(&col).copied().unwrap_or(0);
                if factor == 0 {
                    continue;
                }
                let pivot_row = work[next_row].clone();
                let row = &mut work[r];
                for (c, pv) in pivot_row {
                    let cur = row.get(&c).copied().unwrap_or(0);
                    let sub = self.ring.add(cur, self.ring.neg(self.ring.mul(factor, pv)?))?;
                    if sub == 0 {
                        row.remove(&c);
                    } else {
                        row.insert(c, sub);
                    }
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        Ok((work, pivots))
    }

    /// Basis of ker(M) as matrix columns. Over Z the basis spans the full
    /// kernel lattice (saturated), which is what torsion bookkeeping needs.
    pub fn kernel_basis(&self) -> Result<MatrixExact> {
        match self.ring {
            CoefficientRing::PrimeField { .. } => {
                let (rref, pivots) = self.row_echelon_field()?;
                let pivot_set: BTreeMap<usize, usize> =
                    pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
                let free: Vec<usize> =
                    (0..self.cols).filter(|c| !pivot_set.contains_key(c)).collect();
                let mut k = MatrixExact::zero(self.ring, self.cols, free.len());
                for (j, &fc) in free.iter().enumerate() {
                    k.set(fc, j, 1)?;
                    for (&pc, &prow) in &pivot_set {
                        let v = rref[prow].get(&fc).copied().unwrap_or(0);
                        if v != 0 {
                            k.set(pc, j, self.ring.neg(v))?;
                        }
                    }
                }
                Ok(k)
            }
            CoefficientRing::Integers => {
                let snf = self.smith_normal_form(true)?;
                let v = snf.right.expect("transforms requested");
                let k = snf.diagonal.len();
                let mut basis = MatrixExact::zero(self.ring, self.cols, self.cols - k);
                for j in k..self.cols {
                    for r in 0..self.cols {
                        let x = v.get(r, j);
                        if x != 0 {
                            basis.set(r, j - k, x)?;
                        }
                    }
                }
                Ok(basis)
            }
        }
    }

    /// Smith normal form over Z. Returns the positive invariant factors
    /// d_1 | d_2 | … and, when requested, unimodular U, V with U·M·V = D.
    pub fn smith_normal_form(&self, want_transforms: bool) -> Result<SnfResult> {
        if self.ring.is_field() {
            return Err(Error::RingMismatch {
                expected: "Z".to_string(),
                got: self.ring.describe(),
            });
        }
        let mut work = self.to_sparse_rows();
        let mut u = want_transforms.then(|| MatrixExact::identity(self.ring, self.rows));
        let mut v = want_transforms.then(|| MatrixExact::identity(self.ring, self.cols));

        let checked_mul = |a: i64, b: i64| -> Result<i64> {
            a.checked_mul(b).ok_or(Error::Overflow { context: format!("{a} * {b}") })
        };
        let checked_sub = |a: i64, b: i64| -> Result<i64> {
            a.checked_sub(b).ok_or(Error::Overflow { context: format!("{a} - {b}") })
        };

        // Elementary operations, mirrored into U (rows) and V (columns).
        macro_rules! row_sub {
            ($work:ident, $u:ident, $dst:expr, $src:expr, $q:expr) => {{
                let src_row = $work[$src].clone();
                for (c, sv) in src_row {
                    let cur = $work[$dst].get(&c).copied().unwrap_or(0);
                    let nv = checked_sub(cur, checked_mul($q, sv)?)?;
                    if nv == 0 {
                        $work[$dst].remove(&c);
                    } else {
                        $work[$dst].insert(c, nv);
                    }
                }
                if let Some(u) = $u.as_mut() {
                    for c in 0..u.cols() {
                        let nv = checked_sub(u.get($dst, c), checked_mul($q, u.get($src, c))?)?;
                        u.set($dst, c, nv)?;
                    }
                }
            }};
        }
        macro_rules! col_sub {
            ($work:ident, $v:ident, $dst:expr, $src:expr, $q:expr) => {{
                for r in 0..$work.len() {
                    let sv = $work[r].get(&$src).copied().unwrap_or(0);
                    if sv == 0 {
                        continue;
                    }
                    let cur = $work[r].get(&$dst).copied().unwrap_or(0);
                    let nv = checked_sub(cur, checked_mul($q, sv)?)?;
                    if nv == 0 {
                        $work[r].remove(&$dst);
                    } else {
                        $work[r].insert($dst, nv);
                    }
                }
                if let Some(v) = $v.as_mut() {
                    for r in 0..v.rows() {
                        let nv = checked_sub(v.get(r, $dst), checked_mul($q, v.get(r, $src))?)?;
                        v.set(r, $dst, nv)?;
                    }
                }
            }};
        }

        let n = self.rows.min(self.cols);
        let mut t = 0usize;
        while t < n {
            // Magnitude-minimal nonzero pivot in the trailing submatrix,
            // ties broken by (row, col) — deterministic.
            let mut pivot: Option<(usize, usize, i64)> = None;
            for (r, row) in work.iter().enumerate().skip(t) {
                for (&c, &val) in row.range(t..) {
                    let better = match pivot {
                        None => true,
                        Some((_, _, pv)) => val.abs() < pv.abs(),
                    };
                    if better {
                        pivot = Some((r, c, val));
                    }
                }
            }
            let Some((pr, pc, _)) = pivot else { break };
            if pr != t {
                work.swap(t, pr);
                if let Some(u) = u.as_mut() {
                    for c in 0..u.cols() {
                        let (a, b) = (u.get(t, c), u.get(pr, c));
                        u.set(t, c, b)?;
                        u.set(pr, c, a)?;
                    }
                }
            }
            if pc != t {
                for row in work.iter_mut() {
                    let a = row.remove(&t);
                    let b = row.remove(&pc);
                    if let Some(b) = b {
                        row.insert(t, b);
                    }
                    if let Some(a) = a {
                        row.insert(pc, a);
                    }
                }
                if let Some(v) = v.as_mut() {
                    for r in 0..v.rows() {
                        let (a, b) = (v.get(r, t), v.get(r, pc));
                        v.set(r, t, b)?;
                        v.set(r, pc, a)?;
                    }
                }
            }

            // Clear row and column t; restart whenever a remainder produces a
            // smaller pivot candidate (standard Euclidean descent).
            loop {
                let pv = work[t].get(&t).copied().unwrap_or(0);
                debug_assert!(pv != 0);
                let mut dirty = false;
                for r in (t + 1)..self.rows {
                    let x = work[r].get(&t).copied().unwrap_or(0);
                    if x == 0 {
                        continue;
                    }
                    let q = x.div_euclid(pv);
                    if q != 0 {
                        row_sub!(work, u, r, t, q);
                    }
                    if work[r].get(&t).copied().unwrap_or(0) != 0 {
                        // Remainder is smaller in magnitude than the pivot: promote it.
                        work.swap(t, r);
                        if let Some(u) = u.as_mut() {
                            for c in 0..u.cols() {
                                let (a, b) = (u.get(t, c), u.get(r, c));
                                u.set(t, c, b)?;
                                u.set(r, c, a)?;
                            }
                        }
                        dirty = true;
                        break;
                    }
                }
                if dirty {
                    continue;
                }
                for c in (t + 1)..self.cols {
                    let x = work[t].get(&c).copied().unwrap_or(0);
                    if x == 0 {
                        continue;
                    }
                    let pv = work[t][&t];
                    let q = x.div_euclid(pv);
                    if q != 0 {
                        col_sub!(work, v, c, t, q);
                    }
                    if work[t].get(&c).copied().unwrap_or(0) != 0 {
                        // Swap columns t and c to bring the smaller remainder in.
                        for row in work.iter_mut() {
                            let a = row.remove(&t);
                            let b = row.remove(&c);
                            if let Some(b) = b {
                                row.insert(t, b);
                            }
                            if let Some(a) = a {
                                row.insert(c, a);
                            }
                        }
                        if let Some(v) = v.as_mut() {
                            for r in 0..v.rows() {
                                let (a, b) = (v.get(r, t), v.get(r, c));
                                v.set(r, t, b)?;
                                v.set(r, c, a)?;
                            }
                        }
                        dirty = true;
                        break;
                    }
                }
                if dirty {
                    continue;
                }
                break;
            }

            // Pivot must divide every entry of the trailing submatrix for the
            // divisibility chain; if not, fold the offending row in and redo.
            let pv = work[t][&t];
            let mut offender: Option<usize> = None;
            'scan: for r in (t + 1)..self.rows {
                for (&c, &x) in work[r].range((t + 1)..) {
                    let _ = c;
                    if x.rem_euclid(pv.abs()) != 0 {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            if let Some(r) = offender {
                row_sub!(work, u, t, r, -1); // row_t += row_r
                continue; // re-run position t with the new content
            }
            t += 1;
        }

        // Normalize signs on the diagonal.
        let mut diagonal = Vec::new();
        for i in 0..n {
            let d = work[i].get(&i).copied().unwrap_or(0);
            if d == 0 {
                break;
            }
            if d < 0 {
                for (_, val) in work[i].iter_mut() {
                    *val = -*val;
                }
                if let Some(u) = u.as_mut() {
                    for c in 0..u.cols() {
                        let x = u.get(i, c);
                        u.set(i, c, -x)?;
                    }
                }
            }
            diagonal.push(work[i][&i]);
        }

        if cfg!(debug_assertions) {
            for w in diagonal.windows(2) {
                debug_assert!(w[1] % w[0] == 0, "invariant factors must chain: {diagonal:?}");
            }
        }

        Ok(SnfResult { diagonal, left: u, right: v })
    }

    /// Rank over the fraction field: GF(p) rank, or the number of nonzero
    /// invariant factors over Z.
    pub fn rank(&self) -> Result<usize> {
        match self.ring {
            CoefficientRing::PrimeField { .. } => self.rank_field(),
            CoefficientRing::Integers => Ok(self.smith_normal_form(false)?.diagonal.len()),
        }
    }

    /// Solve `self · X = rhs` exactly. Errors when no exact solution exists
    /// (over Z this includes divisibility failures).
    pub fn solve_exact(&self, rhs: &MatrixExact) -> Result<MatrixExact> {
        if rhs.rows != self.rows {
            return Err(Error::ShapeMismatch {
                context: format!(
                    "solve: lhs has {} rows, rhs has {}",
                    self.rows, rhs.rows
                ),
            });
        }
        match self.ring {
            CoefficientRing::PrimeField { .. } => {
                // Eliminate on the augmented block [self | rhs].
                let mut aug = MatrixExact::zero(self.ring, self.rows, self.cols + rhs.cols);
                aug.paste(self, 0, 0)?;
                aug.paste(rhs, 0, self.cols)?;
                let (rref, pivots) = aug.row_echelon_field()?;
                for (i, row) in rref.iter().enumerate() {
                    let lead = row.keys().next().copied();
                    if let Some(c) = lead {
                        if c >= self.cols && pivots.get(i).map_or(true, |&p| p >= self.cols) {
                            return Err(Error::DivisionNotExact {
                                context: "inconsistent linear system over GF(p)".to_string(),
                            });
                        }
                    }
                }
                let pivot_of_col: BTreeMap<usize, usize> =
                    pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
                let mut x = MatrixExact::zero(self.ring, self.cols, rhs.cols);
                for (&c, &prow) in &pivot_of_col {
                    if c >= self.cols {
                        return Err(Error::DivisionNotExact {
                            context: "inconsistent linear system over GF(p)".to_string(),
                        });
                    }
                    for j in 0..rhs.cols {
                        let v = rref[prow].get(&(self.cols + j)).copied().unwrap_or(0);
                        if v != 0 {
                            x.set(c, j, v)?;
                        }
                    }
                }
                // Free variables stay zero; verify.
                let check = self.matmul(&x)?;
                if &check != rhs {
                    return Err(Error::DivisionNotExact {
                        context: "inconsistent linear system over GF(p)".to_string(),
                    });
                }
                Ok(x)
            }
            CoefficientRing::Integers => {
                let snf = self.smith_normal_form(true)?;
                let uu = snf.left.expect("transforms requested");
                let vv = snf.right.expect("transforms requested");
                let ub = uu.matmul(rhs)?;
                let k = snf.diagonal.len();
                let mut y = MatrixExact::zero(self.ring, self.cols, rhs.cols);
                for r in 0..self.rows {
                    for j in 0..rhs.cols {
                        let val = ub.get(r, j);
                        if r < k {
                            let d = snf.diagonal[r];
                            if val % d != 0 {
                                return Err(Error::DivisionNotExact {
                                    context: format!("{val} not divisible by invariant factor {d}"),
                                });
                            }
                            y.set(r, j, val / d)?;
                        } else if val != 0 {
                            return Err(Error::DivisionNotExact {
                                context: "inconsistent linear system over Z".to_string(),
                            });
                        }
                    }
                }
                vv.matmul(&y)
            }
        }
    }
}

/// Output of [`MatrixExact::smith_normal_form`].
#[derive(Debug, Clone)]
pub struct SnfResult {
    /// Positive invariant factors `d_1 | d_2 | …`; zero diagonal entries are
    /// not listed, so the length equals the rank.
    pub diagonal: Vec<i64>,
    /// Unimodular row transform U with U·M·V = diag.
    pub left: Option<MatrixExact>,
    /// Unimodular column transform V.
    pub right: Option<MatrixExact>,
}

/// A finitely generated abelian group (or GF(p) vector space) presented as
/// free rank plus invariant-factor torsion `Z/d_1 ⊕ … ⊕ Z/d_k`, d_i | d_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, re-normalizing torsion into a single divisibility chain.
    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        let mut primary: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
        for d in self.torsion.iter().chain(other.torsion.iter()) {
            for (p, e) in factor(*d) {
                primary.entry(p).or_default().push(e);
            }
        }
        let chain_len = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut chain = vec![1i64; chain_len];
        for (p, mut exps) in primary {
            exps.sort_unstable();
            // Largest exponents go to the last invariant factor.
            for (i, e) in exps.iter().rev().enumerate() {
                let slot = chain_len - 1 - i;
                chain[slot] *= p.pow(*e);
            }
        }
        HomologyGroup { free_rank: self.free_rank + other.free_rank, torsion: chain }
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn factor(mut n: i64) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Homology of the two-step complex `· --d_in--> · --d_out--> ·`:
/// ker(d_out) / im(d_in), with d_out·d_in = 0 checked first.
pub fn homology_group(
    d_in: &MatrixExact,
    d_out: &MatrixExact,
    ring: CoefficientRing,
) -> Result<HomologyGroup> {
    if d_in.ring() != ring || d_out.ring() != ring {
        return Err(Error::RingMismatch {
            expected: ring.describe(),
            got: format!("{} / {}", d_in.ring().describe(), d_out.ring().describe()),
        });
    }
    if d_out.cols() != d_in.rows() {
        return Err(Error::ShapeMismatch {
            context: format!(
                "d_out has {} columns but d_in has {} rows",
                d_out.cols(),
                d_in.rows()
            ),
        });
    }
    let composite = d_out.matmul(d_in)?;
    if !composite.is_zero() {
        return Err(Error::CompositionNotZero {
            context: format!(
                "d_out ∘ d_in has {} nonzero entries",
                composite.nonzero_entries().count()
            ),
        });
    }

    let kernel = d_out.kernel_basis()?;
    let k = kernel.cols();
    // Express the incoming image in kernel coordinates. The kernel basis is
    // saturated over Z, so the system is exactly solvable.
    let coords = kernel.solve_exact(d_in)?;
    match ring {
        CoefficientRing::PrimeField { .. } => {
            let r = coords.rank_field()?;
            Ok(HomologyGroup::free(k - r))
        }
        CoefficientRing::Integers => {
            let snf = coords.smith_normal_form(false)?;
            let r = snf.diagonal.len();
            let torsion: Vec<i64> = snf.diagonal.into_iter().filter(|&d| d > 1).collect();
            Ok(HomologyGroup { free_rank: k - r, torsion })
        }
    }
}
