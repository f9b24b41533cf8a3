//! Finitely generated Z_(p)-modules inside Q^n, kept in echelon form.
//!
//! Pivot columns strictly increase down the basis and each pivot entry is a
//! power of p. Entries below a pivot are zero, so membership is a single pass
//! of back-substitution that checks every coefficient is p-integral.

use num_traits::{One, Zero};

use crate::arith::{pow_rat, strip_unit_content, vp, Rational};
use crate::error::{bail, Result};

/// A Q-linear map between rational coordinate spaces.
pub trait LinearMap: Sync {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn apply(&self, v: &[Rational]) -> Vec<Rational>;
}

/// `v ↦ v·M` for a dense rational matrix M (rows indexed by input coordinates).
#[derive(Clone, Debug)]
pub struct DenseMap {
    pub rows: Vec<Vec<Rational>>,
    pub cols: usize,
}

impl LinearMap for DenseMap {
    fn dim_in(&self) -> usize {
        self.rows.len()
    }
    fn dim_out(&self) -> usize {
        self.cols
    }
    fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.cols];
        for (x, row) in v.iter().zip(&self.rows) {
            if x.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(row) {
                if !m.is_zero() {
                    *o += x * m;
                }
            }
        }
        out
    }
}

/// Sends coordinate `i` to coordinate `target[i]`.
#[derive(Clone, Debug)]
pub struct CoordPermutation {
    pub target: Vec<usize>,
}

impl LinearMap for CoordPermutation {
    fn dim_in(&self) -> usize {
        self.target.len()
    }
    fn dim_out(&self) -> usize {
        self.target.len()
    }
    fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.target[i]] = x.clone();
        }
        out
    }
}

/// Multiplication by a constant rational.
#[derive(Clone, Debug)]
pub struct ScalarMap {
    pub dim: usize,
    pub scalar: Rational,
}

impl LinearMap for ScalarMap {
    fn dim_in(&self) -> usize {
        self.dim
    }
    fn dim_out(&self) -> usize {
        self.dim
    }
    fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        v.iter().map(|x| x * &self.scalar).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLattice {
    p: u64,
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    /// Pivot entry of row i is p^{pivot_exps[i]}; may be negative.
    pivot_exps: Vec<i64>,
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `a -= c·b`, skipping zeros.
fn sub_scaled(a: &mut [Rational], b: &[Rational], c: &Rational) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x -= c * y;
        }
    }
}

impl PLattice {
    pub fn zero(p: u64, dim: usize) -> Self {
        PLattice { p, dim, rows: Vec::new(), pivots: Vec::new(), pivot_exps: Vec::new() }
    }

    /// Z_(p)^n with its standard basis.
    pub fn standard(p: u64, dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        PLattice { p, dim, rows, pivots: (0..dim).collect(), pivot_exps: vec![0; dim] }
    }

    /// Echelon basis of the Z_(p)-span of `rows`.
    pub fn normal_form(p: u64, dim: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut work: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != dim {
                bail!(Input, "row of length {} in dimension {dim}", r.len());
            }
            if !is_zero_vec(&r) {
                work.push(r);
            }
        }
        let mut done: Vec<Vec<Rational>> = Vec::new();
        let mut pivots = Vec::new();
        let mut exps = Vec::new();
        for col in 0..dim {
            if work.is_empty() {
                break;
            }
            let mut best: Option<(usize, i64)> = None;
            for (i, r) in work.iter().enumerate() {
                if let Some(v) = vp(&r[col], p) {
                    if best.is_none_or(|(_, bv)| v < bv) {
                        best = Some((i, v));
                    }
                }
            }
            let Some((bi, a)) = best else { continue };
            let mut piv = work.remove(bi);
            let unit = &piv[col] / pow_rat(p, a);
            if !unit.is_one() {
                let inv = unit.recip();
                for x in piv.iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
            let pa = pow_rat(p, a);
            for r in work.iter_mut() {
                if !r[col].is_zero() {
                    let c = &r[col] / &pa;
                    sub_scaled(r, &piv, &c);
                }
            }
            for r in done.iter_mut() {
                if let Some(v) = vp(&r[col], p) {
                    if v >= a {
                        let c = &r[col] / &pa;
                        sub_scaled(r, &piv, &c);
                    }
                }
            }
            work.retain(|r| !is_zero_vec(r));
            for r in work.iter_mut() {
                strip_unit_content(r, p);
            }
            done.push(piv);
            pivots.push(col);
            exps.push(a);
        }
        Ok(PLattice { p, dim, rows: done, pivots, pivot_exps: exps })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn pivot_exponents(&self) -> &[i64] {
        &self.pivot_exps
    }

    /// Coefficients of `v` in the basis when `v` lies in the Q-span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if v.len() != self.dim {
            bail!(Input, "vector of length {} in dimension {}", v.len(), self.dim);
        }
        let mut r = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let col = self.pivots[i];
            let c = &r[col] / pow_rat(self.p, self.pivot_exps[i]);
            if !c.is_zero() {
                sub_scaled(&mut r, row, &c);
            }
            coeffs.push(c);
        }
        Ok(is_zero_vec(&r).then_some(coeffs))
    }

    pub fn member(&self, v: &[Rational]) -> Result<bool> {
        Ok(match self.coordinates(v)? {
            None => false,
            Some(c) => c.iter().all(|x| vp(x, self.p).is_none_or(|k| k >= 0)),
        })
    }

    pub fn in_span(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &PLattice) -> Result<bool> {
        for b in &other.rows {
            if !self.member(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_span(&self, other: &PLattice) -> Result<bool> {
        Ok(self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    pub fn from_combinations(&self, coeff_rows: &[Vec<Rational>]) -> Result<PLattice> {
        let rows = coeff_rows.iter().map(|c| self.combine(c)).collect();
        PLattice::normal_form(self.p, self.dim, rows)
    }

    /// `Σ c_i b_i`.
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if !c.is_zero() {
                for (o, x) in out.iter_mut().zip(row) {
                    if !x.is_zero() {
                        *o += c * x;
                    }
                }
            }
        }
        out
    }

    /// Normal form of the images of the basis under `t`.
    pub fn image_generators(&self, t: &dyn LinearMap) -> Result<PLattice> {
        if t.dim_in() != self.dim {
            bail!(Input, "map expects dimension {}, lattice has {}", t.dim_in(), self.dim);
        }
        let rows = self.rows.iter().map(|b| t.apply(b)).collect();
        PLattice::normal_form(self.p, t.dim_out(), rows)
    }

    /// `{x ∈ L : T(x) = x for every T}`, saturated in L.
    pub fn fixed_sublattice(&self, maps: &[&dyn LinearMap]) -> Result<PLattice> {
        if maps.is_empty() {
            return Ok(self.clone());
        }
        let r = self.rank();
        let k = maps.len();
        // Row i: coordinates of (T_j − 1)(b_i) for every j, then the identity block.
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(r);
        for (i, b) in self.rows.iter().enumerate() {
            let mut row = Vec::with_capacity(r * k + r);
            for t in maps {
                if t.dim_in() != self.dim || t.dim_out() != self.dim {
                    bail!(Input, "map dimension does not match the lattice");
                }
                let mut d = t.apply(b);
                for (x, y) in d.iter_mut().zip(b) {
                    *x -= y;
                }
                let Some(c) = self.coordinates(&d)? else {
                    bail!(Input, "map does not preserve the span of the lattice");
                };
                row.extend(c);
            }
            row.extend((0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            rows.push(row);
        }
        let nf = PLattice::normal_form(self.p, r * k + r, rows)?;
        let kernel: Vec<Vec<Rational>> = nf
            .rows
            .iter()
            .filter(|row| is_zero_vec(&row[..r * k]))
            .map(|row| row[r * k..].to_vec())
            .collect();
        self.from_combinations(&kernel)
    }

    /// p-valuations of the elementary divisors of `self / sub`.
    pub fn quotient_valuations(&self, sub: &PLattice) -> Result<Vec<i64>> {
        if sub.dim != self.dim {
            bail!(Input, "dimension mismatch");
        }
        let mut mat: Vec<Vec<Rational>> = Vec::with_capacity(sub.rank());
        for b in &sub.rows {
            match self.coordinates(b)? {
                Some(c) if c.iter().all(|x| vp(x, self.p).is_none_or(|k| k >= 0)) => mat.push(c),
                _ => bail!(Input, "not a sublattice"),
            }
        }
        if sub.rank() != self.rank() {
            bail!(Input, "sublattice of rank {} in rank {}: quotient is not torsion", sub.rank(), self.rank());
        }
        Ok(smith_valuations(mat, self.p))
    }

    /// Sum of two lattices.
    pub fn sum(&self, other: &PLattice) -> Result<PLattice> {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        PLattice::normal_form(self.p, self.dim, rows)
    }

    /// `p^k · L`.
    pub fn scaled(&self, k: i64) -> PLattice {
        let s = pow_rat(self.p, k);
        PLattice {
            p: self.p,
            dim: self.dim,
            rows: self.rows.iter().map(|r| r.iter().map(|x| x * &s).collect()).collect(),
            pivots: self.pivots.clone(),
            pivot_exps: self.pivot_exps.iter().map(|a| a + k).collect(),
        }
    }
}

/// Diagonal valuations of the Smith form over Z_(p), sorted ascending.
pub fn smith_valuations(mut mat: Vec<Vec<Rational>>, p: u64) -> Vec<i64> {
    let mut out = Vec::new();
    while !mat.is_empty() && !mat[0].is_empty() {
        let mut best: Option<(usize, usize, i64)> = None;
        for (i, r) in mat.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if let Some(v) = vp(x, p) {
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((bi, bj, v)) = best else { break };
        out.push(v);
        let piv = mat.remove(bi);
        let pv = piv[bj].clone();
        for r in mat.iter_mut() {
            if !r[bj].is_zero() {
                let c = &r[bj] / &pv;
                sub_scaled(r, &piv, &c);
            }
        }
        // Column operations clear the pivot row; since every remaining row is
        // now zero in column bj, just drop that column.
        for r in mat.iter_mut() {
            r.remove(bj);
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    fn rv(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn normal_forms() {
        let l = PLattice::normal_form(2, 2, vec![rv(&[2, 0]), rv(&[0, 1]), rv(&[1, 0])]).unwrap();
        assert_eq!(l.basis(), &[rv(&[1, 0]), rv(&[0, 1])]);
        let l = PLattice::normal_form(2, 2, vec![rv(&[2, 0]), rv(&[0, 3])]).unwrap();
        assert_eq!(l.basis(), &[rv(&[2, 0]), rv(&[0, 1])]);
        let again = PLattice::normal_form(2, 2, l.basis().to_vec()).unwrap();
        assert_eq!(again, l);
    }

    #[test]
    fn membership() {
        let l = PLattice::normal_form(2, 2, vec![rv(&[2, 0]), rv(&[0, 1])]).unwrap();
        assert!(!l.member(&rv(&[1, 0])).unwrap());
        assert!(l.member(&rv(&[0, 0])).unwrap());
        assert!(l.member(&[rat(6), rat_frac(1, 3)]).unwrap());
        assert!(l.member(&rv(&[1])).is_err());
    }

    #[test]
    fn fixed_points_of_swap() {
        let l = PLattice::standard(3, 2);
        let swap = CoordPermutation { target: vec![1, 0] };
        let f = l.fixed_sublattice(&[&swap]).unwrap();
        assert_eq!(f.rank(), 1);
        assert!(f.member(&rv(&[1, 1])).unwrap());
        assert_eq!(l.fixed_sublattice(&[]).unwrap(), l);
        // at p = 2 the fixed lattice of the swap is still saturated
        let l2 = PLattice::standard(2, 2);
        let f2 = l2.fixed_sublattice(&[&swap]).unwrap();
        assert!(f2.member(&rv(&[1, 1])).unwrap());
    }

    #[test]
    fn fixed_points_reject_foreign_maps() {
        let l = PLattice::normal_form(2, 2, vec![rv(&[1, 0])]).unwrap();
        let swap = CoordPermutation { target: vec![1, 0] };
        assert!(l.fixed_sublattice(&[&swap]).is_err());
    }

    #[test]
    fn images_and_quotients() {
        let l = PLattice::standard(2, 2);
        let id = ScalarMap { dim: 2, scalar: rat(1) };
        assert_eq!(l.image_generators(&id).unwrap(), l);
        let zero = ScalarMap { dim: 2, scalar: rat(0) };
        assert_eq!(l.image_generators(&zero).unwrap().rank(), 0);
        let times_p = ScalarMap { dim: 2, scalar: rat(2) };
        let pl = l.image_generators(&times_p).unwrap();
        assert_eq!(l.quotient_valuations(&pl).unwrap(), vec![1, 1]);
        assert_eq!(l.quotient_valuations(&l).unwrap(), vec![0, 0]);
        let sub = PLattice::normal_form(3, 2, vec![rv(&[3, 0]), rv(&[0, 9])]).unwrap();
        assert_eq!(PLattice::standard(3, 2).quotient_valuations(&sub).unwrap(), vec![1, 2]);
        assert!(pl.quotient_valuations(&l).is_err());
    }

    #[test]
    fn smith_mixes_rows() {
        // [[2, 4], [4, 2]] over Z_(2): divisors 2 and 2·(1−4)=−6 → {1, 1}
        let m = vec![rv(&[2, 4]), rv(&[4, 2])];
        assert_eq!(smith_valuations(m, 2), vec![1, 1]);
        // [[1, 2], [3, 4]] has det −2
        assert_eq!(smith_valuations(vec![rv(&[1, 2]), rv(&[3, 4])], 2), vec![0, 1]);
    }
}
