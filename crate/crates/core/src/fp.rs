//! Dense linear algebra over a prime field F_p, with row-vector conventions
//! (a matrix acts by `v ↦ v·M`).

use crate::arith::inv_mod;

pub type FpVec = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u64, cols: usize, rows: &[FpVec]) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<FpVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p;
        let mut out = FpMatrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        out
    }

    pub fn sub_identity(&self) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i);
            m.set(i, i, (v + self.p - 1) % self.p);
        }
        m
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.p, self.cols, &self.row_vecs())
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let p = self.p;
        let mut aug: Vec<FpVec> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| aug[r][col] != 0)?;
            aug.swap(col, piv);
            let inv = inv_mod(aug[col][col], p);
            for x in aug[col].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..n {
                if r != col && aug[r][col] != 0 {
                    let f = aug[r][col];
                    let (a, b) = if r < col {
                        let (lo, hi) = aug.split_at_mut(col);
                        (&mut lo[r], &hi[0])
                    } else {
                        let (lo, hi) = aug.split_at_mut(r);
                        (&mut hi[0], &lo[col])
                    };
                    for (x, y) in a.iter_mut().zip(b.iter()) {
                        *x = (*x + p * p - f * y) % p;
                    }
                }
            }
        }
        let rows: Vec<FpVec> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(FpMatrix::from_rows(p, n, &rows))
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

pub fn vec_mat(p: u64, v: &[u64], m: &FpMatrix) -> FpVec {
    assert_eq!(v.len(), m.rows);
    let mut out = vec![0u64; m.cols];
    for (k, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (o, &b) in out.iter_mut().zip(m.row(k)) {
            *o = (*o + a * b) % p;
        }
    }
    out
}

pub fn add_scaled(p: u64, acc: &mut [u64], v: &[u64], s: u64) {
    if s == 0 {
        return;
    }
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = (*a + s * b) % p;
    }
}

/// Incremental row-echelon basis of a subspace of F_p^n.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u64,
    n: usize,
    rows: Vec<(usize, FpVec)>,
}

impl Echelon {
    pub fn new(p: u64, n: usize) -> Self {
        Echelon { p, n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u64]) -> FpVec {
        let p = self.p;
        let mut v = v.to_vec();
        for (piv, r) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + p * p - c * y) % p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns true when the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.n);
        let p = self.p;
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(r[piv], p);
        for x in r.iter_mut() {
            *x = *x * inv % p;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&r) {
                    *x = (*x + p * p - c * y) % p;
                }
            }
        }
        self.rows.push((piv, r));
        true
    }

    pub fn basis(&self) -> Vec<FpVec> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// Pivot columns; every reduced vector is zero there.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

pub fn rank_of_rows(p: u64, n: usize, rows: &[FpVec]) -> usize {
    let mut e = Echelon::new(p, n);
    for r in rows {
        e.insert(r);
    }
    e.dim()
}

/// Basis of the left kernel `{c : c·M = 0}` of the matrix whose rows are `rows`.
pub fn left_kernel(p: u64, rows: &[FpVec]) -> Vec<FpVec> {
    let k = rows.len();
    if k == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    // Echelonize [M | I] and read off rows whose M-part vanishes.
    let mut aug: Vec<FpVec> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = r.clone();
            a.extend((0..k).map(|j| u64::from(i == j)));
            a
        })
        .collect();
    let mut lead = 0;
    for col in 0..n {
        let Some(piv) = (lead..k).find(|&r| aug[r][col] != 0) else {
            continue;
        };
        aug.swap(lead, piv);
        let inv = inv_mod(aug[lead][col], p);
        for x in aug[lead].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = aug[lead].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != lead && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        lead += 1;
        if lead == k {
            break;
        }
    }
    aug[lead..].iter().map(|r| r[n..].to_vec()).collect()
}

/// Basis of the common fixed space `{v : v·T = v for all T}`.
pub fn common_fixed_space(p: u64, n: usize, maps: &[FpMatrix]) -> Vec<FpVec> {
    if maps.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    }
    // v·(T - I) = 0 for each T: stack the (T - I) horizontally.
    let rows: Vec<FpVec> = (0..n)
        .map(|i| {
            let mut r = Vec::with_capacity(n * maps.len());
            for t in maps {
                let d = t.sub_identity();
                r.extend_from_slice(d.row(i));
            }
            r
        })
        .collect();
    left_kernel(p, &rows)
}

/// Coordinates with respect to a fixed list of independent vectors.
#[derive(Clone, Debug)]
pub struct BasisSolver {
    p: u64,
    dim: usize,
    /// (pivot, row, combination of the input vectors giving row).
    rows: Vec<(usize, FpVec, FpVec)>,
}

impl BasisSolver {
    /// `None` when the vectors are dependent.
    pub fn new(p: u64, basis: &[FpVec]) -> Option<Self> {
        let d = basis.len();
        let mut rows: Vec<(usize, FpVec, FpVec)> = Vec::with_capacity(d);
        for (k, b) in basis.iter().enumerate() {
            let mut r = b.clone();
            let mut t = vec![0u64; d];
            t[k] = 1;
            for (piv, row, comb) in &rows {
                let c = r[*piv];
                if c != 0 {
                    add_scaled(p, &mut r, row, p - c);
                    add_scaled(p, &mut t, comb, p - c);
                }
            }
            let piv = r.iter().position(|&x| x != 0)?;
            let inv = inv_mod(r[piv], p);
            r.iter_mut().for_each(|x| *x = *x * inv % p);
            t.iter_mut().for_each(|x| *x = *x * inv % p);
            rows.push((piv, r, t));
        }
        Some(BasisSolver { p, dim: d, rows })
    }

    /// `c` with `v = Σ c_k basis_k`, or `None` outside the span.
    pub fn solve(&self, v: &[u64]) -> Option<FpVec> {
        let p = self.p;
        let mut v = v.to_vec();
        let mut u = vec![0u64; self.dim];
        for (piv, row, comb) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                add_scaled(p, &mut v, row, p - c);
                add_scaled(p, &mut u, comb, c);
            }
        }
        v.iter().all(|&x| x == 0).then_some(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let rows = vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 1, 1]];
        let ker = left_kernel(2, &rows);
        assert_eq!(ker, vec![vec![1, 1, 0]]);
        assert_eq!(rank_of_rows(2, 3, &rows), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let m = FpMatrix::from_rows(5, 2, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(5, 2));
        let sing = FpMatrix::from_rows(5, 2, &[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn fixed_space_of_swap() {
        let swap = FpMatrix::from_rows(3, 2, &[vec![0, 1], vec![1, 0]]);
        let fixed = common_fixed_space(3, 2, &[swap]);
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed[0][0], fixed[0][1]);
    }

    #[test]
    fn solver_recovers_combination() {
        let basis = vec![vec![1, 2, 0], vec![0, 1, 1]];
        let s = BasisSolver::new(3, &basis).unwrap();
        assert_eq!(s.solve(&[2, 0, 2]), Some(vec![2, 2]));
        assert_eq!(s.solve(&[0, 0, 1]), None);
        assert!(BasisSolver::new(3, &[vec![1, 1], vec![2, 2]]).is_none());
    }
}
