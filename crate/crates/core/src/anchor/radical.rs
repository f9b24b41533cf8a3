//! Jacobson radical and semisimple quotient of a ModAlgebra.
//!
//! The radical is found with the trace-kernel method of Cohen, Ivanyos and
//! Wales: I_i = {a ∈ I_{i-1} : g_i(ab) = 0 for all b}, with
//! g_i(a) = Tr(Ã^{p^i}) / p^i mod p for an integer lift Ã of left
//! multiplication by a. Small algebras are cross-checked by enumeration.

use super::ModAlgebra;
use crate::error::{bail, Result};
use crate::fp::{add_scaled, left_kernel, BasisSolver, Echelon, FpVec};

/// Largest dimension and field size for the enumeration cross-check.
pub const BRUTE_FORCE_DIM: usize = 16;
pub const BRUTE_FORCE_SIZE: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalData {
    /// Dimensions over the residue field.
    pub radical_dim: usize,
    pub center_dim: usize,
    /// Dimensions n² of the matrix blocks of A/J over a splitting field, ascending.
    pub quotient_blocks: Vec<usize>,
    /// Whether the enumeration check ran and agreed.
    pub cross_checked: bool,
}

impl RadicalData {
    pub fn is_irreducible_mod_p(&self) -> bool {
        self.radical_dim == 0 && self.center_dim == 1
    }
}

/// Tr(M^e) mod `modulus` for a square integer matrix with entries below `modulus`.
fn trace_of_power(m: &[u64], n: usize, e: u64, modulus: u64) -> u64 {
    let mul = |a: &[u64], b: &[u64]| {
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % modulus;
                }
            }
        }
        out
    };
    let mut acc: Vec<u64> = (0..n * n).map(|i| u64::from(i % (n + 1) == 0)).collect();
    let mut base = m.to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    (0..n).map(|i| acc[i * n + i]).sum::<u64>() % modulus
}

/// Basis of J(A) over F_p.
pub fn radical_basis(alg: &ModAlgebra) -> Result<Vec<FpVec>> {
    let p = alg.p;
    let n = alg.dim_fp();
    let mut levels = 0u32;
    while (p as u128).pow(levels + 1) <= n as u128 {
        levels += 1;
    }
    let mut ideal: Vec<FpVec> = (0..n).map(|s| alg.basis_vector(s)).collect();
    for i in 0..=levels {
        if ideal.is_empty() {
            break;
        }
        let q = p.pow(i);
        let modulus = q * p;
        let values: Vec<u64> = ideal
            .iter()
            .map(|x| {
                let t = trace_of_power(&alg.left_mul_matrix(x).data, n, q, modulus);
                if !t.is_multiple_of(q) {
                    bail!(Internal, "trace of a {q}-th power is not divisible by {q}");
                }
                Ok(t / q)
            })
            .collect::<Result<_>>()?;
        let solver = BasisSolver::new(p, &ideal).expect("ideal basis is independent");
        let rows: Vec<FpVec> = ideal
            .iter()
            .map(|x| {
                (0..n)
                    .map(|t| {
                        let y = alg.mul(x, &alg.basis_vector(t));
                        let c = solver.solve(&y).expect("ideal is closed under right multiplication");
                        c.iter().zip(&values).map(|(a, b)| a * b % p).sum::<u64>() % p
                    })
                    .collect()
            })
            .collect();
        let kernel = left_kernel(p, &rows);
        ideal = kernel
            .iter()
            .map(|k| {
                let mut v = vec![0u64; n];
                for (c, x) in k.iter().zip(&ideal) {
                    add_scaled(p, &mut v, x, *c);
                }
                v
            })
            .collect();
    }
    Ok(ideal)
}

fn decode(mut idx: u64, p: u64, n: usize) -> FpVec {
    (0..n)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

fn encode(v: &[u64], p: u64) -> u64 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// J(A) = {a : every element of Aa is nilpotent}, by enumeration. `None`
/// when the algebra is too large.
pub fn radical_brute_force(alg: &ModAlgebra) -> Option<Vec<FpVec>> {
    let p = alg.p;
    let n = alg.dim_fp();
    let size = (p as u128).checked_pow(n as u32)?;
    if n > BRUTE_FORCE_DIM || size > BRUTE_FORCE_SIZE as u128 {
        return None;
    }
    let size = size as u64;
    // 0 unknown, 1 nilpotent, 2 not
    let mut nil = vec![0u8; size as usize];
    let mut is_nil = |v: &FpVec| -> bool {
        let idx = encode(v, p) as usize;
        if nil[idx] == 0 {
            let mut z = v.clone();
            let mut k = 1usize;
            while k <= n && z.iter().any(|&x| x != 0) {
                z = alg.mul(&z, &z);
                k *= 2;
            }
            nil[idx] = if z.iter().all(|&x| x == 0) { 1 } else { 2 };
        }
        nil[idx] == 1
    };
    let mut radical = Echelon::new(p, n);
    for idx in 0..size {
        let a = decode(idx, p, n);
        if radical.contains(&a) {
            continue;
        }
        let mut left = Echelon::new(p, n);
        for s in 0..n {
            left.insert(&alg.mul(&alg.basis_vector(s), &a));
        }
        let basis = left.basis();
        let count = p.pow(basis.len() as u32);
        let all_nil = (0..count).all(|c| {
            let coeffs = decode(c, p, basis.len());
            let mut v = vec![0u64; n];
            for (k, b) in coeffs.iter().zip(&basis) {
                add_scaled(p, &mut v, b, *k);
            }
            is_nil(&v)
        });
        if all_nil {
            radical.insert(&a);
        }
    }
    Some(radical.basis())
}

/// Semisimple quotient A/J: for each central primitive idempotent, the
/// F_p-dimensions of its center and of its block.
fn wedderburn_components(alg: &ModAlgebra, radical: &[FpVec]) -> Result<Vec<(usize, usize)>> {
    let p = alg.p;
    let n = alg.dim_fp();
    let mut jech = Echelon::new(p, n);
    for r in radical {
        jech.insert(r);
    }
    let pivots = jech.pivots();
    let keep: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let m = keep.len();
    let project = |v: &[u64]| -> FpVec {
        let r = jech.reduce(v);
        keep.iter().map(|&i| r[i]).collect()
    };
    let lift = |v: &[u64]| -> FpVec {
        let mut out = vec![0u64; n];
        for (k, &i) in keep.iter().enumerate() {
            out[i] = v[k];
        }
        out
    };
    let qmul = |a: &[u64], b: &[u64]| project(&alg.mul(&lift(a), &lift(b)));
    let unit = |k: usize| -> FpVec {
        let mut v = vec![0u64; m];
        v[k] = 1;
        v
    };
    let one = project(alg.one());
    let center: Vec<FpVec> = {
        let rows: Vec<FpVec> = (0..m)
            .map(|w| {
                let mut r = Vec::with_capacity(m * m);
                for u in 0..m {
                    let mut d = qmul(&unit(w), &unit(u));
                    add_scaled(p, &mut d, &qmul(&unit(u), &unit(w)), p - 1);
                    r.extend(d);
                }
                r
            })
            .collect();
        left_kernel(p, &rows)
    };
    let qpow = |a: &[u64], mut e: u64| {
        let mut acc = one.clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = qmul(&acc, &base);
            }
            base = qmul(&base, &base);
            e >>= 1;
        }
        acc
    };
    // Frobenius-fixed part of the center: the span of the central idempotents.
    let fixed: Vec<FpVec> = {
        let rows: Vec<FpVec> = center
            .iter()
            .map(|z| {
                let mut d = qpow(z, p);
                add_scaled(p, &mut d, z, p - 1);
                d
            })
            .collect();
        left_kernel(p, &rows)
            .iter()
            .map(|k| {
                let mut v = vec![0u64; m];
                for (c, z) in k.iter().zip(&center) {
                    add_scaled(p, &mut v, z, *c);
                }
                v
            })
            .collect()
    };
    let mut idempotents = vec![one.clone()];
    for a in &fixed {
        let mut next = Vec::new();
        for eps in &idempotents {
            let ae = qmul(a, eps);
            for lambda in 0..p {
                let mut prod = eps.clone();
                for mu in 0..p {
                    if mu == lambda {
                        continue;
                    }
                    let mut shifted = ae.clone();
                    add_scaled(p, &mut shifted, eps, p - mu);
                    let inv = crate::arith::inv_mod((lambda + p - mu) % p, p);
                    prod = qmul(&prod, &shifted);
                    prod.iter_mut().for_each(|x| *x = *x * inv % p);
                }
                if prod.iter().any(|&x| x != 0) {
                    next.push(prod);
                }
            }
        }
        idempotents = next;
    }
    if idempotents.len() != fixed.len() {
        bail!(Internal, "found {} central idempotents for a {}-dimensional split center", idempotents.len(), fixed.len());
    }
    let span_dim = |vs: Vec<FpVec>| {
        let mut e = Echelon::new(p, m);
        for v in &vs {
            e.insert(v);
        }
        e.dim()
    };
    let mut out = Vec::new();
    for eps in &idempotents {
        if qmul(eps, eps) != *eps {
            bail!(Internal, "central idempotent is not idempotent");
        }
        let s = span_dim(center.iter().map(|z| qmul(eps, z)).collect());
        let d = span_dim((0..m).map(|u| qmul(eps, &unit(u))).collect());
        out.push((s, d));
    }
    Ok(out)
}

/// Radical, center and semisimple quotient over the residue field.
pub fn radical_data(alg: &ModAlgebra) -> Result<RadicalData> {
    let radical = radical_basis(alg)?;
    let mut cross_checked = false;
    if let Some(brute) = radical_brute_force(alg) {
        let mut a = Echelon::new(alg.p, alg.dim_fp());
        for r in &radical {
            a.insert(r);
        }
        if brute.len() != radical.len() || !brute.iter().all(|v| a.contains(v)) {
            bail!(Internal, "trace-kernel radical (dim {}) disagrees with enumeration (dim {})", radical.len(), brute.len());
        }
        cross_checked = true;
    }
    let f = alg.f;
    let mut blocks = Vec::new();
    for (s, d) in wedderburn_components(alg, &radical)? {
        if s % f != 0 || d % s != 0 {
            bail!(Internal, "component with center degree {s} and dimension {d} over F_p");
        }
        let n2 = d / s;
        let n = (n2 as f64).sqrt().round() as usize;
        if n * n != n2 {
            bail!(Internal, "component of dimension {n2} over its center is not a matrix algebra");
        }
        blocks.extend(std::iter::repeat_n(n2, s / f));
    }
    blocks.sort_unstable();
    let total: usize = blocks.iter().sum::<usize>() * f + radical.len();
    if total != alg.dim_fp() {
        bail!(Internal, "Wedderburn dimensions add to {total}, expected {}", alg.dim_fp());
    }
    Ok(RadicalData {
        radical_dim: radical.len() / f,
        center_dim: alg.center_dim(),
        quotient_blocks: blocks,
        cross_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::super::reduce::tests::{dual_numbers, matrices};
    use super::*;

    #[test]
    fn radical_of_hand_algebras() {
        let d = radical_data(&dual_numbers()).unwrap();
        assert_eq!((d.radical_dim, d.center_dim, d.quotient_blocks.clone()), (1, 2, vec![1]));
        assert!(d.cross_checked);
        let m = radical_data(&matrices()).unwrap();
        assert_eq!((m.radical_dim, m.center_dim, m.quotient_blocks.clone()), (0, 1, vec![4]));
        assert!(m.is_irreducible_mod_p());
    }

    #[test]
    fn radical_of_group_algebra_of_klein_four() {
        // F_2[V4]: basis indexed by elements of (Z/2)², product is XOR
        let n = 4;
        let mut table = vec![0u64; n * n * n];
        for s in 0..n {
            for t in 0..n {
                table[(s * n + t) * n + (s ^ t)] = 1;
            }
        }
        let alg = ModAlgebra::from_table(2, 1, 4, table, vec![1, 0, 0, 0]).unwrap();
        let d = radical_data(&alg).unwrap();
        assert_eq!(d.radical_dim, 3);
        assert_eq!(d.quotient_blocks, vec![1]);
    }

    #[test]
    fn radical_of_f3_c3() {
        // F_3[x]/(x³ - 1) has radical (x - 1) of dimension 2
        let n = 3;
        let mut table = vec![0u64; n * n * n];
        for s in 0..n {
            for t in 0..n {
                table[(s * n + t) * n + (s + t) % 3] = 1;
            }
        }
        let alg = ModAlgebra::from_table(3, 1, 3, table, vec![1, 0, 0]).unwrap();
        let d = radical_data(&alg).unwrap();
        assert_eq!(d.radical_dim, 2);
        assert!(d.cross_checked);
    }

    #[test]
    fn semisimple_with_field_center() {
        // F_2[C3] = F_2 × F_4
        let n = 3;
        let mut table = vec![0u64; n * n * n];
        for s in 0..n {
            for t in 0..n {
                table[(s * n + t) * n + (s + t) % 3] = 1;
            }
        }
        let alg = ModAlgebra::from_table(2, 1, 3, table, vec![1, 0, 0]).unwrap();
        let d = radical_data(&alg).unwrap();
        assert_eq!(d.radical_dim, 0);
        assert_eq!(d.center_dim, 3);
        assert_eq!(d.quotient_blocks, vec![1, 1, 1]);
    }
}
