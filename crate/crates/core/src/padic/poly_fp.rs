//! Polynomials over F_p (ascending coefficient vectors, no trailing zeros) and
//! their factorization: squarefree split, distinct-degree, then
//! Cantor–Zassenhaus with a fixed seed.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::inv_mod;

pub type PolyFp = Vec<u64>;

const SPLIT_SEED: u64 = 0x5eed_f00d;

pub fn trim(mut a: PolyFp) -> PolyFp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn from_int_poly(coeffs: &[i64], p: u64) -> PolyFp {
    trim(coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
}

/// Degree; -1 for the zero polynomial.
pub fn deg(a: &[u64]) -> isize {
    a.len() as isize - 1
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> PolyFp {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> PolyFp {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> PolyFp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> PolyFp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (PolyFp, PolyFp) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * lead_inv % p;
        q[i] = c;
        if c != 0 {
            for j in 0..=db {
                r[i + j] = (r[i + j] + p * p - c * b[j] % p) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> PolyFp {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> PolyFp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> PolyFp {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn derivative(a: &[u64], p: u64) -> PolyFp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

pub fn powmod(base: &[u64], e: &BigUint, modulus: &[u64], p: u64) -> PolyFp {
    let mut result: PolyFp = rem(&[1], modulus, p);
    let base = rem(base, modulus, p);
    for i in (0..e.bits()).rev() {
        result = rem(&mul(&result, &result, p), modulus, p);
        if e.bit(i) {
            result = rem(&mul(&result, &base, p), modulus, p);
        }
    }
    result
}

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// by coefficients read from the leading term down.
pub fn factor(poly: &[u64], p: u64) -> Vec<(PolyFp, usize)> {
    let f = monic(&trim(poly.to_vec()), p);
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    for (sqf, mult) in squarefree(&f, p) {
        for (d, part) in distinct_degree(&sqf, p) {
            for g in equal_degree(&part, d, p) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by_key(|(a, _)| sort_key(a));
    out
}

/// `(degree, coefficients high-degree-first)`.
pub fn sort_key(a: &[u64]) -> (usize, Vec<u64>) {
    (a.len(), a.iter().rev().copied().collect())
}

fn squarefree(f: &[u64], p: u64) -> Vec<(PolyFp, usize)> {
    let mut out = Vec::new();
    let df = derivative(f, p);
    if df.is_empty() {
        // f = h(X^p)
        let h: PolyFp = f.iter().step_by(p as usize).copied().collect();
        for (g, m) in squarefree(&h, p) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = gcd(f, &df, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        for (g, m) in squarefree(&c, p) {
            out.push((g, m));
        }
    }
    // merge equal factors that may arise from the recursive branch
    out.sort();
    out
}

fn distinct_degree(f: &[u64], p: u64) -> Vec<(usize, PolyFp)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: PolyFp = vec![0, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            out.push((f.len() - 1, f.clone()));
            break;
        }
        h = powmod(&h, &pb, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((d, g.clone()));
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    out
}

fn equal_degree(f: &[u64], d: usize, p: u64) -> Vec<PolyFp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ (n as u64) ^ ((d as u64) << 16));
    let q_d = BigUint::from(p).pow(d as u32);
    loop {
        let a: PolyFp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.clone();
            let mut t = a.clone();
            let two = BigUint::from(2u32);
            for _ in 1..d {
                t = powmod(&t, &two, f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            let e = (&q_d - BigUint::one()) / BigUint::from(2u32);
            sub(&powmod(&a, &e, f, p), &[1], p)
        };
        let g = gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p);
            out.extend(equal_degree(&h, d, p));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::cyclotomic_polynomial;

    fn product(fs: &[(PolyFp, usize)], p: u64) -> PolyFp {
        let mut acc = vec![1];
        for (g, m) in fs {
            for _ in 0..*m {
                acc = mul(&acc, g, p);
            }
        }
        acc
    }

    #[test]
    fn cyclotomic_factorizations() {
        let f = factor(&from_int_poly(&cyclotomic_polynomial(3), 2), 2);
        assert_eq!(f, vec![(vec![1, 1, 1], 1)]);
        let f = factor(&from_int_poly(&cyclotomic_polynomial(5), 2), 2);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].0.len(), 5);
        let f = factor(&from_int_poly(&cyclotomic_polynomial(8), 3), 3);
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(g, m)| g.len() == 3 && *m == 1));
        assert_eq!(product(&f, 3), from_int_poly(&cyclotomic_polynomial(8), 3));
    }

    #[test]
    fn repeated_factors() {
        // (X+1)^4 (X^2+X+1) over F_2
        let mut a = vec![1];
        for _ in 0..4 {
            a = mul(&a, &[1, 1], 2);
        }
        a = mul(&a, &[1, 1, 1], 2);
        let f = factor(&a, 2);
        assert_eq!(f, vec![(vec![1, 1], 4), (vec![1, 1, 1], 1)]);
    }

    #[test]
    fn factors_multiply_back() {
        for p in [2u64, 3, 5, 7] {
            for m in [7u64, 9, 15, 21, 24, 40] {
                let phi = from_int_poly(&cyclotomic_polynomial(m), p);
                if m % p == 0 {
                    continue;
                }
                let f = factor(&phi, p);
                assert_eq!(product(&f, p), phi, "p={p} m={m}");
                let deg0 = f[0].0.len() - 1;
                assert_eq!(deg0 as u64, crate::arith::mult_order(p, m));
            }
        }
    }
}
