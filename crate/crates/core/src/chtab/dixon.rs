//! Dixon's method: joint eigenvectors of the class matrices over F_ℓ give the
//! central characters mod ℓ; eigenvalue multiplicities lift the values to
//! Q(ζ_m).

use crate::arith::{is_prime, pow_mod, prime_factors};
use crate::cyclo::CycloNum;
use crate::error::{bail, Result};
use crate::fp::left_kernel;
use crate::grp::Group;

/// Class structure constants: `a[i][j][k]` counts x ∈ C_i, y ∈ C_j with
/// xy = rep(C_k).
pub fn class_constants(g: &Group) -> Vec<Vec<Vec<u64>>> {
    let k = g.num_classes();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (kk, ck) in g.classes.iter().enumerate() {
        let z = ck.representative;
        for (i, ci) in g.classes.iter().enumerate() {
            for &x in &ci.members {
                let y = g.mul(g.inv(x), z);
                a[i][g.class_of(y)][kk] += 1;
            }
        }
    }
    a
}

/// Smallest prime ℓ ≡ 1 (mod m) with ℓ > bound, strictly above `after`.
pub fn dixon_prime(m: u64, bound: f64, after: u64) -> u64 {
    let mut l = m + 1;
    while (l as f64) <= bound || l <= after || !is_prime(l) {
        l += m;
    }
    l
}

fn primitive_root(l: u64) -> u64 {
    let fs = prime_factors(l - 1);
    (2..l)
        .find(|&r| fs.iter().all(|&q| pow_mod(r, (l - 1) / q, l) != 1))
        .unwrap_or(1)
}

/// Joint right eigenvectors of the class matrices mod ℓ, each scaled so that
/// the identity-class entry is 1.
fn central_characters_mod(g: &Group, a: &[Vec<Vec<u64>>], l: u64) -> Result<Vec<Vec<u64>>> {
    let k = g.num_classes();
    let mut spaces: Vec<Vec<Vec<u64>>> =
        vec![(0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()];
    for (i, ai) in a.iter().enumerate() {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for w in spaces {
            if w.len() == 1 {
                next.push(w);
                continue;
            }
            // images N_i w for each basis vector w (N_i acts on columns)
            let images: Vec<Vec<u64>> = w
                .iter()
                .map(|v| (0..k).map(|j| (0..k).map(|kk| ai[j][kk] * v[kk] % l).sum::<u64>() % l).collect())
                .collect();
            let mut found = 0;
            for lambda in 0..l {
                if found == w.len() {
                    break;
                }
                let rows: Vec<Vec<u64>> = images
                    .iter()
                    .zip(&w)
                    .map(|(nv, v)| nv.iter().zip(v).map(|(x, y)| (x + l - lambda * y % l) % l).collect())
                    .collect();
                let ker = left_kernel(l, &rows);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u64; k];
                        for (cs, ws) in c.iter().zip(&w) {
                            for (o, x) in v.iter_mut().zip(ws) {
                                *o = (*o + cs * x) % l;
                            }
                        }
                        v
                    })
                    .collect();
                next.push(sub);
            }
            if found != w.len() {
                bail!(Internal, "class matrix {i} not diagonalizable mod {l}");
            }
        }
        spaces = next;
    }
    if spaces.len() != k {
        bail!(Internal, "joint eigenspaces did not split into lines mod {l}");
    }
    let mut out = Vec::with_capacity(k);
    for s in spaces {
        let v = &s[0];
        if v[0] == 0 {
            bail!(Internal, "eigenvector vanishes at the identity mod {l}");
        }
        let inv = pow_mod(v[0], l - 2, l);
        out.push(v.iter().map(|x| x * inv % l).collect());
    }
    Ok(out)
}

/// Candidate table for a fixed ℓ; values are unsorted and unverified.
pub fn dixon_attempt(g: &Group, a: &[Vec<Vec<u64>>], l: u64) -> Result<Vec<(u64, Vec<CycloNum>)>> {
    let m = g.exponent();
    let order = g.order() as u64;
    let k = g.num_classes();
    let omegas = central_characters_mod(g, a, l)?;
    let z = pow_mod(primitive_root(l), (l - 1) / m, l);
    let sizes: Vec<u64> = g.classes.iter().map(|c| c.size() as u64).collect();
    let inv_class: Vec<usize> = (0..k).map(|c| g.inverse_class(c)).collect();
    let mut out = Vec::with_capacity(k);
    for w in omegas {
        let mut s = 0u64;
        for j in 0..k {
            s = (s + w[j] * w[inv_class[j]] % l * pow_mod(sizes[j] % l, l - 2, l)) % l;
        }
        if s == 0 {
            bail!(Internal, "degenerate norm mod {l}");
        }
        let d2 = order % l * pow_mod(s, l - 2, l) % l;
        let Some(d) = (1..=((order as f64).sqrt() as u64 + 1)).find(|d| d * d % l == d2 && order.is_multiple_of(*d)) else {
            bail!(Internal, "no degree matches mod {l}");
        };
        let theta: Vec<u64> = (0..k).map(|j| w[j] * (d % l) % l * pow_mod(sizes[j] % l, l - 2, l) % l).collect();
        let mut values = Vec::with_capacity(k);
        for (j, cls) in g.classes.iter().enumerate() {
            let o = cls.element_order as u64;
            let zo = pow_mod(z, m / o, l);
            let o_inv = pow_mod(o % l, l - 2, l);
            let mut by_exp = vec![crate::arith::rat(0); m as usize];
            for kk in 0..o {
                let mut mu = 0u64;
                for t in 0..o {
                    let ct = g.power_map(j, t);
                    let e = (kk * t) % o;
                    mu = (mu + theta[ct] * pow_mod(zo, (o - e) % o, l)) % l;
                }
                mu = mu * o_inv % l;
                if mu > d {
                    bail!(Internal, "eigenvalue multiplicity {mu} exceeds degree {d} mod {l}");
                }
                by_exp[(kk * (m / o)) as usize] = crate::arith::rat(mu as i64);
            }
            values.push(CycloNum::from_exponent_coeffs(m, &by_exp));
        }
        out.push((d, values));
    }
    Ok(out)
}
