//! A fixed prime above p in Q(ζ_m): valuation and residue maps, computed in an
//! explicit model of the completion,
//! `S_N = GR(p^N, f)[π] / (Φ_{p^a}(1 + π))`.

pub mod poly_fp;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{euler_phi, inv_mod_big, mult_order, vp, vp_int, vp_u64, Rational};
use crate::cyclo::{cyclotomic_polynomial, CycloNum};
use crate::error::{bail, Result};

pub const DEFAULT_INITIAL_PRECISION: u32 = 4;

/// Element of F_{p^f} = F_p[Y]/(g), as `f` coefficients.
pub type ResidueElt = Vec<u64>;

/// The residue field F_p[Y]/(g).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    pub p: u64,
    /// Monic irreducible modulus, ascending.
    pub g: Vec<u64>,
}

impl ResidueField {
    pub fn degree(&self) -> usize {
        self.g.len() - 1
    }

    pub fn zero(&self) -> ResidueElt {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> ResidueElt {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> ResidueElt {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> ResidueElt {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> ResidueElt {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> ResidueElt {
        let prod = poly_fp::mul(&poly_fp::trim(a.to_vec()), &poly_fp::trim(b.to_vec()), self.p);
        self.pad(poly_fp::rem(&prod, &self.g, self.p))
    }

    fn pad(&self, mut v: Vec<u64>) -> ResidueElt {
        v.resize(self.degree(), 0);
        v
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> ResidueElt {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &[u64]) -> Result<ResidueElt> {
        if self.is_zero(a) {
            bail!(Arithmetic, "inverse of zero in the residue field");
        }
        let q = self.p.pow(self.degree() as u32);
        Ok(self.pow(a, q - 2))
    }

    /// The p-th power (Frobenius) map.
    pub fn frobenius(&self, a: &[u64]) -> ResidueElt {
        self.pow(a, self.p)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PrimeHeader {
    pub p: u64,
    pub m: u64,
    pub g: Vec<u64>,
    pub f: usize,
    pub e: usize,
}

/// The chosen prime above p in Q(ζ_m).
#[derive(Clone, Debug)]
pub struct LocalData {
    pub p: u64,
    pub m: u64,
    /// v_p(m).
    pub a: u32,
    pub m_prime: u64,
    /// Chosen factor of Φ_{m'} mod p, ascending and monic.
    pub g: Vec<u64>,
    pub f: usize,
    pub e: usize,
    /// Number of primes above p.
    pub r: usize,
    pub initial_precision: u32,
    pub precision_cap: u32,
    /// ζ_m = ζ_{p^a}^x · ζ_{m'}^y.
    bezout: (u64, u64),
    /// Φ_{p^a}(1 + π), ascending, monic of degree e.
    eisenstein: Vec<BigInt>,
    /// Integer lift of g.
    g_lift: Vec<BigInt>,
    images: Arc<Mutex<HashMap<u32, Arc<Vec<SElt>>>>>,
}

impl PartialEq for LocalData {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.m, &self.g) == (other.p, other.m, &other.g)
    }
}

/// Chooses the prime via the lexicographically least factor of Φ_{m'} mod p.
pub fn choose_prime(p: u64, m: u64) -> LocalData {
    assert!(crate::arith::is_prime(p) && m >= 1);
    let a = vp_u64(m, p);
    let pa = p.pow(a);
    let m_prime = m / pa;
    let factors = poly_fp::factor(&poly_fp::from_int_poly(&cyclotomic_polynomial(m_prime), p), p);
    let g = factors[0].0.clone();
    let f = g.len() - 1;
    let e = euler_phi(pa) as usize;
    let r = euler_phi(m) as usize / (e * f);
    debug_assert_eq!(f as u64, mult_order(p % m_prime.max(1), m_prime));
    let x = if pa == 1 { 0 } else { inv_mod_big(&BigInt::from(m_prime), &BigInt::from(pa)).unwrap().to_u64().unwrap() };
    let y = if m_prime == 1 { 0 } else { inv_mod_big(&BigInt::from(pa), &BigInt::from(m_prime)).unwrap().to_u64().unwrap() };
    let eisenstein = if a == 0 {
        vec![BigInt::from(-(p as i64)), BigInt::one()]
    } else {
        taylor_shift_one(&cyclotomic_polynomial(pa))
    };
    LocalData {
        p,
        m,
        a,
        m_prime,
        g_lift: g.iter().map(|&c| BigInt::from(c)).collect(),
        g,
        f,
        e,
        r,
        initial_precision: DEFAULT_INITIAL_PRECISION,
        precision_cap: (e as u32) * 32,
        bezout: (x, y),
        eisenstein,
        images: Arc::new(Mutex::new(HashMap::new())),
    }
}

/// P(X + 1) for an integer polynomial P.
fn taylor_shift_one(poly: &[i64]) -> Vec<BigInt> {
    let n = poly.len();
    let mut out = vec![BigInt::zero(); n];
    for (k, &c) in poly.iter().enumerate() {
        // (X+1)^k = Σ binom(k, j) X^j
        let mut b = BigInt::one();
        for j in 0..=k {
            out[j] += &b * c;
            b = b * (k - j) / (j + 1);
        }
    }
    out
}

/// Element of S_N: `e·f` coefficients, entry `i·f + j` multiplies `π^i Y^j`.
pub type SElt = Vec<BigInt>;

impl LocalData {
    /// Sets the precision cap from the p-part of the group order.
    pub fn for_group_order(mut self, order: u64) -> Self {
        self.precision_cap = self.e as u32 * (vp_u64(order, self.p) + 32);
        self
    }

    pub fn with_initial_precision(mut self, n0: u32) -> Self {
        self.initial_precision = n0.max(1);
        self
    }

    pub fn header(&self) -> PrimeHeader {
        PrimeHeader { p: self.p, m: self.m, g: self.g.clone(), f: self.f, e: self.e }
    }

    pub fn residue_field(&self) -> ResidueField {
        ResidueField { p: self.p, g: self.g.clone() }
    }

    fn modulus(&self, n: u32) -> BigInt {
        BigInt::from(self.p).pow(n)
    }

    // Galois ring GR(p^N, f) = (Z/p^N)[Y]/(g_lift).

    fn gr_mul(&self, a: &[BigInt], b: &[BigInt], md: &BigInt) -> Vec<BigInt> {
        let f = self.f;
        let mut prod = vec![BigInt::zero(); 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for k in (f..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if !c.is_zero() {
                for j in 0..f {
                    prod[k - f + j] -= &c * &self.g_lift[j];
                }
            }
        }
        prod.truncate(f);
        prod.iter().map(|x| x.mod_floor(md)).collect()
    }

    fn gr_one(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.f];
        v[0] = BigInt::one();
        v
    }

    fn gr_inv(&self, a: &[BigInt], n: u32, md: &BigInt) -> Result<Vec<BigInt>> {
        let field = self.residue_field();
        let ar: Vec<u64> = a.iter().map(|x| x.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()).collect();
        let u0 = field.inv(&ar)?;
        let mut u: Vec<BigInt> = u0.iter().map(|&x| BigInt::from(x)).collect();
        let two = {
            let mut t = self.gr_one();
            t[0] = BigInt::from(2);
            t
        };
        let mut prec = 1;
        while prec < n {
            let au = self.gr_mul(a, &u, md);
            let corr: Vec<BigInt> = two.iter().zip(&au).map(|(x, y)| (x - y).mod_floor(md)).collect();
            u = self.gr_mul(&u, &corr, md);
            prec *= 2;
        }
        Ok(u)
    }

    fn gr_eval_int_poly(&self, poly: &[i64], w: &[BigInt], md: &BigInt) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.f];
        for &c in poly.iter().rev() {
            acc = self.gr_mul(&acc, w, md);
            acc[0] = (&acc[0] + c).mod_floor(md);
        }
        acc
    }

    /// The Hensel lift ω ∈ GR(p^N, f) of the root Y of g, a root of Φ_{m'}.
    pub fn hensel_root(&self, n: u32) -> Result<Vec<BigInt>> {
        let md = self.modulus(n);
        let mut w = vec![BigInt::zero(); self.f];
        if self.f == 1 {
            // root of a linear g = Y + g0
            w[0] = BigInt::from((self.p - self.g[0]) % self.p);
        } else {
            w[1] = BigInt::one();
        }
        let phi = cyclotomic_polynomial(self.m_prime);
        let dphi: Vec<i64> = phi.iter().enumerate().skip(1).map(|(i, &c)| i as i64 * c).collect();
        let mut prec = 1;
        while prec < n {
            let val = self.gr_eval_int_poly(&phi, &w, &md);
            let der = self.gr_eval_int_poly(&dphi, &w, &md);
            let inv = self.gr_inv(&der, n, &md)?;
            let step = self.gr_mul(&val, &inv, &md);
            w = w.iter().zip(&step).map(|(x, y)| (x - y).mod_floor(&md)).collect();
            prec *= 2;
        }
        Ok(w)
    }

    fn s_mul(&self, a: &[BigInt], b: &[BigInt], md: &BigInt) -> SElt {
        let (e, f) = (self.e, self.f);
        let mut prod: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); f]; 2 * e - 1];
        for i in 0..e {
            let ai = &a[i * f..(i + 1) * f];
            if ai.iter().all(|x| x.is_zero()) {
                continue;
            }
            for j in 0..e {
                let bj = &b[j * f..(j + 1) * f];
                if bj.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let c = self.gr_mul(ai, bj, md);
                for (t, x) in prod[i + j].iter_mut().zip(c) {
                    *t += x;
                }
            }
        }
        for k in (e..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            for i in 0..e {
                let coef = &self.eisenstein[i];
                if coef.is_zero() {
                    continue;
                }
                for (t, x) in prod[k - e + i].iter_mut().zip(&c) {
                    *t -= x * coef;
                }
            }
        }
        prod.truncate(e);
        prod.into_iter().flatten().map(|x| x.mod_floor(md)).collect()
    }

    fn s_one(&self) -> SElt {
        let mut v = vec![BigInt::zero(); self.e * self.f];
        v[0] = BigInt::one();
        v
    }

    fn s_pow(&self, a: &[BigInt], mut k: u64, md: &BigInt) -> SElt {
        let mut base = a.to_vec();
        let mut acc = self.s_one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.s_mul(&acc, &base, md);
            }
            base = self.s_mul(&base, &base, md);
            k >>= 1;
        }
        acc
    }

    /// Images of ζ_m^k for 0 ≤ k < m in S_N.
    fn zeta_images(&self, n: u32) -> Result<Arc<Vec<SElt>>> {
        if let Some(v) = self.images.lock().unwrap().get(&n) {
            return Ok(v.clone());
        }
        let md = self.modulus(n);
        let f = self.f;
        let mut one_plus_pi = self.s_one();
        if self.e > 1 {
            one_plus_pi[f] = BigInt::one();
        }
        let mut omega = vec![BigInt::zero(); self.e * f];
        let w = self.hensel_root(n)?;
        omega[..f].clone_from_slice(&w);
        let (x, y) = self.bezout;
        let z = self.s_mul(&self.s_pow(&one_plus_pi, x, &md), &self.s_pow(&omega, y, &md), &md);
        let mut out = Vec::with_capacity(self.m as usize);
        let mut cur = self.s_one();
        for _ in 0..self.m {
            out.push(cur.clone());
            cur = self.s_mul(&cur, &z, &md);
        }
        let out = Arc::new(out);
        self.images.lock().unwrap().entry(n).or_insert(out.clone());
        Ok(out)
    }

    fn lift_to_m(&self, x: &CycloNum) -> Result<CycloNum> {
        if !self.m.is_multiple_of(x.conductor()) {
            bail!(Input, "conductor {} does not divide {}", x.conductor(), self.m);
        }
        x.embed(self.m)
    }

    /// Image of `x` in S_N. Denominators must be prime to p.
    pub fn completion_image(&self, x: &CycloNum, n: u32) -> Result<SElt> {
        let x = self.lift_to_m(x)?;
        let md = self.modulus(n);
        let imgs = self.zeta_images(n)?;
        let mut acc = vec![BigInt::zero(); self.e * self.f];
        for (k, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let Some(dinv) = inv_mod_big(c.denom(), &md) else {
                bail!(Input, "coefficient {c} has p in its denominator");
            };
            let cm = (c.numer() * dinv).mod_floor(&md);
            for (t, s) in acc.iter_mut().zip(imgs[k].iter()) {
                *t += &cm * s;
            }
        }
        Ok(acc.into_iter().map(|t| t.mod_floor(&md)).collect())
    }

    /// Valuation read termwise from an image; `None` when the image is zero.
    fn image_valuation(&self, img: &[BigInt]) -> Option<i64> {
        let mut best: Option<i64> = None;
        for i in 0..self.e {
            for c in &img[i * self.f..(i + 1) * self.f] {
                if let Some(v) = vp_int(c, self.p) {
                    let w = self.e as i64 * v + i as i64;
                    best = Some(best.map_or(w, |b| b.min(w)));
                }
            }
        }
        best
    }

    /// The power of p clearing p from all denominators.
    fn denominator_shift(&self, x: &CycloNum) -> i64 {
        x.coeffs()
            .iter()
            .filter_map(|c| vp(c, self.p))
            .map(|v| -v)
            .max()
            .unwrap_or(0)
            .max(0)
    }

    /// Normalized valuation (v(π) = 1, v(p) = e); `None` for zero.
    pub fn valuation(&self, x: &CycloNum) -> Result<Option<i64>> {
        if x.is_zero() {
            return Ok(None);
        }
        let t = self.denominator_shift(x);
        let y = x.scale(&Rational::from_integer(BigInt::from(self.p).pow(t as u32)));
        let mut n = self.initial_precision.max(t as u32 + 1);
        loop {
            if n > self.precision_cap {
                bail!(Precision, "valuation of {x} not certified below precision {}", self.precision_cap);
            }
            let img = self.completion_image(&y, n)?;
            if let Some(v) = self.image_valuation(&img) {
                if v < self.e as i64 * n as i64 {
                    return Ok(Some(v - t * self.e as i64));
                }
            }
            n *= 2;
        }
    }

    /// Valuation of an element of Q(ζ_d), d | m, normalized for the prime
    /// below in Q(ζ_d) (so v(p) = φ(p^{v_p(d)})).
    pub fn valuation_in_subfield(&self, x: &CycloNum) -> Result<Option<i64>> {
        let d = x.conductor();
        let e_d = euler_phi(self.p.pow(vp_u64(d, self.p))) as i64;
        let ratio = self.e as i64 / e_d;
        Ok(self.valuation(x)?.map(|v| {
            debug_assert_eq!(v % ratio, 0);
            v / ratio
        }))
    }

    /// Image in the residue field F_p[Y]/(g).
    pub fn residue(&self, x: &CycloNum) -> Result<ResidueElt> {
        let Some(v) = self.valuation(x)? else {
            return Ok(vec![0; self.f]);
        };
        if v < 0 {
            bail!(Domain, "residue of an element of valuation {v}");
        }
        let t = self.denominator_shift(x);
        let pt = BigInt::from(self.p).pow(t as u32);
        let y = x.scale(&Rational::from_integer(pt.clone()));
        let img = self.completion_image(&y, t as u32 + 1)?;
        let pb = BigInt::from(self.p);
        Ok(img[..self.f]
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&pt);
                debug_assert!(r.is_zero());
                q.mod_floor(&pb).to_u64().unwrap()
            })
            .collect())
    }

    /// Residue of a p-integral rational.
    pub fn residue_rational(&self, q: &Rational) -> Result<ResidueElt> {
        let mut v = vec![0u64; self.f];
        v[0] = crate::arith::residue(q, self.p)?;
        Ok(v)
    }

    /// Residue of ζ_m^k, as an element of F_{p^f}.
    pub fn residue_of_zeta_pow(&self, k: u64) -> ResidueElt {
        let field = self.residue_field();
        let root = if self.f == 1 {
            field.from_int(-(self.g[0] as i64))
        } else {
            let mut r = field.zero();
            r[1] = 1;
            r
        };
        field.pow(&root, (self.bezout.1 * (k % self.m)) % self.m_prime.max(1))
    }
}

/// Valuation of a rational in the normalization v(p) = e.
/// Irreducible factors of an integer polynomial over F_p, with multiplicities.
pub fn factor_mod_p(poly: &[i64], p: u64) -> Vec<(poly_fp::PolyFp, usize)> {
    poly_fp::factor(&poly_fp::from_int_poly(poly, p), p)
}

pub fn rational_valuation(q: &Rational, ld: &LocalData) -> Option<i64> {
    vp(q, ld.p).map(|v| v * ld.e as i64)
}

/// Root of g in F_p when f = 1.
pub fn linear_root(ld: &LocalData) -> Option<u64> {
    (ld.f == 1).then(|| (ld.p - ld.g[0]) % ld.p)
}
