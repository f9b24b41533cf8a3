//! Exact arithmetic in cyclotomic fields Q(ζ_m), dense in the power basis.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{euler_phi, gcd, parse_rat, rat, rat_to_string, Rational};
use crate::error::{bail, Error, Result};

/// Per-conductor data: Φ_m and the reductions of ζ^k for 0 ≤ k < m.
#[derive(Debug)]
pub struct CycloData {
    pub m: u64,
    pub phi: usize,
    /// Φ_m, ascending coefficients.
    pub poly: Vec<i64>,
    zeta_pows: Vec<Vec<i64>>,
}

impl CycloData {
    fn new(m: u64) -> Self {
        let poly = cyclotomic_polynomial(m);
        let phi = poly.len() - 1;
        let mut zeta_pows = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            zeta_pows.push(cur.clone());
            // multiply by X and reduce with the monic Φ_m
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
            if top != 0 {
                for (i, n) in next.iter_mut().enumerate() {
                    *n -= top * poly[i];
                }
            }
            cur = next;
        }
        CycloData { m, phi, poly, zeta_pows }
    }

    pub fn zeta_pow(&self, k: u64) -> &[i64] {
        &self.zeta_pows[(k % self.m) as usize]
    }
}

/// Shared, lazily built table for conductor `m`.
pub fn cyclo_data(m: u64) -> Arc<CycloData> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&m) {
        return d.clone();
    }
    let d = Arc::new(CycloData::new(m));
    cache.lock().unwrap().entry(m).or_insert(d).clone()
}

/// Φ_m with ascending integer coefficients, by dividing X^m − 1 by Φ_d for
/// the proper divisors d of m.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1);
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qn = num.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for j in 0..=dn {
                rem[i + j] -= c * den[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// An element Σ coeffs[i]·ζ_m^i of Q(ζ_m), reduced modulo Φ_m.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    m: u64,
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn zero(m: u64) -> Self {
        CycloNum { m, coeffs: vec![Rational::zero(); euler_phi(m) as usize] }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, rat(1))
    }

    pub fn from_rational(m: u64, q: Rational) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[0] = q;
        x
    }

    pub fn from_int(m: u64, n: i64) -> Self {
        Self::from_rational(m, rat(n))
    }

    /// ζ_m^k.
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        let data = cyclo_data(m);
        let k = k.rem_euclid(m as i64) as u64;
        CycloNum { m, coeffs: data.zeta_pow(k).iter().map(|&c| rat(c)).collect() }
    }

    pub fn from_coeffs(m: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if m == 0 {
            bail!(Input, "conductor must be positive");
        }
        let phi = euler_phi(m) as usize;
        if coeffs.len() != phi {
            bail!(Input, "expected {phi} coefficients for conductor {m}, got {}", coeffs.len());
        }
        Ok(CycloNum { m, coeffs })
    }

    /// Builds Σ c_k ζ^k from a coefficient vector of any length, reducing.
    pub fn from_exponent_coeffs(m: u64, by_exponent: &[Rational]) -> Self {
        let data = cyclo_data(m);
        let mut acc = vec![Rational::zero(); data.phi];
        for (k, c) in by_exponent.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            add_int_scaled(&mut acc, data.zeta_pow(k as u64), c);
        }
        CycloNum { m, coeffs: acc }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn check_same(&self, other: &CycloNum) {
        assert_eq!(self.m, other.m, "conductor mismatch; embed first");
    }

    pub fn scale(&self, q: &Rational) -> CycloNum {
        CycloNum { m: self.m, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn mul_zeta(&self, k: i64) -> CycloNum {
        let data = cyclo_data(self.m);
        let k = k.rem_euclid(self.m as i64) as u64;
        let mut acc = vec![Rational::zero(); data.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                add_int_scaled(&mut acc, data.zeta_pow(i as u64 + k), c);
            }
        }
        CycloNum { m: self.m, coeffs: acc }
    }

    pub fn inv(&self) -> Result<CycloNum> {
        if self.is_zero() {
            bail!(Arithmetic, "inverse of zero");
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.m, q.recip()));
        }
        // Solve y·x = 1 using the multiplication-by-x matrix.
        let phi = self.coeffs.len();
        let rows: Vec<Vec<Rational>> = (0..phi)
            .map(|i| self.mul_zeta(i as i64).coeffs)
            .collect();
        let mut target = vec![Rational::zero(); phi];
        target[0] = rat(1);
        let y = solve_left(&rows, &target).ok_or_else(|| Error::Internal("singular multiplication matrix".into()))?;
        Ok(CycloNum { m: self.m, coeffs: y })
    }

    pub fn pow(&self, mut e: u64) -> CycloNum {
        let mut base = self.clone();
        let mut acc = CycloNum::one(self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under ζ_d ↦ ζ_m^{m/d}.
    pub fn embed(&self, m: u64) -> Result<CycloNum> {
        if m == 0 || !m.is_multiple_of(self.m) {
            bail!(Input, "cannot embed conductor {} into {m}", self.m);
        }
        if m == self.m {
            return Ok(self.clone());
        }
        let data = cyclo_data(m);
        let step = m / self.m;
        let mut acc = vec![Rational::zero(); data.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                add_int_scaled(&mut acc, data.zeta_pow(i as u64 * step), c);
            }
        }
        Ok(CycloNum { m, coeffs: acc })
    }

    /// The automorphism ζ ↦ ζ^j.
    pub fn galois(&self, j: i64) -> Result<CycloNum> {
        let m = self.m as i64;
        let j = j.rem_euclid(m);
        if gcd(j as u64, self.m) != 1 {
            bail!(Input, "galois exponent {j} not coprime to {m}");
        }
        let data = cyclo_data(self.m);
        let mut acc = vec![Rational::zero(); data.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                add_int_scaled(&mut acc, data.zeta_pow((i as u64) * j as u64), c);
            }
        }
        Ok(CycloNum { m: self.m, coeffs: acc })
    }

    pub fn conj(&self) -> CycloNum {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Whether the element lies in Q(ζ_d), for d | m.
    pub fn lies_in(&self, d: u64) -> bool {
        if !self.m.is_multiple_of(d) {
            return false;
        }
        // Fixed by every σ_j with j ≡ 1 mod d.
        (1..self.m)
            .filter(|&j| j % d == 1 % d && gcd(j, self.m) == 1)
            .all(|j| self.galois(j as i64).unwrap() == *self)
    }

    /// Rewrites an element of Q(ζ_d) ⊆ Q(ζ_m) with conductor d.
    pub fn restrict(&self, d: u64) -> Result<CycloNum> {
        if !self.m.is_multiple_of(d) {
            bail!(Input, "{d} does not divide {}", self.m);
        }
        if d == self.m {
            return Ok(self.clone());
        }
        let phi_d = euler_phi(d) as usize;
        let basis: Vec<Vec<Rational>> = (0..phi_d)
            .map(|i| CycloNum::zeta_pow(d, i as i64).embed(self.m).unwrap().coeffs)
            .collect();
        match solve_left(&basis, &self.coeffs) {
            Some(c) => Ok(CycloNum { m: d, coeffs: c }),
            None => bail!(Domain, "element does not lie in Q(zeta_{d})"),
        }
    }

    /// Minimal polynomial over Q, monic, ascending coefficients.
    pub fn minimal_polynomial(&self) -> Vec<Rational> {
        let phi = self.coeffs.len();
        let mut powers: Vec<Vec<Rational>> = vec![CycloNum::one(self.m).coeffs];
        let mut cur = CycloNum::one(self.m);
        loop {
            cur = &cur * self;
            if let Some(c) = solve_left(&powers, &cur.coeffs) {
                let mut poly: Vec<Rational> = c.into_iter().map(|x| -x).collect();
                poly.push(rat(1));
                return poly;
            }
            powers.push(cur.coeffs.clone());
            assert!(powers.len() <= phi + 1);
        }
    }

    /// Lexicographic order on coefficient vectors; used for deterministic sorting.
    pub fn cmp_coeffs(&self, other: &CycloNum) -> std::cmp::Ordering {
        self.m.cmp(&other.m).then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Whether every coefficient is an integer (so the element lies in Z[ζ_m]).
    pub fn is_integral_basis_form(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

/// Smallest d | m with every value in Q(ζ_d).
pub fn value_conductor(values: &[CycloNum]) -> u64 {
    let Some(first) = values.first() else { return 1 };
    let m = first.m;
    (1..=m)
        .filter(|d| m % d == 0)
        .find(|&d| values.iter().all(|v| v.lies_in(d)))
        .unwrap_or(m)
}

fn add_int_scaled(acc: &mut [Rational], v: &[i64], c: &Rational) {
    for (a, &x) in acc.iter_mut().zip(v) {
        if x != 0 {
            *a += c * BigInt::from(x);
        }
    }
}

/// Solves `Σ_i y_i rows[i] = target` over Q; `None` when inconsistent.
pub(crate) fn solve_left(rows: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = rows.len();
    let n = target.len();
    // Columns of the system are the rows; eliminate on the transpose [R^T | t].
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut r: Vec<Rational> = rows.iter().map(|row| row[j].clone()).collect();
            r.push(target[j].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..k {
        let Some(piv) = (lead..n).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(lead, piv);
        let inv = a[lead][col].recip();
        for x in a[lead].iter_mut() {
            *x *= &inv;
        }
        let prow = a[lead].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != lead && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(col);
        lead += 1;
    }
    if a[lead..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut y = vec![Rational::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        y[c] = a[r][k].clone();
    }
    Some(y)
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        self.check_same(o);
        CycloNum { m: self.m, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        self.check_same(o);
        CycloNum { m: self.m, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { m: self.m, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        self.check_same(o);
        let data = cyclo_data(self.m);
        let m = self.m as usize;
        let mut by_exp = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    by_exp[(i + j) % m] += a * b;
                }
            }
        }
        let mut acc = vec![Rational::zero(); data.phi];
        for (k, c) in by_exp.iter().enumerate() {
            if !c.is_zero() {
                add_int_scaled(&mut acc, data.zeta_pow(k as u64), c);
            }
        }
        CycloNum { m: self.m, coeffs: acc }
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.is_integer() { c.numer().to_string() } else { format!("({c})") };
            terms.push(match i {
                0 => cs,
                1 => format!("{cs}*z{}", self.m),
                _ => format!("{cs}*z{}^{i}", self.m),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    m: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloJson { m: self.m, coeffs: self.coeffs.iter().map(rat_to_string).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CycloJson::deserialize(d)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CycloNum::from_coeffs(j.m, coeffs).map_err(serde::de::Error::custom)
    }
}

/// Absolute value of the largest coefficient numerator; a rough size measure.
pub fn height(x: &CycloNum) -> BigInt {
    x.coeffs.iter().map(|c| c.numer().abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
    }

    #[test]
    fn basic_identities() {
        let i = CycloNum::zeta_pow(4, 1);
        assert_eq!(&i * &i, CycloNum::from_int(4, -1));
        let z = CycloNum::zeta_pow(3, 1);
        let s = &(&CycloNum::one(3) + &z) + &(&z * &z);
        assert!(s.is_zero());
    }

    #[test]
    fn inverse_of_one_minus_zeta3() {
        let z = CycloNum::zeta_pow(3, 1);
        let x = &CycloNum::one(3) - &z;
        let inv = x.inv().unwrap();
        let expected = (&CycloNum::one(3) - &CycloNum::zeta_pow(3, 2)).scale(&rat_frac(1, 3));
        assert_eq!(inv, expected);
        assert!((&inv * &x).is_one());
        assert!(CycloNum::zero(3).inv().is_err());
    }

    #[test]
    fn embedding_and_galois() {
        let e = CycloNum::zeta_pow(2, 1).embed(4).unwrap();
        assert_eq!(e, CycloNum::from_int(4, -1));
        assert!(CycloNum::one(3).embed(4).is_err());
        let z = CycloNum::zeta_pow(3, 1);
        assert_eq!(z.galois(2).unwrap(), &CycloNum::from_int(3, -1) - &z);
        assert!(CycloNum::zeta_pow(4, 1).galois(2).is_err());
        let x = &z + &CycloNum::from_int(3, 2);
        let big = x.embed(12).unwrap();
        assert_eq!(big.minimal_polynomial(), x.minimal_polynomial());
        assert_eq!(big.restrict(3).unwrap(), x);
    }

    #[test]
    fn primitivity() {
        for m in [1u64, 2, 3, 4, 5, 8, 12] {
            let z = CycloNum::zeta_pow(m, 1);
            assert!(z.pow(m).is_one());
            for k in 1..m {
                assert!(!z.pow(k).is_one());
            }
        }
    }

    #[test]
    fn conductor_of_sqrt_minus_two() {
        // ζ8 + ζ8^3 = √−2
        let s = &CycloNum::zeta_pow(24, 3) + &CycloNum::zeta_pow(24, 9);
        assert_eq!(&s * &s, CycloNum::from_int(24, -2));
        assert_eq!(value_conductor(&[s]), 8);
        assert_eq!(value_conductor(&[CycloNum::from_int(24, 3)]), 1);
        // ζ3 lives in Q(ζ6) = Q(ζ3); smallest conductor is 3
        assert_eq!(value_conductor(&[CycloNum::zeta_pow(6, 2)]), 3);
    }

    #[test]
    fn json_round_trip() {
        let x = CycloNum::zeta_pow(5, 2).scale(&rat_frac(-3, 4));
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.contains("\"-3/4\""));
        let y: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
