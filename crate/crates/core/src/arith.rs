//! Small exact-arithmetic helpers shared by every module: p-adic valuations of
//! rationals, residues, canonical rational strings and prime utilities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{bail, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn vp_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

pub fn vp_u64(mut n: u64, p: u64) -> u32 {
    assert!(n > 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// p-adic valuation of a rational; `None` for zero.
pub fn vp(q: &Rational, p: u64) -> Option<i64> {
    let vn = vp_int(q.numer(), p)?;
    let vd = vp_int(q.denom(), p).unwrap_or(0);
    Some(vn - vd)
}

/// Strips every factor of p from a nonzero integer.
pub fn p_free_part(n: &BigInt, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    if n.is_zero() {
        return n;
    }
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return n;
        }
        n = q;
    }
}

pub fn pow_rat(p: u64, e: i64) -> Rational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

/// Residue in F_p of a p-integral rational.
pub fn residue(q: &Rational, p: u64) -> Result<u64> {
    if let Some(v) = vp(q, p) {
        if v < 0 {
            bail!(Domain, "residue of {q} at p={p}: negative valuation");
        }
    } else {
        return Ok(0);
    }
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb).to_u64().unwrap();
    let d = q.denom().mod_floor(&pb).to_u64().unwrap();
    Ok(n * inv_mod(d, p) % p)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime; panics on zero.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let a = a % p;
    assert!(a != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Inverse of `a` modulo an arbitrary modulus, when it exists.
pub fn inv_mod_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n0 = n;
    let mut result = n;
    let mut d = 2;
    while d * d <= n0 {
        if n0.is_multiple_of(d) {
            while n0.is_multiple_of(d) {
                n0 /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n0 > 1 {
        result -= result / n0;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo `n` (gcd(a, n) = 1, n >= 1).
pub fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut k = 1;
    let mut x = a % n;
    while x != 1 {
        x = x * (a % n) % n;
        k += 1;
    }
    k
}

/// Canonical "a/b" form with b > 0 and gcd(a, b) = 1.
pub fn rat_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rat(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| crate::error::Error::Input(format!("bad rational {s:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| crate::error::Error::Input(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        bail!(Input, "zero denominator in {s:?}");
    }
    Ok(Rational::new(n, d))
}

/// Scales a rational vector by a p-adic unit so that it becomes p^t times a
/// primitive integer vector. The Z_(p)-span of the vector is unchanged.
pub fn strip_unit_content(v: &mut [Rational], p: u64) {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for x in v.iter() {
        if !x.is_zero() {
            num_gcd = num_gcd.gcd(x.numer());
            den_lcm = den_lcm.lcm(x.denom());
        }
    }
    if num_gcd.is_zero() {
        return;
    }
    let unit = Rational::new(p_free_part(&num_gcd, p), p_free_part(&den_lcm, p));
    if unit.is_one() {
        return;
    }
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x / &unit;
        }
    }
}

/// Writes `q = p^v * u` and returns `(v, u)` with `u` a p-adic unit.
pub fn split_unit(q: &Rational, p: u64) -> Option<(i64, Rational)> {
    let v = vp(q, p)?;
    Some((v, q / pow_rat(p, v)))
}

pub fn is_p_integral(q: &Rational, p: u64) -> bool {
    vp(q, p).is_none_or(|v| v >= 0)
}



#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_of_rationals() {
        assert_eq!(vp(&rat_frac(12, 5), 2), Some(2));
        assert_eq!(vp(&rat_frac(3, 8), 2), Some(-3));
        assert_eq!(vp(&rat(0), 2), None);
    }

    #[test]
    fn residue_of_fraction() {
        // 1/3 mod 2 = 1, 2/3 mod 5 = 4
        assert_eq!(residue(&rat_frac(1, 3), 2).unwrap(), 1);
        assert_eq!(residue(&rat_frac(2, 3), 5).unwrap(), 4);
        assert!(residue(&rat_frac(1, 2), 2).is_err());
    }

    #[test]
    fn rational_strings_round_trip() {
        let q = rat_frac(-6, 4);
        assert_eq!(rat_to_string(&q), "-3/2");
        assert_eq!(parse_rat("-3/2").unwrap(), q);
        assert_eq!(parse_rat("7").unwrap(), rat(7));
    }

    #[test]
    fn unit_content_keeps_p_part() {
        let mut v = vec![rat_frac(6, 5), rat_frac(9, 5)];
        strip_unit_content(&mut v, 3);
        assert_eq!(v, vec![rat(6), rat(9)]);
        let mut w = vec![rat_frac(3, 4), rat_frac(9, 2)];
        strip_unit_content(&mut w, 2);
        assert_eq!(w, vec![rat_frac(1, 4), rat_frac(3, 2)]);
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(mult_order(2, 3), 2);
        assert_eq!(mult_order(2, 5), 4);
        assert_eq!(prime_factors(60), vec![2, 3, 5]);
    }
}
