//! Exact rationals viewed p-adically, and residue arithmetic modulo `p^e`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Rational;

/// Largest exponent any congruence in this crate is checked to.
pub const MAX_EXP: u32 = 4;

/// Parses `"num/den"` or `"int"` (base 10, optional leading minus).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(s.to_string());
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |t: &str| -> Result<BigInt> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (digits(n)?, digits(d)?),
        None => (digits(body)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(bad());
    }
    let num = if neg { -num } else { num };
    Ok(Rational::new(num, den))
}

/// Formats a rational the way [`parse_rational`] reads it.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// True iff `p` does not divide the (reduced) denominator of `x`.
pub fn is_padic_integral(x: &Rational, p: u64) -> bool {
    !(x.denom() % p).is_zero()
}

/// Trial-division primality; the primes handled here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic in `Z / p^e Z`.
///
/// Elements are plain `u64` values in `[0, p^e)`; products go through `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModRing {
    p: u64,
    exp: u32,
    modulus: u64,
}

impl ModRing {
    pub fn new(p: u64, exp: u32) -> Result<Self> {
        if !(1..=MAX_EXP).contains(&exp) {
            return Err(Error::ExponentOutOfRange(exp));
        }
        if !is_prime(p) {
            return Err(Error::PreconditionViolated(format!("{p} is not prime")));
        }
        let modulus = p
            .checked_pow(exp)
            .ok_or_else(|| Error::PreconditionViolated(format!("{p}^{exp} overflows u64")))?;
        Ok(Self { p, exp, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("reduced value fits the modulus")
    }

    /// Inverse by the extended Euclidean algorithm on the full modulus.
    pub fn inv(&self, a: u64) -> Result<u64> {
        let (mut r0, mut r1) = (self.modulus as i128, (a % self.modulus) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if r0 != 1 {
            return Err(Error::InverseMissing {
                value: a.to_string(),
                modulus: self.modulus,
            });
        }
        Ok(s0.rem_euclid(self.modulus as i128) as u64)
    }

    /// Image of a p-integral rational.
    pub fn lift(&self, x: &Rational) -> Result<u64> {
        if !is_padic_integral(x, self.p) {
            return Err(Error::NotPAdicIntegral {
                value: format_rational(x),
                p: self.p,
            });
        }
        let num = self.from_bigint(x.numer());
        let den = self.from_bigint(x.denom());
        Ok(self.mul(num, self.inv(den)?))
    }

    pub fn residue(&self, value: u64) -> ResidueClass {
        ResidueClass {
            value: value % self.modulus,
            modulus: self.modulus,
            p: self.p,
            exp: self.exp,
        }
    }
}

/// An integer class modulo `p^e`, stored as its least non-negative member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueClass {
    pub value: u64,
    pub modulus: u64,
    pub p: u64,
    pub exp: u32,
}

impl ResidueClass {
    /// Re-reduces to a smaller exponent.
    pub fn weaken(&self, exp: u32) -> ResidueClass {
        assert!(exp >= 1 && exp <= self.exp, "can only weaken to a smaller exponent");
        let modulus = self.p.pow(exp);
        ResidueClass {
            value: self.value % modulus,
            modulus,
            p: self.p,
            exp,
        }
    }

    /// `"p^e"` descriptor used in reports.
    pub fn modulus_label(&self) -> String {
        format!("{}^{}", self.p, self.exp)
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.value, self.p, self.exp)
    }
}

/// `x mod p^e` for a rational with `p` not dividing its denominator.
pub fn reduce_mod(x: &Rational, p: u64, exp: u32) -> Result<ResidueClass> {
    let ring = ModRing::new(p, exp)?;
    Ok(ring.residue(ring.lift(x)?))
}

/// `<x>_p`, the least non-negative residue of `x` modulo `p`.
pub fn least_nonneg_residue(alpha: &Rational, p: u64) -> Result<u64> {
    Ok(reduce_mod(alpha, p, 1)?.value)
}

/// The triple `(alpha, a, t)` with `a = <-alpha>_p` and `alpha + a = p t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaDecomposition {
    pub alpha: Rational,
    pub p: u64,
    pub a: u64,
    pub t: Rational,
}

pub fn decompose(alpha: &Rational, p: u64) -> Result<AlphaDecomposition> {
    let a = least_nonneg_residue(&-alpha.clone(), p)?;
    let t = (alpha + Rational::from_integer(BigInt::from(a))) / Rational::from_integer(BigInt::from(p));
    debug_assert!(is_padic_integral(&t, p));
    Ok(AlphaDecomposition {
        alpha: alpha.clone(),
        p,
        a,
        t,
    })
}

/// Legendre symbol `(a / p)` by Euler's criterion.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let ring = ModRing::new(p, 1)?;
    let r = ring.from_bigint(a);
    if r == 0 {
        return Ok(0);
    }
    Ok(if ring.pow(r, (p - 1) / 2) == 1 { 1 } else { -1 })
}

/// `(-1)^e` as an `i64`, computed from the parity of `e`.
pub fn parity_sign(e: u64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exact `p`-adic valuation of a nonzero integer.
pub fn valuation(v: &BigInt, p: u64) -> Option<u32> {
    if v.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = v.abs();
    let mut k = 0;
    loop {
        let (q, r) = v.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        v = q;
        k += 1;
    }
}

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent inverse: brute-force search.
    fn brute_inverse(a: u64, m: u64) -> u64 {
        (1..m).find(|x| (a * x) % m == 1).unwrap()
    }

    #[test]
    fn reduce_mod_examples() {
        assert_eq!(reduce_mod(&int(0), 5, 4).unwrap().value, 0);
        assert_eq!(reduce_mod(&int(0), 5, 4).unwrap().modulus, 625);
        assert_eq!(brute_inverse(3, 7), 5);
        assert_eq!(reduce_mod(&rat(-1, 3), 7, 1).unwrap().value, 2);
        assert_eq!(brute_inverse(2, 9), 5);
        assert_eq!(reduce_mod(&rat(1, 2), 3, 2).unwrap().value, 5);
    }

    #[test]
    fn reduce_mod_rejects_p_in_denominator() {
        assert!(matches!(
            reduce_mod(&rat(1, 10), 5, 2),
            Err(Error::NotPAdicIntegral { p: 5, .. })
        ));
        assert!(matches!(reduce_mod(&rat(1, 2), 5, 5), Err(Error::ExponentOutOfRange(5))));
        assert!(matches!(reduce_mod(&rat(1, 2), 9, 1), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn least_residue_examples() {
        assert_eq!(least_nonneg_residue(&int(0), 11).unwrap(), 0);
        assert_eq!(least_nonneg_residue(&rat(-1, 3), 7).unwrap(), (7 - 1) / 3);
        assert_eq!(least_nonneg_residue(&rat(-1, 4), 13).unwrap(), 3);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&rat(1, 3), 7).unwrap();
        assert_eq!((d.a, d.t.clone()), (2, rat(1, 3)));
        let d = decompose(&rat(-1, 2), 5).unwrap();
        assert_eq!((d.a, d.t.clone()), (3, rat(1, 2)));
        for p in [5, 7, 101] {
            let d = decompose(&int(1), p).unwrap();
            assert_eq!((d.a, d.t), (p - 1, int(1)));
        }
        assert!(decompose(&rat(1, 7), 7).is_err());
    }

    fn squares(p: u64) -> Vec<u64> {
        (1..p).map(|x| x * x % p).collect()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&BigInt::from(1), 101).unwrap(), 1);
        assert!(!squares(13).contains(&11));
        assert_eq!(legendre(&BigInt::from(-2), 13).unwrap(), -1);
        assert!(squares(17).contains(&15));
        assert_eq!(legendre(&BigInt::from(-2), 17).unwrap(), 1);
        assert_eq!(legendre(&BigInt::from(26), 13).unwrap(), 0);
        assert!(matches!(legendre(&BigInt::from(3), 2), Err(Error::NotOddPrime(2))));
        assert!(matches!(legendre(&BigInt::from(3), 15), Err(Error::NotOddPrime(15))));
    }

    #[test]
    fn legendre_minus_two_quartic_sign() {
        for p in (5..=2000).filter(|&p| is_prime(p) && p % 4 == 1) {
            assert_eq!(
                legendre(&BigInt::from(-2), p).unwrap() as i64,
                parity_sign((p - 1) / 4),
                "p = {p}"
            );
        }
    }

    #[test]
    fn legendre_matches_square_enumeration() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let sq = squares(p);
            for a in 1..p {
                let expect = if sq.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre(&BigInt::from(a), p).unwrap(), expect);
            }
        }
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_rational("-1/3").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("17").unwrap(), int(17));
        assert_eq!(parse_rational("-0").unwrap(), int(0));
        for bad in ["", "1/0", "a", "1/-3", "--1", "1/", "/2", "+3", "1.5"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn valuation_counts_factors() {
        assert_eq!(valuation(&BigInt::from(-250), 5), Some(3));
        assert_eq!(valuation(&BigInt::from(7), 5), Some(0));
        assert_eq!(valuation(&BigInt::from(0), 5), None);
    }

    fn small_prime() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![5u64, 7, 11, 13, 97, 499, 1999])
    }

    proptest! {
        #[test]
        fn reduction_is_compatible_across_exponents(
            n in -10_000i64..10_000, d in 1i64..10_000, p in small_prime(), e1 in 1u32..=4, e2 in 1u32..=4,
        ) {
            let x = rat(n, d);
            prop_assume!(is_padic_integral(&x, p));
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            let a = reduce_mod(&x, p, lo).unwrap();
            let b = reduce_mod(&x, p, hi).unwrap();
            prop_assert_eq!(b.weaken(lo), a);
            // den * value == num mod p^e
            let ring = ModRing::new(p, hi).unwrap();
            prop_assert_eq!(ring.mul(ring.from_bigint(x.denom()), b.value), ring.from_bigint(x.numer()));
        }

        #[test]
        fn decompose_round_trips(n in -500i64..500, d in 1i64..50, p in small_prime()) {
            let x = rat(n, d);
            prop_assume!(is_padic_integral(&x, p));
            let dec = decompose(&x, p).unwrap();
            prop_assert!(dec.a < p);
            let back = &dec.alpha + int(dec.a as i64) - int(p as i64) * &dec.t;
            prop_assert!(back.is_zero());
            prop_assert!(is_padic_integral(&dec.t, p));
        }

        #[test]
        fn legendre_multiplicative_and_periodic(a in -1000i64..1000, b in -1000i64..1000, p in small_prime()) {
            let l = |v: i64| legendre(&BigInt::from(v), p).unwrap();
            prop_assert_eq!(l(a) * l(b), l(a * b));
            prop_assert_eq!(l(a + p as i64), l(a));
        }
    }
}
