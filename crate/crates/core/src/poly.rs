//! Dense univariate polynomials over a [`Scalar`] coefficient ring.
//!
//! `coeffs[i]` is the coefficient of `q^i`; the vector never carries trailing
//! zeros, so the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c q^deg`.
    pub fn monomial(c: T, deg: usize) -> Self {
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    /// `c_0 + c_1 q + ...` from machine integers.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x + c)
    }

    /// `p(q) -> p(a + b q)`, expanded.
    pub fn compose_linear(&self, a: &T, b: &T) -> Self {
        let lin = Self::new(vec![a.clone(), b.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &lin) + &Self::constant(c.clone()))
    }

    /// Quotient and remainder when every leading-coefficient division is exact
    /// in `T` (always over a field; over `Z` e.g. for monic divisors).
    pub fn div_rem_exact(&self, divisor: &Self) -> Result<(Self, Self)> {
        let db = divisor.degree().ok_or(Error::ZeroModulus)?;
        let lb = divisor.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            let lr = std::mem::replace(&mut rem[i], T::zero());
            if lr.is_zero() {
                continue;
            }
            let q = lr.clone() / &lb;
            if q.clone() * &lb != lr {
                return Err(Error::InternalNonExactDivision);
            }
            let off = i - db;
            for (j, b) in divisor.coeffs[..db].iter().enumerate() {
                rem[off + j] -= q.clone() * b;
            }
            quot[off] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; fails unless `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem_exact(divisor)?;
        if !r.is_zero() {
            return Err(Error::InternalNonExactDivision);
        }
        Ok(q)
    }

    /// Pseudo-remainder `lc(B)^(deg A - deg B + 1) A mod B`, computed without
    /// any coefficient division.
    pub fn pseudo_rem(&self, divisor: &Self) -> Result<Self> {
        let db = divisor.degree().ok_or(Error::ZeroModulus)?;
        let lb = divisor.leading().expect("nonzero").clone();
        let Some(da) = self.degree() else {
            return Ok(Self::zero());
        };
        if da < db {
            return Ok(self.clone());
        }
        let mut steps_left = da - db + 1;
        let mut rem = self.coeffs.clone();
        while rem.len() > db {
            let lr = rem.pop().expect("len > db >= 0");
            let off = rem.len() - db;
            for c in rem.iter_mut() {
                *c *= &lb;
            }
            for (j, b) in divisor.coeffs[..db].iter().enumerate() {
                rem[off + j] -= lr.clone() * b;
            }
            steps_left -= 1;
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        let mut f = T::one();
        for _ in 0..steps_left {
            f *= &lb;
        }
        Ok(Self::new(rem).scale(&f))
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), T::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a.clone() * b;
                }
            }
        }
        Poly::new(coeffs)
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly<BigInt> {
    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| if g.is_one() { g } else { g.gcd(c) })
    }

    /// `self / content`, sign-normalised to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().expect("nonzero").is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Gcd over `Q[q]` normalised to a primitive integer polynomial with
    /// positive leading coefficient, via the primitive remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            if b.is_constant() {
                return Self::one();
            }
            let r = a.pseudo_rem(&b).expect("b is nonzero");
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// True iff `divisor` divides `self` in `Q[q]`.
    pub fn divisible_by(&self, divisor: &Self) -> Result<bool> {
        Ok(self.pseudo_rem(divisor)?.is_zero())
    }

    /// Exact quotient in `Z[q]` by a divisor known to divide `self` over `Q`.
    ///
    /// Dividing out the divisor's content first keeps every step integral
    /// when the primitive part divides exactly (Gauss's lemma).
    pub fn div_exact_over_q(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let c = divisor.content();
        let pp = Self::new(divisor.coeffs.iter().map(|x| x / &c).collect());
        let q = self.div_exact(&pp)?;
        let qc = q.content();
        if !(qc.clone() % &c).is_zero() {
            return Err(Error::InternalNonExactDivision);
        }
        Ok(Self::new(q.coeffs.iter().map(|x| x / &c).collect()))
    }

    /// `"c0,c1,...,cd"`, lowest degree first; `"0"` for the zero polynomial.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let coeffs = s
            .trim()
            .split(',')
            .map(|t| {
                let t = t.trim();
                let body = t.strip_prefix('-').unwrap_or(t);
                if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(s.to_string()));
                }
                t.parse::<BigInt>().map_err(|_| Error::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}
