//! Pochhammer symbols, harmonic numbers, Euler numbers and Euler polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::{int, rat, reduce_mod, ModRing, ResidueClass};
use crate::scalar::{sign, Scalar};
use crate::{RatPoly, Rational};

/// Rising factorial `(alpha)_k = alpha (alpha+1) ... (alpha+k-1)`.
pub fn pochhammer<T: Scalar>(alpha: &T, k: u64) -> T {
    let mut acc = T::one();
    let mut factor = alpha.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += T::one();
    }
    acc
}

/// `(alpha)_k mod p^e`, accumulated factor by factor in residue arithmetic.
pub fn pochhammer_mod(alpha: &Rational, k: u64, p: u64, exp: u32) -> Result<ResidueClass> {
    let ring = ModRing::new(p, exp)?;
    let a = ring.lift(alpha)?;
    let mut acc = 1 % ring.modulus();
    for j in 0..k {
        acc = ring.mul(acc, ring.add(a, j % ring.modulus()));
    }
    Ok(ring.residue(acc))
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, j| acc * (n - j) / (j + 1))
}

/// `H_n^(m) = sum_{k=1}^n 1/k^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicValue {
    pub n: u64,
    pub m: u32,
    pub value: Rational,
}

/// Exact harmonic number over the common denominator `lcm(1..n)^m`, with a
/// single normalisation at the end.
pub fn harmonic(n: u64, m: u32) -> HarmonicValue {
    assert!(m >= 1, "harmonic numbers need order m >= 1");
    let lcm = (1..=n).fold(BigInt::one(), |l, k| l.lcm(&BigInt::from(k)));
    let num = (1..=n).fold(BigInt::zero(), |acc, k| acc + num_traits::pow(&lcm / k, m as usize));
    HarmonicValue {
        n,
        m,
        value: Rational::new(num, num_traits::pow(lcm, m as usize)),
    }
}

/// `sum_{k=1}^n (-1)^k / k^m`, exact.
pub fn alternating_harmonic(n: u64, m: u32) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, k| {
        acc + Rational::new(sign::<BigInt>(k), BigInt::from(k).pow(m))
    })
}

/// Exact Euler polynomials `E_0(x), ..., E_n(x)`.
#[derive(Debug, Clone)]
pub struct EulerPolyTable {
    pub max_index: usize,
    pub rows: Vec<RatPoly>,
}

impl EulerPolyTable {
    /// Builds the rows from `E_m(x) = x^m - (1/2) sum_{k<m} C(m,k) E_k(x)`,
    /// which is the generating function `2 e^{xt} / (e^t + 1)` read off
    /// coefficient by coefficient.
    pub fn new(max_index: usize) -> Self {
        let half = rat(1, 2);
        let mut rows: Vec<RatPoly> = Vec::with_capacity(max_index + 1);
        for m in 0..=max_index {
            let mut row = RatPoly::monomial(Rational::one(), m);
            for (k, prev) in rows.iter().enumerate() {
                let c = Rational::from_integer(binomial(m as u64, k as u64)) * &half;
                row = &row - &prev.scale(&c);
            }
            rows.push(row);
        }
        Self { max_index, rows }
    }

    pub fn poly(&self, n: usize) -> &RatPoly {
        &self.rows[n]
    }

    pub fn eval(&self, n: usize, x: &Rational) -> Rational {
        self.rows[n].eval(x)
    }

    /// Euler number `E_n = 2^n E_n(1/2)`.
    pub fn euler_number(&self, n: usize) -> BigInt {
        let v = self.eval(n, &rat(1, 2)) * Rational::from_integer(BigInt::from(2).pow(n as u32));
        assert!(v.is_integer(), "Euler numbers are integers");
        v.to_integer()
    }
}

/// Euler-polynomial values `E_0(x), ..., E_n(x)` in `Z/pZ` by the same
/// recurrence, with binomials carried along as a Pascal row mod `p`.
fn euler_values_mod(n: u64, x: u64, ring: &ModRing) -> Result<Vec<u64>> {
    let inv2 = ring.inv(2)?;
    let mut values: Vec<u64> = Vec::with_capacity(n as usize + 1);
    let mut pascal: Vec<u64> = vec![1 % ring.modulus()];
    let mut x_pow = 1 % ring.modulus();
    for m in 0..=n {
        if m > 0 {
            let mut next = Vec::with_capacity(pascal.len() + 1);
            next.push(1 % ring.modulus());
            for w in pascal.windows(2) {
                next.push(ring.add(w[0], w[1]));
            }
            next.push(1 % ring.modulus());
            pascal = next;
            x_pow = ring.mul(x_pow, x);
        }
        let acc = values
            .iter()
            .zip(&pascal)
            .fold(0, |acc, (&e, &c)| ring.add(acc, ring.mul(c, e)));
        values.push(ring.sub(x_pow, ring.mul(inv2, acc)));
    }
    Ok(values)
}

fn euler_ring(p: u64) -> Result<ModRing> {
    if p == 2 {
        return Err(Error::InverseMissing {
            value: "2".into(),
            modulus: 2,
        });
    }
    ModRing::new(p, 1)
}

/// `E_n(x) mod p`. The polynomial has 2-power denominators only, so the
/// value depends on `x mod p` alone.
pub fn euler_poly_eval_mod(n: u64, x: &Rational, p: u64) -> Result<ResidueClass> {
    let ring = euler_ring(p)?;
    let xr = ring.lift(x)?;
    let values = euler_values_mod(n, xr, &ring)?;
    Ok(ring.residue(values[n as usize]))
}

/// Euler number `E_n mod p`, via `E_n = 2^n E_n(1/2)`.
pub fn euler_number_mod(n: u64, p: u64) -> Result<ResidueClass> {
    let ring = euler_ring(p)?;
    let half = euler_poly_eval_mod(n, &rat(1, 2), p)?.value;
    Ok(ring.residue(ring.mul(ring.pow(2, n), half)))
}

/// Lehmer's congruences: `H_{p-1} = 0 mod p^2`, and
/// `H_{p-1}^(2) = H_{(p-1)/2}^(2) = 0 mod p`.
pub fn check_lehmer(p: u64) -> Result<bool> {
    if p <= 3 || !crate::padic::is_prime(p) {
        return Err(Error::PreconditionViolated(format!("Lehmer check needs a prime p > 3, got {p}")));
    }
    let h1 = harmonic(p - 1, 1).value;
    let h2 = harmonic(p - 1, 2).value;
    let h2_half = harmonic((p - 1) / 2, 2).value;
    Ok(reduce_mod(&h1, p, 2)?.value == 0
        && reduce_mod(&h2, p, 1)?.value == 0
        && reduce_mod(&h2_half, p, 1)?.value == 0)
}

/// `count` distinct sample rationals `-7/5, -4/5, -1/5, 2/5, ...`.
pub fn default_sample_points(count: usize) -> Vec<Rational> {
    (0..count as i64).map(|i| rat(3 * i - 7, 5)).collect()
}

/// Checks, exactly:
/// - `E_{2j}(0) = E_{2j}(1) = 0` for `1 <= j <= n_max`;
/// - `E_n(1-x) = (-1)^n E_n(x)` at every sample point, for `n <= 2 n_max`
///   (enough points make this a polynomial identity);
/// - `sum_{k=1}^n (-1)^k k^m = ((-1)^n / 2)(E_m(n+1) + (-1)^n E_m(0))` for
///   `1 <= n <= n_max`, `1 <= m <= m_max`. At `m = 0` the right side has
///   the wrong sign on `E_0(0)`, so that row is excluded.
pub fn check_euler_identities(n_max: usize, m_max: usize, sample_points: &[Rational]) -> Result<bool> {
    let top = (2 * n_max).max(m_max);
    let mut distinct = sample_points.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() < top + 1 {
        return Err(Error::PreconditionViolated(format!(
            "need at least {} distinct sample points, got {}",
            top + 1,
            distinct.len()
        )));
    }
    let table = EulerPolyTable::new(top);
    let zero = Rational::zero();
    let one = Rational::one();
    for j in 1..=n_max {
        if !table.eval(2 * j, &zero).is_zero() || !table.eval(2 * j, &one).is_zero() {
            return Ok(false);
        }
    }
    for n in 0..=top {
        let s: Rational = sign(n as u64);
        for x in &distinct {
            if table.eval(n, &(&one - x)) != &s * table.eval(n, x) {
                return Ok(false);
            }
        }
    }
    for n in 1..=n_max as u64 {
        for m in 1..=m_max {
            let lhs = (1..=n).fold(BigInt::zero(), |acc, k| acc + sign::<BigInt>(k) * BigInt::from(k).pow(m as u32));
            let s: Rational = sign(n);
            let rhs = &s / int(2) * (table.eval(m, &int(n as i64 + 1)) + &s * table.eval(m, &zero));
            if Rational::from_integer(lhs) != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The four binomial-harmonic identities, exactly at `n`:
/// - `sum (-1)^k / (k^2 C(n,k)) = H_n^(2) + 2 sum (-1)^k / k^2`
/// - `sum (-1)^k C(n,k) / k = -H_n`
/// - `sum (-1)^k C(n,k) / k^2 = -(H_n^(2) + H_n^2) / 2`
/// - `sum (-1)^k C(n,k) H_k / k = -H_n^(2)`
pub fn check_binomial_identities(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::PreconditionViolated("binomial identities need n >= 1".into()));
    }
    let h1 = harmonic(n, 1).value;
    let h2 = harmonic(n, 2).value;
    let mut s_inv_binom = Rational::zero();
    let mut s1 = Rational::zero();
    let mut s2 = Rational::zero();
    let mut s3 = Rational::zero();
    let mut h_k = Rational::zero();
    for k in 1..=n {
        h_k += rat(1, k as i64);
        let c = Rational::from_integer(binomial(n, k));
        let sg: Rational = sign(k);
        let kk = int(k as i64);
        s_inv_binom += &sg / (&kk * &kk * &c);
        s1 += &sg * &c / &kk;
        s2 += &sg * &c / (&kk * &kk);
        s3 += &sg * &c * &h_k / &kk;
    }
    let id_sigma = s_inv_binom == &h2 + alternating_harmonic(n, 2) * int(2);
    let id1 = s1 == -h1.clone();
    let id2 = s2 == -(&h2 + &h1 * &h1) / int(2);
    let id3 = s3 == -h2;
    Ok(id_sigma && id1 && id2 && id3)
}
