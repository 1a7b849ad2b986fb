//! Polynomials in `q`: q-integers, q-shifted factorials, cyclotomic
//! polynomials, and the two q-analogue sums
//!
//! ```text
//! E2_q(n) = sum_{k<n} (-1)^k [6k+1] (q;q^2)_k^3 q^(3k^2)   / (q^4;q^4)_k^3
//! F2_q(n) = sum_{k<n} (-1)^k [8k+1] (q;q^4)_k^3 q^(2k^2+k) / (q^4;q^4)_k^3
//! ```
//!
//! A rational function `N/D` is congruent to zero modulo `M` when, in lowest
//! terms, `M` divides the numerator and the denominator is coprime to `M`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::padic::parity_sign;
use crate::sequences::{factorial, pochhammer};
use crate::verifier::{Family, VerificationRecord, Witness};
use crate::{IntPoly, Rational};

/// `[n] = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: u64) -> IntPoly {
    IntPoly::new(vec![BigInt::one(); n as usize])
}

/// `1 - q^e`.
fn one_minus_q_pow(e: u64) -> IntPoly {
    if e == 0 {
        return IntPoly::zero();
    }
    let mut c = vec![BigInt::zero(); e as usize + 1];
    c[0] = BigInt::one();
    c[e as usize] = -BigInt::one();
    IntPoly::new(c)
}

/// `(q^a; q^b)_k = prod_{j<k} (1 - q^(a + b j))`.
pub fn q_pochhammer(a: u64, b: u64, k: u64) -> IntPoly {
    (0..k).fold(IntPoly::one(), |acc, j| &acc * &one_minus_q_pow(a + b * j))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn mobius(mut n: u64) -> i8 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `Phi_n(q) = prod_{d | n} (q^d - 1)^mu(n/d)`.
pub fn cyclotomic(n: u64) -> Result<IntPoly> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in divisors(n) {
        let f = -&one_minus_q_pow(d);
        match mobius(n / d) {
            1 => num = &num * &f,
            -1 => den = &den * &f,
            _ => {}
        }
    }
    num.div_exact(&den)
}

/// `num / den` with no implied normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    pub num: IntPoly,
    pub den: IntPoly,
}

impl RationalFunction {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroModulus);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(num: IntPoly) -> Self {
        Self {
            num,
            den: IntPoly::one(),
        }
    }

    /// Lowest terms over `Q`, scaled so the coefficients are jointly
    /// primitive and the denominator's leading coefficient is positive.
    pub fn reduce(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Ok(Self::from_poly(IntPoly::zero()));
        }
        let g = self.num.gcd(&self.den);
        let num = self.num.div_exact_over_q(&g)?;
        let den = self.den.div_exact_over_q(&g)?;
        let mut c = num_integer::Integer::gcd(&num.content(), &den.content());
        if den.leading().expect("nonzero").is_negative() {
            c = -c;
        }
        let scale = |p: &IntPoly| IntPoly::new(p.coeffs().iter().map(|x| x / &c).collect());
        Ok(Self {
            num: scale(&num),
            den: scale(&den),
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self {
                num: &self.num - &other.num,
                den: self.den.clone(),
            };
        }
        Self {
            num: &(&self.num * &other.den) - &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn sub_poly(&self, p: &IntPoly) -> Self {
        Self {
            num: &self.num - &(p * &self.den),
            den: self.den.clone(),
        }
    }
}

/// `A = 0 (mod M)` in the lowest-terms sense.
///
/// Rather than reducing `A` (a gcd of two polynomials of degree near 1000 at
/// the sizes used here), this splits off `D_M`, the part of the denominator
/// built from factors shared with `M`, by repeated gcds with `M`. Every
/// irreducible `f | M` then satisfies `v_f(N) - v_f(D) >= v_f(M)` exactly
/// when `M * D_M` divides `N`, which is the lowest-terms condition.
pub fn congruent_mod(a: &RationalFunction, m: &IntPoly) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if a.num.is_zero() {
        return Ok(true);
    }
    let mut rest = a.den.primitive_part();
    let mut shared = IntPoly::one();
    loop {
        let g = rest.gcd(m);
        if g.is_constant() {
            break;
        }
        shared = &shared * &g;
        rest = rest.div_exact_over_q(&g)?;
    }
    a.num.divisible_by(&(m * &shared))
}

/// The same test computed literally: reduce, then check coprimality and
/// divisibility. Quadratic gcd cost in the degree; kept for small inputs.
pub fn congruent_mod_reduced(a: &RationalFunction, m: &IntPoly) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let r = a.reduce()?;
    Ok(r.den.gcd(m).is_constant() && r.num.divisible_by(m)?)
}

struct QSum {
    weight: u64,
    poch_base: u64,
    power: fn(u64) -> u64,
}

const E2: QSum = QSum {
    weight: 6,
    poch_base: 2,
    power: |k| 3 * k * k,
};

const F2: QSum = QSum {
    weight: 8,
    poch_base: 4,
    power: |k| 2 * k * k + k,
};

fn cube(p: &IntPoly) -> IntPoly {
    &(p * p) * p
}

fn lhs_q(n: u64, s: &QSum) -> RationalFunction {
    assert!(n >= 1, "q-sums need n >= 1");
    // tails[k] = prod_{j=k+1}^{n-1} (1 - q^(4j)), cubed
    let mut tails = vec![IntPoly::one(); n as usize];
    let mut run = IntPoly::one();
    for k in (0..n - 1).rev() {
        run = &run * &one_minus_q_pow(4 * (k + 1));
        tails[k as usize] = cube(&run);
    }
    let den = cube(&q_pochhammer(4, 4, n - 1));
    let mut num = IntPoly::zero();
    let mut poch = IntPoly::one();
    for k in 0..n {
        if k > 0 {
            poch = &poch * &one_minus_q_pow(1 + s.poch_base * (k - 1));
        }
        let term = &(&q_integer(s.weight * k + 1) * &cube(&poch)) * &tails[k as usize];
        let term = term.shift((s.power)(k) as usize);
        num = if k % 2 == 0 { &num + &term } else { &num - &term };
    }
    RationalFunction { num, den }
}

/// `E2_q(n)` over the denominator `(q^4;q^4)_(n-1)^3`.
pub fn lhs_e2_q(n: u64) -> RationalFunction {
    lhs_q(n, &E2)
}

/// `F2_q(n)` over the denominator `(q^4;q^4)_(n-1)^3`.
pub fn lhs_f2_q(n: u64) -> RationalFunction {
    lhs_q(n, &F2)
}

/// `[n] Phi_n(q)^r`.
pub fn gz_modulus(n: u64, r: u32) -> Result<IntPoly> {
    Ok(&q_integer(n) * &cyclotomic(n)?.pow(r))
}

fn check_q_index(family: Family, n: u64) -> Result<()> {
    let ok = match family {
        Family::GzE2 => n % 2 == 1 && n >= 3,
        Family::GzF2 | Family::Conj41 => n % 4 == 1 && n >= 5,
        other => return Err(Error::PreconditionViolated(format!("{other} is not a q-family"))),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::ResidueConditionViolated(format!("{family} does not apply to n = {n}")))
    }
}

/// `(-q)^((n-1)(n-3)/8) [n]`.
pub fn gz_target(n: u64) -> IntPoly {
    let e = (n - 1) * (n - 3) / 8;
    q_integer(n).shift(e as usize).scale(&BigInt::from(parity_sign(e)))
}

fn modulus_label(n: u64, r: u32) -> String {
    format!("[{n}]Phi_{n}(q)^{r}")
}

fn witness(diff: &RationalFunction, m: &IntPoly) -> Witness {
    Witness {
        numerator: diff.num.to_text(),
        denominator: diff.den.to_text(),
        modulus: m.to_text(),
    }
}

/// Checks the sum of `family` (`GzE2` or `GzF2`) against
/// `(-q)^((n-1)(n-3)/8) [n]` modulo `[n] Phi_n(q)^2`.
pub fn verify_gz(n: u64, family: Family) -> Result<VerificationRecord> {
    check_q_index(family, n)?;
    if family == Family::Conj41 {
        return Err(Error::PreconditionViolated("use verify_conjecture41".into()));
    }
    let (lhs, name) = match family {
        Family::GzE2 => (lhs_e2_q(n), "E2_q"),
        _ => (lhs_f2_q(n), "F2_q"),
    };
    let m = gz_modulus(n, 2)?;
    let diff = lhs.sub_poly(&gz_target(n));
    let pass = congruent_mod(&diff, &m)?;
    let rec = VerificationRecord::q_result(
        family,
        n,
        modulus_label(n, 2),
        format!("{name}({n})"),
        format!("(-q)^{}[{n}]", (n - 1) * (n - 3) / 8),
        pass,
    );
    Ok(if pass { rec } else { rec.with_witness(witness(&diff, &m)) })
}

/// `E2_q(n) - F2_q(n)` over their shared denominator.
pub fn e2_f2_difference(n: u64) -> RationalFunction {
    lhs_e2_q(n).sub(&lhs_f2_q(n))
}

/// Whether `E2_q(n) = F2_q(n) (mod [n] Phi_n(q)^r)`.
pub fn check_difference(n: u64, r: u32) -> Result<bool> {
    check_q_index(Family::Conj41, n)?;
    congruent_mod(&e2_f2_difference(n), &gz_modulus(n, r)?)
}

/// `E2_q(n) = F2_q(n) (mod [n] Phi_n(q)^3)` for `n = 1 (mod 4)`. A failure is
/// a counterexample and carries the difference and modulus as witnesses.
pub fn verify_conjecture41(n: u64) -> Result<VerificationRecord> {
    check_q_index(Family::Conj41, n)?;
    let m = gz_modulus(n, 3)?;
    let diff = e2_f2_difference(n);
    let pass = congruent_mod(&diff, &m)?;
    let rec = VerificationRecord::q_result(
        Family::Conj41,
        n,
        modulus_label(n, 3),
        format!("E2_q({n})"),
        format!("F2_q({n})"),
        pass,
    );
    Ok(if pass { rec } else { rec.with_witness(witness(&diff, &m)) })
}

/// At `q = 1`, after cancelling `(1-q)^(3k)`, the `k`-th `E2_q` summand
/// without its sign is `(6k+1) (1/2)_k^3 / (8^k k!^3)`.
pub fn q_limit_term_check(n: u64, k: u64) -> Result<bool> {
    if k >= n {
        return Err(Error::PreconditionViolated(format!("k = {k} must be below n = {n}")));
    }
    let lin = one_minus_q_pow(1).pow(3 * k as u32);
    let num = cube(&q_pochhammer(1, 2, k)).div_exact(&lin)?;
    let den = cube(&q_pochhammer(4, 4, k)).div_exact(&lin)?;
    let one = BigInt::one();
    let weight = q_integer(6 * k + 1).eval(&one);
    let power = IntPoly::monomial(one.clone(), (E2.power)(k) as usize).eval(&one);
    let at_one = Rational::new(weight * power * num.eval(&one), den.eval(&one));
    let half = pochhammer(&Rational::new(1.into(), 2.into()), k);
    let fk = Rational::from_integer(factorial(k));
    let expected = Rational::from_integer(BigInt::from(6 * k + 1)) * &half * &half * &half
        / (Rational::from_integer(BigInt::from(8).pow(k as u32)) * &fk * &fk * &fk);
    Ok(at_one == expected)
}
