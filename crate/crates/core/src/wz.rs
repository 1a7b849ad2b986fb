//! The WZ pair
//!
//! ```text
//! F(n,k) = (-1)^(n+k) (2n+a) (a)_n^2 (a)_(n+k) / ((1)_n^2 (1)_(n-k) (a)_k^2)
//! G(n,k) = (-1)^(n+k) (a)_n^2 (a)_(n+k-1) / ((1)_(n-1)^2 (1)_(n-k) (a)_k^2)
//! ```
//!
//! with `1/(1)_m = 0` for `m < 0`, and the identities obtained by
//! telescoping `F(n,k-1) - F(n,k) = G(n+1,k) - G(n,k)`.
//!
//! Every value is evaluated from explicit Pochhammer products so the code
//! can be read against the definitions directly.

use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar};
use crate::sequences::pochhammer;

/// Arguments of `F` and `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct WZPoint<T> {
    pub n: u64,
    pub k: u64,
    pub alpha: T,
}

impl<T: Scalar> WZPoint<T> {
    pub fn new(n: u64, k: u64, alpha: T) -> Self {
        Self { n, k, alpha }
    }
}

fn factorial<T: Scalar>(m: u64) -> T {
    pochhammer(&T::one(), m)
}

/// `(alpha)_k`, rejecting a zero value since it is always a denominator here.
fn nonzero_denominator<T: Scalar>(pt: &WZPoint<T>) -> Result<T> {
    let d = pochhammer(&pt.alpha, pt.k);
    if d.is_zero() {
        return Err(Error::DivisionByZeroTerm { n: pt.n, k: pt.k });
    }
    Ok(d)
}

#[allow(non_snake_case)]
pub fn eval_F<T: Scalar>(pt: &WZPoint<T>) -> Result<T> {
    let ak = nonzero_denominator(pt)?;
    let WZPoint { n, k, ref alpha } = *pt;
    if n < k {
        return Ok(T::zero());
    }
    let an = pochhammer(alpha, n);
    let num = sign::<T>(n + k) * (T::from_int(2 * n as i64) + alpha) * &an * &an * pochhammer(alpha, n + k);
    let fact_n = factorial::<T>(n);
    let den = fact_n.clone() * &fact_n * factorial::<T>(n - k) * &ak * &ak;
    Ok(num / den)
}

#[allow(non_snake_case)]
pub fn eval_G<T: Scalar>(pt: &WZPoint<T>) -> Result<T> {
    let ak = nonzero_denominator(pt)?;
    let WZPoint { n, k, ref alpha } = *pt;
    if n == 0 || n < k {
        return Ok(T::zero());
    }
    let an = pochhammer(alpha, n);
    let num = sign::<T>(n + k) * &an * &an * pochhammer(alpha, n + k - 1);
    let fact = factorial::<T>(n - 1);
    let den = fact.clone() * &fact * factorial::<T>(n - k) * &ak * &ak;
    Ok(num / den)
}

/// Checks `F(n,k-1) - F(n,k) = G(n+1,k) - G(n,k)` exactly on
/// `0 <= n <= n_max`, `1 <= k <= k_max`, for every `alpha`.
pub fn check_pair<T: Scalar>(n_max: u64, k_max: u64, alphas: &[T]) -> Result<bool> {
    for alpha in alphas {
        for n in 0..=n_max {
            for k in 1..=k_max {
                let at = |n, k| WZPoint::new(n, k, alpha.clone());
                let lhs = eval_F(&at(n, k - 1))? - eval_F(&at(n, k))?;
                let rhs = eval_G(&at(n + 1, k))? - eval_G(&at(n, k))?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `sum_{k=0}^{m} (-1)^k (2k+alpha) (alpha)_k^3 / k!^3`.
pub fn main_sum<T: Scalar>(alpha: &T, m: u64) -> T {
    (0..=m).fold(T::zero(), |acc, k| {
        let ak = pochhammer(alpha, k);
        let fk = factorial::<T>(k);
        acc + sign::<T>(k) * (T::from_int(2 * k as i64) + alpha) * &ak * &ak * &ak / (fk.clone() * &fk * &fk)
    })
}

/// Right-hand side of the telescoped identity at a formal positive `N`:
/// `(alpha)_(2N-1) / (1)_(N-1)^2
///   + (alpha)_N^2 / (1)_(N-1)^2 * sum_{k=1}^{N-1} (-1)^(N+k) (alpha)_(N+k-1) / ((1)_(N-k) (alpha)_k^2)`.
///
/// For odd `N` (in particular an odd prime) the sign is `-(-1)^k`.
pub fn telescoped_rhs<T: Scalar>(big_n: u64, alpha: &T) -> Result<T> {
    assert!(big_n >= 1, "telescoped identity needs N >= 1");
    let fact = factorial::<T>(big_n - 1);
    let fact_sq = fact.clone() * &fact;
    let head = pochhammer(alpha, 2 * big_n - 1) / &fact_sq;
    let mut tail = T::zero();
    for k in 1..big_n {
        let ak = nonzero_denominator(&WZPoint::new(big_n, k, alpha.clone()))?;
        tail += sign::<T>(big_n + k) * pochhammer(alpha, big_n + k - 1) / (factorial::<T>(big_n - k) * &ak * &ak);
    }
    let an = pochhammer(alpha, big_n);
    Ok(head + an.clone() * &an / fact_sq * tail)
}

/// Checks `sum_{k=0}^{N-1} (-1)^k (2k+alpha)(alpha)_k^3/k!^3` against
/// [`telescoped_rhs`] exactly.
pub fn check_telescoped<T: Scalar>(big_n: u64, alpha: &T) -> Result<bool> {
    if big_n == 0 {
        return Err(Error::PreconditionViolated("telescoped identity needs N >= 1".into()));
    }
    Ok(main_sum(alpha, big_n - 1) == telescoped_rhs(big_n, alpha)?)
}

/// Same identity derived through the pair itself: summing the relation over
/// `n < N` and `1 <= k <= N-1` gives
/// `sum_n F(n,0) = F(N-1,N-1) + sum_{k=1}^{N-1} G(N,k)`.
pub fn telescoped_via_pair<T: Scalar>(big_n: u64, alpha: &T) -> Result<(T, T)> {
    let at = |n, k| WZPoint::new(n, k, alpha.clone());
    let mut lhs = T::zero();
    for n in 0..big_n {
        lhs += eval_F(&at(n, 0))?;
    }
    let mut rhs = eval_F(&at(big_n - 1, big_n - 1))?;
    for k in 1..big_n {
        rhs += eval_G(&at(big_n, k))?;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{int, rat};
    use crate::Rational;
    use num_traits::Zero;

    #[test]
    fn f_examples() {
        for a in [rat(1, 2), rat(-7, 3), int(4)] {
            assert_eq!(eval_F(&WZPoint::new(0, 0, a.clone())).unwrap(), a);
            assert_eq!(eval_F(&WZPoint::new(0, 1, a.clone())).unwrap(), Rational::zero());
        }
        assert_eq!(eval_F(&WZPoint::new(1, 0, rat(1, 2))).unwrap(), rat(-5, 16));
    }

    #[test]
    fn g_examples() {
        for a in [rat(1, 2), rat(2, 5)] {
            for k in 0..4 {
                assert!(eval_G(&WZPoint::new(0, k, a.clone())).unwrap().is_zero());
            }
            assert!(eval_G(&WZPoint::new(1, 2, a.clone())).unwrap().is_zero());
        }
        assert_eq!(eval_G(&WZPoint::new(1, 0, rat(1, 2))).unwrap(), rat(-1, 4));
        // G(1,1) = (a)_1^2 (a)_1 / (a)_1^2 = a
        for a in [rat(1, 2), rat(-3, 7), int(5)] {
            assert_eq!(eval_G(&WZPoint::new(1, 1, a.clone())).unwrap(), a);
        }
    }

    #[test]
    fn poles_are_errors() {
        let e = eval_F(&WZPoint::new(3, 2, int(-1))).unwrap_err();
        assert_eq!(e, Error::DivisionByZeroTerm { n: 3, k: 2 });
        assert!(eval_G(&WZPoint::new(3, 1, int(0))).is_err());
        assert!(check_pair(3, 3, &[int(-2)]).is_err());
    }

    #[test]
    fn pair_small_grids() {
        assert!(check_pair(5, 5, &[rat(1, 2)]).unwrap());
        assert!(check_pair(5, 5, &[rat(1, 3)]).unwrap());
        assert!(check_pair(6, 6, &[int(3), rat(-5, 2)]).unwrap());
    }

    #[test]
    fn pair_relation_is_not_vacuous() {
        // perturbing G breaks the relation
        let a = rat(1, 3);
        let at = |n, k| WZPoint::new(n, k, a.clone());
        let lhs = eval_F(&at(2, 0)).unwrap() - eval_F(&at(2, 1)).unwrap();
        let rhs = eval_G(&at(3, 1)).unwrap() - eval_G(&at(2, 1)).unwrap();
        assert_eq!(lhs, rhs);
        assert_ne!(lhs, rhs.clone() * int(2));
    }

    #[test]
    fn telescoped_examples() {
        for a in [rat(1, 2), rat(-7, 9), int(2)] {
            assert_eq!(main_sum(&a, 0), a.clone());
            assert!(check_telescoped(1, &a).unwrap());
        }
        assert!(check_telescoped(3, &rat(1, 2)).unwrap());
        assert!(check_telescoped(10, &rat(2, 5)).unwrap());
        assert!(check_telescoped(0, &rat(2, 5)).is_err());
    }

    #[test]
    fn telescoped_brute_force_n3() {
        // direct expansion for alpha = 1/2, N = 3
        let a = rat(1, 2);
        let lhs = a.clone() - int(5) / int(2) * rat(1, 8) + int(9) / int(2) * rat(27, 512);
        assert_eq!(main_sum(&a, 2), lhs);
        let (via_pair_l, via_pair_r) = telescoped_via_pair(3, &a).unwrap();
        assert_eq!(via_pair_l, lhs);
        assert_eq!(via_pair_r, telescoped_rhs(3, &a).unwrap());
    }

    #[test]
    fn odd_n_sign_form() {
        // with -(-1)^k in place of (-1)^(N+k) the identity holds exactly at odd N
        let a = rat(1, 2);
        let literal = |n: u64| {
            let f = factorial::<Rational>(n - 1);
            let mut tail = Rational::zero();
            for k in 1..n {
                let ak = pochhammer(&a, k);
                tail += sign::<Rational>(k) * pochhammer(&a, n + k - 1) / (factorial::<Rational>(n - k) * &ak * &ak);
            }
            let an = pochhammer(&a, n);
            pochhammer(&a, 2 * n - 1) / (&f * &f) - &an * &an / (&f * &f) * tail
        };
        for n in 1..12u64 {
            assert_eq!(literal(n) == main_sum(&a, n - 1), n % 2 == 1, "N = {n}");
        }
        assert_eq!(literal(2), rat(57, 16));
    }

    #[test]
    fn summand_is_f_at_k_zero() {
        let a = rat(3, 7);
        for n in 0..10 {
            let direct = main_sum(&a, n) - if n == 0 { Rational::zero() } else { main_sum(&a, n - 1) };
            assert_eq!(eval_F(&WZPoint::new(n, 0, a.clone())).unwrap(), direct);
        }
    }

    #[test]
    fn floating_point_instance() {
        let rhs = telescoped_rhs(8, &0.3f64).unwrap();
        assert!((main_sum(&0.3f64, 7) - rhs).abs() < 1e-9);
    }
}
