//! Exact verification of Ramanujan-type supercongruences.
//!
//! The crate checks truncated hypergeometric sums such as
//! `sum_k (-1)^k (6k+1) (1/3)_k^3 / k!^3` against their claimed residues
//! modulo `p^3` and `p^4`, the auxiliary congruences those results rest on,
//! a Wilf-Zeilberger pair and its telescoped identity, and q-analogue
//! congruences modulo products of cyclotomic polynomials.
//!
//! Modules:
//! - [`padic`]: rationals as p-adic integers, residues mod `p^e`, Legendre symbols.
//! - [`sequences`]: Pochhammer symbols, harmonic numbers, Euler numbers and polynomials.
//! - [`wz`]: the WZ pair `F`, `G` and its telescoping identities.
//! - [`verifier`]: the congruence families and lemma checks.
//! - [`qseries`]: q-integers, q-shifted factorials, cyclotomic polynomials, q-congruences.
//! - [`sweep`]: prime sieving, sweep orchestration and report rendering.

pub mod error;
pub mod padic;
pub mod poly;
pub mod qseries;
pub mod scalar;
pub mod sequences;
pub mod sweep;
pub mod verifier;
pub mod wz;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use padic::{AlphaDecomposition, ModRing, ResidueClass};
pub use poly::Poly;
pub use qseries::RationalFunction;
pub use scalar::Scalar;
pub use verifier::{Family, Truncation, VerificationRecord};

/// Exact rational; always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;
/// Dense polynomial in `q` with arbitrary-precision integer coefficients.
pub type IntPoly = Poly<BigInt>;
/// Dense polynomial with exact rational coefficients.
pub type RatPoly = Poly<BigRational>;
/// Double-precision polynomial, used only for floating-point smoke checks.
pub type F64Poly = Poly<f64>;
