//! Scalar abstraction shared by the exact, floating-point and integer kernels.
//!
//! Every routine that only needs ring or field operations (Pochhammer
//! products, WZ terms, dense polynomials, partial sums) is written against
//! [`Scalar`] so it runs unchanged over [`BigInt`](num_bigint::BigInt),
//! [`BigRational`](num_rational::BigRational), `f64` or `f32`. Residues modulo
//! `p^e` carry a runtime modulus and therefore live in [`crate::padic`]
//! instead.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, NumAssignRef, NumRef};

/// A commutative ring element usable by the generic kernels.
pub trait Scalar:
    Clone + Debug + PartialEq + NumRef + NumAssignRef + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    /// Embeds a machine integer.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type embeds i64")
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + NumRef
        + NumAssignRef
        + Neg<Output = T>
        + FromPrimitive
        + Send
        + Sync
{
}

/// `(-1)^k` in any scalar type.
pub fn sign<T: Scalar>(k: u64) -> T {
    if k % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}
