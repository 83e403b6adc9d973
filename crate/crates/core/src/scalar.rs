//! Numeric abstraction shared by the metric and evaluation code.
//!
//! Most of the toolkit only needs ring arithmetic plus conversions, so it is
//! written against [`Scalar`]; that admits `f32`, `f64` and exact rationals.
//! Code that needs square roots or norms asks for [`RealScalar`] instead.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, NumAssign, ToPrimitive};

pub trait Scalar:
    Clone + PartialOrd + Debug + Display + Num + NumAssign + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable in scalar type")
    }

    /// Converts a probability or ratio given as `f64`.
    ///
    /// Rational scalars receive the exact binary value of `x`.
    fn from_real(x: f64) -> Self {
        Self::from_f64(x).expect("finite value representable in scalar type")
    }

    fn to_real(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

impl Scalar for BigRational {
    fn from_count(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Floating-point scalar used where the math needs `sqrt` or tolerances.
pub trait RealScalar: Scalar + Float {}

impl RealScalar for f32 {}
impl RealScalar for f64 {}

/// Sum with a fixed left-to-right order.
pub(crate) fn ordered_sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |mut acc, v| {
        acc += v;
        acc
    })
}
