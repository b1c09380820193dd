//! Scalar abstraction for the exact geometry kernel.
//!
//! Every geometric routine is written over [`Scalar`], an ordered field with
//! exact arithmetic. The pipeline instantiates it with [`Rat`]
//! (arbitrary-precision rationals); fixed-width rationals such as
//! `Ratio<i64>` also qualify and are handy in tests. Floating-point types do
//! not implement `Ord` and are excluded by construction: the predicates here
//! are only meaningful when arithmetic is exact.

use num_traits::{FromPrimitive, Num, Signed};
use std::fmt::Debug;

/// Exact ordered-field scalar.
pub trait Scalar: Num + Signed + Ord + Clone + FromPrimitive + Debug + 'static {
    /// Converts a small integer exactly.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer out of range for scalar type")
    }
}

impl<T> Scalar for T where T: Num + Signed + Ord + Clone + FromPrimitive + Debug + 'static {}

/// Arbitrary-precision rational, the concrete scalar of the pipeline.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Sign of a scalar as -1, 0, +1.
pub fn sign<S: Scalar>(x: &S) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn sign_of_rationals() {
        let a = Rat::new(Int::from(-3), Int::from(7));
        assert_eq!(sign(&a), -1);
        assert_eq!(sign(&Rat::from_int(0)), 0);
        assert_eq!(sign(&Ratio::<i64>::new(5, 2)), 1);
    }

    #[test]
    fn from_int_roundtrip() {
        assert_eq!(Rat::from_int(-12), Rat::new(Int::from(-12), Int::from(1)));
        assert_eq!(Ratio::<i64>::from_int(9), Ratio::new(9, 1));
    }
}
