//! Coefficient fields.
//!
//! Every algebraic object in this crate is generic over a [`Coeff`] type: an
//! exact field with a canonical textual form. The blanket implementation
//! covers every `num_rational::Ratio<T>` over a signed integer type, so the
//! same code runs over arbitrary-precision rationals ([`crate::Rat`]) and
//! over machine-word rationals such as `Rational64` for small experiments.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact field usable as polynomial coefficient.
///
/// Equality must be exact: the zero test drives term cancellation and every
/// identity check in the crate.
pub trait Coeff: Clone + Debug + Display + FromStr + PartialEq + Num + Signed + Send + Sync + 'static {
    fn from_int(n: i64) -> Self;

    /// Whether the value is an integer (denominator one).
    fn is_integral(&self) -> bool;
}

impl<T> Coeff for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + Display + Debug + Send + Sync + 'static,
    Ratio<T>: FromStr,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer fits coefficient type"))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn rationals_are_gcd_normalized() {
        let r: BigRational = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational64::from_int(0).to_string(), "0");
        assert!(BigRational::from_int(7).is_integral());
        assert!(!r.is_integral());
    }
}
