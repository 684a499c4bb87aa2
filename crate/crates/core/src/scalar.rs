//! Scalar traits: [`Scalar`] for the exact/floating LP field and
//! [`CostScalar`] for the charge formulas, which are evaluated both
//! numerically and symbolically.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio, Rational64};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Ordered field element used by the exponent optimizer.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Slack below which two values are treated as equal; zero for exact types.
    fn tolerance() -> Self;

    fn ratio(num: i64, den: i64) -> Self;

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_exact() -> bool {
        Self::tolerance().is_zero()
    }

    fn near_zero(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    /// `self > other` beyond tolerance.
    fn definitely_gt(&self, other: &Self) -> bool {
        self.clone() - other.clone() > Self::tolerance()
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-11
    }
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }
    fn ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }
}

impl Scalar for BigRational {
    fn tolerance() -> Self {
        Ratio::from_integer(BigInt::from(0))
    }
    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for Rational64 {
    fn tolerance() -> Self {
        Ratio::from_integer(0)
    }
    fn ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
}

/// Quantity in which query charges are expressed.
///
/// The charge formulas in [`crate::qcost::formulas`] and the stage costs in
/// [`crate::pipeline::costs`] are written once against this trait, and then
/// evaluated on `f64` at run time and on [`crate::Posynomial`] when comparing
/// the implemented cost structure with closed-form exponent lists.
pub trait CostScalar:
    Clone + Debug + Add<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
    fn constant(c: f64) -> Self;
    fn sqrt(self) -> Self;
    /// Ceiling that ignores floating noise just above an integer.
    fn ceil_count(self) -> Self;
    /// `max(self, 1)`.
    fn at_least_one(self) -> Self;
    /// `min(self, bound)`.
    fn at_most(self, bound: Self) -> Self;
    fn zero() -> Self {
        Self::constant(0.0)
    }
    fn one() -> Self {
        Self::constant(1.0)
    }
}

pub(crate) fn ceil_tolerant(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * x.abs().max(1.0) {
        nearest
    } else {
        x.ceil()
    }
}

impl CostScalar for f64 {
    fn at_most(self, bound: Self) -> Self {
        self.min(bound)
    }
    fn constant(c: f64) -> Self {
        c
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn ceil_count(self) -> Self {
        ceil_tolerant(self)
    }
    fn at_least_one(self) -> Self {
        self.max(1.0)
    }
}

impl CostScalar for f32 {
    fn at_most(self, bound: Self) -> Self {
        self.min(bound)
    }
    fn constant(c: f64) -> Self {
        c as f32
    }
    fn sqrt(self) -> Self {
        f32::sqrt(self)
    }
    fn ceil_count(self) -> Self {
        ceil_tolerant(self as f64) as f32
    }
    fn at_least_one(self) -> Self {
        self.max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerant_ceiling() {
        assert_eq!(ceil_tolerant(5.0000000000001), 5.0);
        assert_eq!(ceil_tolerant(4.2), 5.0);
        assert_eq!(ceil_tolerant(0.0), 0.0);
        assert_eq!(ceil_tolerant(100f64.sqrt()), 10.0);
    }

    #[test]
    fn rational_ratio_is_exact() {
        let x = BigRational::ratio(31, 30) - BigRational::ratio(8, 15);
        assert_eq!(x, BigRational::ratio(1, 2));
        assert!(BigRational::is_exact());
        assert!(!f64::is_exact());
    }
}
