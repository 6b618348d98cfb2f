//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! The high-precision [`Real`](crate::Real) carries its working precision at
//! runtime, so constructors take an explicit context instead of relying on
//! `num_traits::Zero`/`One`. Primitive floats and exact rationals use `()`.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{MzvError, Result};

/// Field-like scalar with value and by-reference arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Whatever a constructor needs besides the value (e.g. precision).
    type Context: Clone + Debug + PartialEq + Send + Sync;

    fn context(&self) -> Self::Context;

    fn from_i64(v: i64, ctx: &Self::Context) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64, ctx: &Self::Context) -> Self {
        Self::from_i64(num, ctx) / Self::from_i64(den, ctx)
    }

    fn zero(ctx: &Self::Context) -> Self {
        Self::from_i64(0, ctx)
    }

    fn one(ctx: &Self::Context) -> Self {
        Self::from_i64(1, ctx)
    }

    fn is_zero(&self) -> bool;

    fn abs(&self) -> Self;

    fn to_f64(&self) -> f64;

    /// Nearest representable value to a double.
    fn from_f64(v: f64, ctx: &Self::Context) -> Self;

    fn mul_i64(self, k: i64) -> Self {
        let k = Self::from_i64(k, &self.context());
        self * k
    }

    fn div_i64(self, k: i64) -> Self {
        let k = Self::from_i64(k, &self.context());
        self / k
    }

    /// Integer power with `0^0 = 1`.
    fn powi(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.context());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    /// Converts a value that may come from a different context.
    fn convert_to(&self, ctx: &Self::Context) -> Self;
}

/// Scalars with a finite decimal precision contract: the ones that can
/// evaluate truncated series and report residuals.
pub trait RealField: Scalar {
    /// Significant decimal digits of the working precision.
    fn digits(ctx: &Self::Context) -> u32;

    /// A context for the requested number of digits, if the type supports it.
    fn context_for_digits(digits: u32) -> Result<Self::Context>;

    /// Decimal rendering in fixed notation with `digits` significant digits.
    fn to_decimal(&self, digits: u32) -> String;

    /// Decimal rendering in scientific notation.
    fn to_scientific(&self, digits: u32) -> String;

    /// A rendering that parses back to the identical value.
    fn to_exact_string(&self) -> String;

    fn parse_decimal(s: &str, ctx: &Self::Context) -> Result<Self>;

    /// `10^(-k)` in the given context.
    fn ten_pow_neg(k: u32, ctx: &Self::Context) -> Self {
        let ten = Self::from_i64(10, ctx);
        Self::one(ctx) / ten.powi(k)
    }

    /// Verdict tolerance `10^-(P-10)`.
    fn tolerance(ctx: &Self::Context) -> Self {
        Self::ten_pow_neg(Self::digits(ctx).saturating_sub(10), ctx)
    }

    /// Converts an exact rational parameter.
    fn from_rational(q: &num_rational::Rational64, ctx: &Self::Context) -> Self {
        Self::from_ratio(*q.numer(), *q.denom(), ctx)
    }
}

macro_rules! impl_scalar_float {
    ($t:ty) => {
        impl Scalar for $t {
            type Context = ();

            fn context(&self) {}

            fn from_i64(v: i64, _: &()) -> Self {
                v as $t
            }

            fn from_ratio(num: i64, den: i64, _: &()) -> Self {
                (num as f64 / den as f64) as $t
            }

            fn is_zero(&self) -> bool {
                *self == 0.0
            }

            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn from_f64(v: f64, _: &()) -> Self {
                v as $t
            }

            fn mul_i64(self, k: i64) -> Self {
                self * k as $t
            }

            fn div_i64(self, k: i64) -> Self {
                self / k as $t
            }

            fn convert_to(&self, _: &()) -> Self {
                *self
            }
        }
    };
}

impl_scalar_float!(f32);
impl_scalar_float!(f64);

impl RealField for f64 {
    fn digits(_: &()) -> u32 {
        15
    }

    fn context_for_digits(_: u32) -> Result<()> {
        Ok(())
    }

    fn to_decimal(&self, digits: u32) -> String {
        let decimals = digits.saturating_sub(1 + f64::abs(*self).log10().floor().max(0.0) as u32);
        format!("{:.*}", decimals as usize, self)
    }

    fn to_scientific(&self, digits: u32) -> String {
        format!("{:.*e}", digits.saturating_sub(1) as usize, self)
    }

    fn to_exact_string(&self) -> String {
        format!("{:e}", self)
    }

    fn parse_decimal(s: &str, _: &()) -> Result<Self> {
        s.trim()
            .parse()
            .map_err(|_| MzvError::Parse(format!("not a number: {s:?}")))
    }
}

/// Exact rationals: used to check series algebra without rounding.
impl Scalar for BigRational {
    type Context = ();

    fn context(&self) {}

    fn from_i64(v: i64, _: &()) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64, _: &()) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64, _: &()) -> Self {
        BigRational::from_float(v).unwrap_or_else(<BigRational as Zero>::zero)
    }

    fn convert_to(&self, _: &()) -> Self {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_zero_to_zero_is_one() {
        assert_eq!(0.0f64.powi(0), 1.0);
        assert_eq!(Scalar::powi(&0.0f64, 3), 0.0);
        assert_eq!(Scalar::powi(&-2.0f64, 5), -32.0);
    }

    #[test]
    fn rational_ops_are_exact() {
        let third = BigRational::from_ratio(1, 3, &());
        let sum = third.clone() + &third + &third;
        assert_eq!(sum, BigRational::one(&()));
        assert_eq!(third.powi(2), BigRational::from_ratio(1, 9, &()));
    }

    #[test]
    fn f64_tolerance_follows_digits() {
        let tol = f64::tolerance(&());
        assert!((tol - 1e-5).abs() < 1e-18);
    }
}
