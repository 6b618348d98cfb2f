//! Extended-precision real scalar backed by MPFR.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};
use crate::scalar::{RealField, Scalar};

/// Smallest working precision accepted for artifact computations.
pub const MIN_DIGITS: u32 = 30;
/// Default working precision in significant decimal digits.
pub const DEFAULT_DIGITS: u32 = 40;
/// Extra decimal digits carried internally beyond the advertised precision.
const GUARD_DIGITS: u32 = 16;

/// Working precision expressed in significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(MzvError::PrecisionTooLow {
                got: digits,
                min: MIN_DIGITS,
            });
        }
        Ok(Precision { digits })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// Binary mantissa length used by the backend.
    pub fn bits(self) -> u32 {
        ((self.digits + GUARD_DIGITS) as f64 * std::f64::consts::LOG2_10).ceil() as u32
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            digits: DEFAULT_DIGITS,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digits)
    }
}

/// A real number at a fixed decimal working precision.
///
/// Arithmetic between two values of different precision panics; use the
/// `checked_*` methods where the operands come from untrusted sources.
#[derive(Clone)]
pub struct Real {
    value: Float,
    prec: Precision,
}

impl Real {
    pub fn from_int(v: i64, prec: Precision) -> Self {
        Real {
            value: Float::with_val(prec.bits(), v),
            prec,
        }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Borrow the backend value.
    pub fn as_float(&self) -> &Float {
        &self.value
    }

    pub fn from_float(value: &Float, prec: Precision) -> Self {
        Real {
            value: Float::with_val(prec.bits(), value),
            prec,
        }
    }

    fn same_precision(&self, other: &Real) -> Result<()> {
        if self.prec != other.prec {
            return Err(MzvError::PrecisionMismatch {
                left: self.prec.digits,
                right: other.prec.digits,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Real) -> Result<Real> {
        self.same_precision(other)?;
        Ok(self.clone() + other)
    }

    pub fn checked_sub(&self, other: &Real) -> Result<Real> {
        self.same_precision(other)?;
        Ok(self.clone() - other)
    }

    pub fn checked_mul(&self, other: &Real) -> Result<Real> {
        self.same_precision(other)?;
        Ok(self.clone() * other)
    }

    pub fn checked_div(&self, other: &Real) -> Result<Real> {
        self.same_precision(other)?;
        Ok(self.clone() / other)
    }

    pub fn sqrt(&self) -> Real {
        Real {
            value: self.value.clone().sqrt(),
            prec: self.prec,
        }
    }

    /// Decimal mantissa digits and exponent such that the value is
    /// `0.d1d2... * 10^exp`; `None` exponent means zero.
    fn decimal_parts(&self, digits: u32) -> (bool, String, Option<i32>) {
        self.value
            .to_sign_string_exp(10, Some(digits.max(1) as usize))
    }
}

#[track_caller]
fn assert_same(a: Precision, b: Precision) {
    assert!(
        a == b,
        "precision mismatch: {} vs {} digits",
        a.digits,
        b.digits
    );
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr<&Real> for Real {
            type Output = Real;
            #[track_caller]
            fn $method(mut self, rhs: &Real) -> Real {
                assert_same(self.prec, rhs.prec);
                self.value.$assign(&rhs.value);
                self
            }
        }

        impl $tr<Real> for Real {
            type Output = Real;
            #[track_caller]
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }

        impl $tr<&Real> for &Real {
            type Output = Real;
            #[track_caller]
            fn $method(self, rhs: &Real) -> Real {
                self.clone().$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);
forward_binop!(Div, div, DivAssign, div_assign);

impl AddAssign<&Real> for Real {
    #[track_caller]
    fn add_assign(&mut self, rhs: &Real) {
        assert_same(self.prec, rhs.prec);
        self.value += &rhs.value;
    }
}

impl SubAssign<&Real> for Real {
    #[track_caller]
    fn sub_assign(&mut self, rhs: &Real) {
        assert_same(self.prec, rhs.prec);
        self.value -= &rhs.value;
    }
}

impl MulAssign<&Real> for Real {
    #[track_caller]
    fn mul_assign(&mut self, rhs: &Real) {
        assert_same(self.prec, rhs.prec);
        self.value *= &rhs.value;
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(mut self) -> Real {
        self.value = -self.value;
        self
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.prec == other.prec && self.value == other.value
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({}, {} digits)", self.to_scientific(self.prec.digits), self.prec.digits)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.prec.digits))
    }
}

impl Scalar for Real {
    type Context = Precision;

    fn context(&self) -> Precision {
        self.prec
    }

    fn from_i64(v: i64, ctx: &Precision) -> Self {
        Real::from_int(v, *ctx)
    }

    fn from_ratio(num: i64, den: i64, ctx: &Precision) -> Self {
        let mut value = Float::with_val(ctx.bits(), num);
        value /= den;
        Real { value, prec: *ctx }
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn abs(&self) -> Self {
        Real {
            value: self.value.clone().abs(),
            prec: self.prec,
        }
    }

    fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    fn from_f64(v: f64, ctx: &Precision) -> Self {
        Real {
            value: Float::with_val(ctx.bits(), v),
            prec: *ctx,
        }
    }

    fn mul_i64(mut self, k: i64) -> Self {
        self.value *= k;
        self
    }

    fn div_i64(mut self, k: i64) -> Self {
        self.value /= k;
        self
    }

    fn convert_to(&self, ctx: &Precision) -> Self {
        Real::from_float(&self.value, *ctx)
    }
}

impl RealField for Real {
    fn digits(ctx: &Precision) -> u32 {
        ctx.digits
    }

    fn context_for_digits(digits: u32) -> Result<Precision> {
        Precision::new(digits)
    }

    fn to_decimal(&self, digits: u32) -> String {
        let (neg, mant, exp) = self.decimal_parts(digits);
        let Some(exp) = exp else {
            return "0".to_string();
        };
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if exp <= 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat('0').take((-exp) as usize));
            out.push_str(&mant);
        } else if exp as usize >= mant.len() {
            out.push_str(&mant);
            out.extend(std::iter::repeat('0').take(exp as usize - mant.len()));
        } else {
            out.push_str(&mant[..exp as usize]);
            out.push('.');
            out.push_str(&mant[exp as usize..]);
        }
        out
    }

    fn to_scientific(&self, digits: u32) -> String {
        let (neg, mant, exp) = self.decimal_parts(digits);
        let Some(exp) = exp else {
            return "0".to_string();
        };
        let sign = if neg { "-" } else { "" };
        let (head, tail) = mant.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{}", exp - 1)
        } else {
            format!("{sign}{head}.{tail}e{}", exp - 1)
        }
    }

    fn to_exact_string(&self) -> String {
        self.value.to_string_radix(10, None)
    }

    fn parse_decimal(s: &str, ctx: &Precision) -> Result<Self> {
        let parsed = Float::parse(s.trim())
            .map_err(|e| MzvError::Parse(format!("{s:?}: {e}")))?;
        Ok(Real {
            value: Float::with_val(ctx.bits(), parsed),
            prec: *ctx,
        })
    }
}
