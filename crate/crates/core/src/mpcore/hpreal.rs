use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// An arbitrary-precision real carrying its own precision.
///
/// Elementary functions are delegated to MPFR and are correctly rounded
/// (round-to-nearest) at the value's precision. Binary operations produce a
/// result at the larger of the two operand precisions.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct HpReal(Float);

impl HpReal {
    pub fn from_float(value: Float) -> Self {
        HpReal(value)
    }

    pub fn from_u64(value: u64, bits: u32) -> Self {
        HpReal(Float::with_val(bits, value))
    }

    pub fn from_f64(value: f64, bits: u32) -> Self {
        HpReal(Float::with_val(bits, value))
    }

    pub fn from_integer(value: &Integer, bits: u32) -> Self {
        HpReal(Float::with_val(bits, value))
    }

    pub fn from_rational(value: &Rational, bits: u32) -> Self {
        HpReal(Float::with_val(bits, value))
    }

    pub fn pi(bits: u32) -> Self {
        HpReal(Float::with_val(bits, Constant::Pi))
    }

    pub fn ln2(bits: u32) -> Self {
        HpReal(Float::with_val(bits, Constant::Log2))
    }

    /// Euler's number, as `exp(1)`.
    pub fn e(bits: u32) -> Self {
        HpReal(Float::with_val(bits, 1).exp())
    }

    /// Parses a decimal literal such as `"1.5e-30"` at the given precision.
    pub fn parse(text: &str, bits: u32) -> Result<Self> {
        let parsed = Float::parse(text.trim())
            .map_err(|e| Error::Parse(format!("`{text}` is not a decimal number: {e}")))?;
        Ok(HpReal(Float::with_val(bits, parsed)))
    }

    pub fn precision_bits(&self) -> u32 {
        self.0.prec()
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    /// Rounds to nearest at `bits` of precision.
    pub fn round_to(&self, bits: u32) -> Self {
        HpReal(Float::with_val(bits, &self.0))
    }

    pub fn exp(&self) -> Self {
        HpReal(self.0.clone().exp())
    }

    /// `exp(x) - 1` without cancellation for small `x`.
    pub fn exp_m1(&self) -> Self {
        HpReal(self.0.clone().exp_m1())
    }

    pub fn ln(&self) -> Result<Self> {
        if self.0 <= 0 {
            return Err(Error::domain(format!("ln of non-positive value {}", self)));
        }
        Ok(HpReal(self.0.clone().ln()))
    }

    pub fn sinh(&self) -> Self {
        HpReal(self.0.clone().sinh())
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.0 < 0 {
            return Err(Error::domain(format!("sqrt of negative value {}", self)));
        }
        Ok(HpReal(self.0.clone().sqrt()))
    }

    /// `self^exponent` for a real exponent; the base must be positive.
    pub fn pow(&self, exponent: &HpReal) -> Result<Self> {
        if self.0 <= 0 {
            return Err(Error::domain(format!(
                "pow with non-positive base {}",
                self
            )));
        }
        let prec = self.precision_bits().max(exponent.precision_bits());
        let mut out = Float::with_val(prec, &self.0);
        rug::ops::PowAssign::pow_assign(&mut out, &exponent.0);
        Ok(HpReal(out))
    }

    pub fn abs(&self) -> Self {
        HpReal(self.0.clone().abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Unit in the last place at this value's precision.
    pub fn ulp(&self) -> Self {
        let prec = self.precision_bits();
        match self.0.get_exp() {
            Some(exp) => HpReal(Float::with_val(prec, Float::i_exp(1, exp - prec as i32))),
            None => HpReal(Float::with_val(prec, Float::i_exp(1, -(prec as i32)))),
        }
    }

    /// `|self - other|` measured in ulps of `other` at `bits` of precision.
    pub fn ulps_from(&self, other: &HpReal, bits: u32) -> f64 {
        let diff = Float::with_val(bits + 64, &self.0 - &other.0).abs();
        let ulp = other.round_to(bits).ulp();
        (diff / &ulp.0).to_f64()
    }

    /// Number of decimal digits that round-trip a value of this precision.
    pub fn round_trip_digits(&self) -> usize {
        (f64::from(self.precision_bits()) * std::f64::consts::LOG10_2).ceil() as usize + 1
    }

    /// Correctly rounded decimal digits: `(negative, digits, exponent)` with
    /// `|self| ≈ d.ddd × 10^exponent`. `None` for zero and non-finite values.
    pub fn decimal_parts(&self, digits: usize) -> Option<(bool, String, i32)> {
        if self.0.is_zero() || !self.0.is_finite() {
            return None;
        }
        let (negative, mantissa, exp) = self.0.to_sign_string_exp(10, Some(digits.max(1)));
        exp.map(|e| (negative, mantissa, e - 1))
    }

    /// Decimal scientific notation with `digits` significant digits,
    /// e.g. `"6.93147e-1"`.
    pub fn to_sci_string_digits(&self, digits: usize) -> String {
        match self.decimal_parts(digits) {
            Some((negative, mantissa, exp)) => {
                let sign = if negative { "-" } else { "" };
                let (lead, rest) = mantissa.split_at(1);
                if rest.is_empty() {
                    format!("{sign}{lead}e{exp}")
                } else {
                    format!("{sign}{lead}.{rest}e{exp}")
                }
            }
            None if self.0.is_zero() => "0".to_string(),
            None => self.0.to_string(),
        }
    }

    /// Decimal scientific notation with enough digits to parse back to the
    /// same value at the same precision.
    pub fn to_sci_string(&self) -> String {
        self.to_sci_string_digits(self.round_trip_digits())
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(digits) => f.write_str(&self.to_sci_string_digits(digits)),
            None => f.write_str(&self.to_sci_string()),
        }
    }
}

impl PartialEq<f64> for HpReal {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for HpReal {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl PartialEq<Rational> for HpReal {
    fn eq(&self, other: &Rational) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<Rational> for HpReal {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&HpReal> for &HpReal {
            type Output = HpReal;

            fn $method(self, rhs: &HpReal) -> HpReal {
                let prec = self.precision_bits().max(rhs.precision_bits());
                HpReal(Float::with_val(prec, &self.0 $op &rhs.0))
            }
        }

        impl $trait<HpReal> for HpReal {
            type Output = HpReal;

            fn $method(self, rhs: HpReal) -> HpReal {
                &self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for HpReal {
    type Output = HpReal;

    fn neg(self) -> HpReal {
        HpReal(-self.0)
    }
}
