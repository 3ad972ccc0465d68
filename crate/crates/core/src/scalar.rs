//! Field backends for algebra coefficients.
//!
//! Two backends share the [`Scalar`] trait: binary64 floats for speed and
//! exact [`BigRational`]s for anything that needs a reliable zero test
//! (determinants, zero-divisor witnesses).
//!
//! Long product chains (determinants, adjoints, inverses) run in
//! [`Scalar::Work`] precision: double-double for floats, the type itself for
//! rationals. The Faddeev-LeVerrier recursion cancels far more and uses
//! [`Scalar::Wide`], octuple precision for floats.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::double_double::DoubleDouble;
use crate::octuple::Octuple;

/// A field element usable as an algebra coefficient.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` when arithmetic is exact and `is_zero` can be trusted without a tolerance.
    const EXACT: bool;
    /// Backend name as accepted on the command line.
    const NAME: &'static str;

    /// Working precision for long product chains.
    type Work: Scalar<Work = Self::Work>;

    fn to_work(&self) -> Self::Work;
    /// Rounds a working-precision value back.
    fn from_work(w: &Self::Work) -> Self;

    /// Precision for the Faddeev-LeVerrier recursion.
    type Wide: Scalar;

    fn to_wide(&self) -> Self::Wide;
    fn from_wide(w: &Self::Wide) -> Self;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// Absolute value as a float, used for pivoting and tolerance checks.
    fn magnitude(&self) -> f64;
    fn to_json(&self) -> Value;

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Zero test: exact for exact backends, `|x| <= rel * scale` otherwise.
    fn is_negligible(&self, scale: f64, rel: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= rel * scale
        }
    }

    /// Parses a scalar literal: integer, decimal (`-1.25`) or ratio (`3/4`).
    fn parse_literal(text: &str) -> Option<Self> {
        parse_rational(text).map(|r| Self::from_rational(&r))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float64";
    type Work = DoubleDouble;

    fn to_work(&self) -> DoubleDouble {
        DoubleDouble::from(*self)
    }
    fn from_work(w: &DoubleDouble) -> Self {
        w.hi()
    }

    type Wide = Octuple;

    fn to_wide(&self) -> Octuple {
        Octuple::from(*self)
    }
    fn from_wide(w: &Octuple) -> Self {
        w.to_f64()
    }

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn magnitude(&self) -> f64 {
        f64::abs(*self)
    }
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
    fn parse_literal(text: &str) -> Option<Self> {
        // Decimal text goes through the std parser for correct rounding.
        match text.split_once('/') {
            None => {
                parse_rational(text)?;
                text.parse().ok()
            }
            Some(_) => parse_rational(text).map(|r| Self::from_rational(&r)),
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";
    type Work = BigRational;

    fn to_work(&self) -> Self {
        self.clone()
    }
    fn from_work(w: &Self) -> Self {
        w.clone()
    }

    type Wide = BigRational;

    fn to_wide(&self) -> Self {
        self.clone()
    }
    fn from_wide(w: &Self) -> Self {
        w.clone()
    }

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn magnitude(&self) -> f64 {
        Signed::abs(self).to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

/// Exact value of a literal: `12`, `-0.125`, `7/3`. Returns `None` on malformed
/// input or a zero denominator.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        let num = parse_digits(num)?;
        let den = parse_digits(den)?;
        if den.is_zero() {
            return None;
        }
        BigRational::new(num, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        let int = if int.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(int)?
        };
        let frac_val = if frac.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(frac)?
        };
        let scale = num_traits::pow(BigInt::from(10u8), frac.len());
        BigRational::new(int * &scale + frac_val, scale)
    } else {
        BigRational::from_integer(parse_digits(body)?)
    };
    Some(if negative { -value } else { value })
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Reads one coefficient from a JSON value (number or literal string).
pub fn scalar_from_json<S: Scalar>(v: &Value) -> Option<S> {
    match v {
        Value::Number(n) => {
            let text = n.to_string();
            // serde_json may print large floats in exponent form
            if text.contains(['e', 'E']) {
                n.as_f64()
                    .and_then(BigRational::from_float)
                    .map(|r| S::from_rational(&r))
            } else {
                S::parse_literal(&text)
            }
        }
        Value::String(s) => S::parse_literal(s),
        _ => None,
    }
}
