//! Octuple (IEEE binary256) precision for the Faddeev-LeVerrier recursion.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use f256::f256;
use num_rational::BigRational;
use serde_json::Value;

use crate::double_double::DoubleDouble;
use crate::scalar::Scalar;

/// 237-bit significand, exponent range about `10^±78913`.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct Octuple(f256);

impl Octuple {
    /// Nearest binary64 value.
    pub fn to_f64(self) -> f64 {
        if self.0.eq_zero() {
            return 0.0;
        }
        self.0.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl From<f64> for Octuple {
    fn from(x: f64) -> Self {
        Self(f256::from(x))
    }
}

impl From<DoubleDouble> for Octuple {
    fn from(x: DoubleDouble) -> Self {
        Self(f256::from(x.hi()) + f256::from(x.lo()))
    }
}

impl fmt::Display for Octuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for Octuple {
            type Output = Self;
            fn $f(self, rhs: Self) -> Self {
                Self(self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for Octuple {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

fn parse_int(text: &str) -> f256 {
    text.parse().unwrap_or(f256::NAN)
}

impl Scalar for Octuple {
    const EXACT: bool = false;
    const NAME: &'static str = "octuple";
    type Work = Octuple;
    type Wide = Octuple;

    fn to_work(&self) -> Self {
        *self
    }
    fn from_work(w: &Self) -> Self {
        *w
    }
    fn to_wide(&self) -> Self {
        *self
    }
    fn from_wide(w: &Self) -> Self {
        *w
    }
    fn zero() -> Self {
        Self(f256::ZERO)
    }
    fn one() -> Self {
        Self(f256::ONE)
    }
    fn from_i64(v: i64) -> Self {
        Self(f256::from(v))
    }
    fn from_rational(r: &BigRational) -> Self {
        Self(parse_int(&r.numer().to_string()) / parse_int(&r.denom().to_string()))
    }
    fn is_zero(&self) -> bool {
        self.0.eq_zero()
    }
    fn is_negative(&self) -> bool {
        !self.0.eq_zero() && self.0.is_sign_negative()
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn to_json(&self) -> Value {
        self.to_f64().to_json()
    }
}
