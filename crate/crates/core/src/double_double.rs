//! Double-double working precision for float determinants.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::Value;
use twofloat::TwoFloat;

use crate::octuple::Octuple;
use crate::scalar::Scalar;

/// An unevaluated sum `hi + lo` of two binary64 values, about 106 bits of
/// significand.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct DoubleDouble(TwoFloat);

impl DoubleDouble {
    pub fn hi(&self) -> f64 {
        self.0.hi()
    }

    pub fn lo(&self) -> f64 {
        self.0.lo()
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self(TwoFloat::from(x))
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

/// Long division with one correction step. `TwoFloat / TwoFloat` loses the
/// low word for some operands (e.g. `1/3`), so only the `TwoFloat / f64`
/// kernel is used.
impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let b = rhs.0;
        let q1 = self.0 / b.hi();
        if b.lo() == 0.0 || !q1.hi().is_finite() {
            return Self(q1);
        }
        let r = self.0 - q1 * b;
        Self(q1 + r / b.hi())
    }
}

impl Scalar for DoubleDouble {
    const EXACT: bool = false;
    const NAME: &'static str = "double-double";
    type Work = DoubleDouble;

    fn to_work(&self) -> Self {
        *self
    }
    fn from_work(w: &Self) -> Self {
        *w
    }

    type Wide = Octuple;

    fn to_wide(&self) -> Octuple {
        Octuple::from(*self)
    }
    fn from_wide(w: &Octuple) -> Self {
        let hi = w.to_f64();
        Self(TwoFloat::from(hi) + TwoFloat::from((*w - Octuple::from(hi)).to_f64()))
    }
    fn zero() -> Self {
        Self::from(0.0)
    }
    fn one() -> Self {
        Self::from(1.0)
    }
    fn from_i64(v: i64) -> Self {
        Self(TwoFloat::from(v))
    }
    fn from_rational(r: &BigRational) -> Self {
        let hi = r.to_f64().unwrap_or(f64::NAN);
        let lo = BigRational::from_float(hi)
            .and_then(|h| (r - h).to_f64())
            .unwrap_or(0.0);
        Self(TwoFloat::from(hi) + TwoFloat::from(lo))
    }
    fn is_zero(&self) -> bool {
        self.hi() == 0.0
    }
    fn is_negative(&self) -> bool {
        self.hi() < 0.0
    }
    fn magnitude(&self) -> f64 {
        self.hi().abs()
    }
    fn to_json(&self) -> Value {
        self.hi().to_json()
    }
}
