//! Elements of `DL(p,q)` and their arithmetic.
//!
//! Coefficients are stored densely: index `m` holds the coefficient of the
//! blade `e_A` where bit `i-1` of `m` is set iff `i` is in `A`. Multiplication
//! is then a signed XOR convolution and every conjugation is a sign flip by
//! popcount parity.

pub mod kernel;
mod signature;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use signature::{Signature, N_MAX};

use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;

/// A superposition of conjugations: bit `i-1` set negates `e_i`.
///
/// Composition is XOR; the empty mask is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ConjMask(u32);

impl ConjMask {
    pub const IDENTITY: ConjMask = ConjMask(0);

    pub const fn new(bits: u32) -> Self {
        Self(bits)
    }

    /// Mask negating the listed 1-based generators.
    pub fn from_generators(gens: &[usize]) -> Self {
        Self(gens.iter().fold(0, |m, &g| m | (1u32 << (g - 1))))
    }

    /// Mask negating a single 1-based generator.
    pub fn single(generator: usize) -> Self {
        Self(1u32 << (generator - 1))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn compose(self, other: ConjMask) -> ConjMask {
        ConjMask(self.0 ^ other.0)
    }

    /// 1-based generator indices negated by this mask.
    pub fn generators(self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    /// All `2^n` masks of a signature in increasing order.
    pub fn all(sig: Signature) -> impl Iterator<Item = ConjMask> {
        (0..sig.dim() as u32).map(ConjMask)
    }
}

impl fmt::Display for ConjMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", gens.join(","))
    }
}

/// An element `U = sum_A u_A e_A` of `DL(p,q)`.
#[derive(Clone, PartialEq)]
pub struct Element<S> {
    sig: Signature,
    coeffs: Vec<S>,
}

impl<S: Scalar> Element<S> {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            coeffs: vec![S::zero(); sig.dim()],
        }
    }

    pub fn one(sig: Signature) -> Self {
        Self::from_scalar(sig, S::one())
    }

    pub fn from_scalar(sig: Signature, s: S) -> Self {
        let mut e = Self::zero(sig);
        e.coeffs[0] = s;
        e
    }

    pub fn basis_blade(sig: Signature, mask: u32) -> Result<Self> {
        if mask as usize >= sig.dim() {
            return Err(AlgebraError::MaskOutOfRange { mask, n: sig.n() });
        }
        let mut e = Self::zero(sig);
        e.coeffs[mask as usize] = S::one();
        Ok(e)
    }

    /// Builds an element from `2^n` coefficients ordered by blade mask.
    pub fn from_coeffs(sig: Signature, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != sig.dim() {
            return Err(AlgebraError::CoefficientCount {
                expected: sig.dim(),
                got: coeffs.len(),
            });
        }
        Ok(Self { sig, coeffs })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, mask: u32) -> &S {
        &self.coeffs[mask as usize]
    }

    /// Same coefficient array read in another signature of the same size.
    pub fn reinterpret(&self, sig: Signature) -> Result<Self> {
        Self::from_coeffs(sig, self.coeffs.clone())
    }

    /// Coefficient-wise conversion to another backend.
    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Element<T> {
        Element {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(AlgebraError::SignatureMismatch(
                self.sig.to_string(),
                other.sig.to_string(),
            ));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Self {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        Ok(Self {
            sig: self.sig,
            coeffs: kernel::mul(self.sig, &self.coeffs, &other.coeffs),
        })
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// `self + s * 1`.
    pub fn add_scalar(&self, s: &S) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].clone() + s.clone();
        out
    }

    /// Keeps only the grade-`k` part.
    pub fn grade_project(&self, k: usize) -> Result<Self> {
        if k > self.sig.n() {
            return Err(AlgebraError::GradeOutOfRange { k, n: self.sig.n() });
        }
        Ok(Self {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| {
                    if m.count_ones() as usize == k {
                        c.clone()
                    } else {
                        S::zero()
                    }
                })
                .collect(),
        })
    }

    pub fn scalar_part(&self) -> S {
        self.coeffs[0].clone()
    }

    pub fn conjugate(&self, c: ConjMask) -> Result<Self> {
        if c.bits() & !self.sig.full_mask() != 0 {
            return Err(AlgebraError::MaskOutOfRange {
                mask: c.bits(),
                n: self.sig.n(),
            });
        }
        Ok(self.conj(c))
    }

    /// Conjugation for a mask already known to fit.
    pub(crate) fn conj(&self, c: ConjMask) -> Self {
        Self {
            sig: self.sig,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, x)| {
                    if (m as u32 & c.bits()).count_ones() & 1 == 1 {
                        -x.clone()
                    } else {
                        x.clone()
                    }
                })
                .collect(),
        }
    }

    /// `U * U^(k)`, which has no term containing `e_k`.
    pub fn eliminate_generator(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.sig.n() {
            return Err(AlgebraError::GeneratorOutOfRange {
                index: k,
                n: self.sig.n(),
            });
        }
        Ok(self * &self.conj(ConjMask::single(k)))
    }

    /// Splits `U = x + y e_n` with `x, y` in the subalgebra without `e_n`.
    /// Returns `None` for `n = 1`, where `x` and `y` are plain scalars; see
    /// [`Element::split_last_scalars`].
    pub fn split_last(&self) -> Option<(Self, Self)> {
        let sub = self.sig.drop_last()?;
        let half = sub.dim();
        Some((
            Self {
                sig: sub,
                coeffs: self.coeffs[..half].to_vec(),
            },
            Self {
                sig: sub,
                coeffs: self.coeffs[half..].to_vec(),
            },
        ))
    }

    /// `(u_0, u_1)` for an element of a one-generator algebra.
    pub fn split_last_scalars(&self) -> Option<(S, S)> {
        (self.sig.n() == 1).then(|| (self.coeffs[0].clone(), self.coeffs[1].clone()))
    }

    /// Restriction to the subalgebra without `e_n`; `None` if `n = 1`.
    pub fn truncate_last(&self) -> Option<Self> {
        self.split_last().map(|(x, _)| x)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    /// Sum of coefficient magnitudes. Submultiplicative: `|UV|_1 <= |U|_1 |V|_1`.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).sum()
    }

    /// Largest magnitude among non-scalar coefficients.
    pub fn non_scalar_norm(&self) -> f64 {
        self.coeffs[1..]
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    /// Exact equality for exact backends; otherwise
    /// `max|a - b| <= rel * max(|a|, |b|, 1)`.
    pub fn approx_eq(&self, other: &Self, rel: f64) -> bool {
        if self.sig != other.sig {
            return false;
        }
        if S::EXACT {
            return self == other;
        }
        let scale = self.max_norm().max(other.max_norm()).max(1.0);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| (a.clone() - b.clone()).magnitude() <= rel * scale)
    }
}

impl<S: fmt::Debug> fmt::Debug for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(DL({}), {:?})", self.sig, self.coeffs)
    }
}

/// Canonical expression form for `n <= 9`; a bracketed coefficient list beyond.
impl<S: Scalar> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format_element(self))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, S: Scalar> $trait<&'a Element<S>> for &'a Element<S> {
            type Output = Element<S>;

            /// Panics on a signature mismatch; use the `checked_` form to recover.
            fn $method(self, rhs: &'a Element<S>) -> Element<S> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<S: Scalar> $trait for Element<S> {
            type Output = Element<S>;

            fn $method(self, rhs: Element<S>) -> Element<S> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<S: Scalar> Neg for &Element<S> {
    type Output = Element<S>;

    fn neg(self) -> Element<S> {
        Element {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<S: Scalar> Neg for Element<S> {
    type Output = Element<S>;

    fn neg(self) -> Element<S> {
        -&self
    }
}
