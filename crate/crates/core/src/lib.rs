//! Arithmetic in the commutative analogues `DL(p,q)` of Clifford algebras.
//!
//! `DL(p,q)` is the `2^(p+q)`-dimensional commutative algebra generated by
//! `e_1..e_n` with `e_i e_j = e_j e_i`, `e_i^2 = +1` for `i <= p` and `-1`
//! otherwise. The crate provides:
//!
//! * [`algebra`]: signatures, elements, products, grade projections and the
//!   `2^n` conjugations;
//! * [`matrix_rep`]: the faithful regular matrix representation, used as an
//!   independent oracle;
//! * [`char_ops`]: determinant, trace, characteristic polynomial, adjoint and
//!   inverse computed inside the algebra;
//! * [`zero_divisor`]: unit / zero-divisor classification with witnesses;
//! * [`expr`]: the element-literal grammar and canonical formatter.
//!
//! Coefficients are generic over [`Scalar`], implemented for `f64` and exact
//! [`BigRational`](num_rational::BigRational).
//!
//! ```
//! use dlpq_core::{char_ops, expr, Signature};
//! use num_rational::BigRational;
//!
//! let sig = Signature::new(0, 1).unwrap();
//! let u = expr::parse_element::<BigRational>("1 + e1", sig).unwrap();
//! assert_eq!(char_ops::inverse(&u).unwrap().to_string(), "1/2 - 1/2*e1");
//! ```

pub mod algebra;
pub mod char_ops;
pub mod double_double;
pub mod error;
pub mod expr;
pub mod matrix_rep;
pub mod octuple;
pub mod sample;
pub mod scalar;
pub mod tolerance;
pub mod zero_divisor;

pub use algebra::{ConjMask, Element, Signature, N_MAX};
pub use char_ops::CharPoly;
pub use error::AlgebraError;
pub use matrix_rep::RepMatrix;
pub use scalar::Scalar;
pub use tolerance::Tolerance;
pub use zero_divisor::WitnessReport;

pub use num_rational::BigRational;
