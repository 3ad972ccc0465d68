//! Element-literal syntax: parsing, binding to a signature, and the
//! canonical formatter used for all textual output.

mod parser;

use thiserror::Error;

pub use parser::{parse, Expr, ExprKind};

use crate::algebra::{Element, Signature};
use crate::scalar::Scalar;

/// Largest generator count expressible with single-digit blade tokens.
pub const MAX_SURFACE_N: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("SYNTAX_ERROR at byte {offset}: expected one of [{}], found {found}", expected.join(", "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error(
        "BLADE_ERROR at byte {offset}: {token:?} needs strictly increasing generator digits 1-9"
    )]
    Blade { offset: usize, token: String },

    #[error("SYNTAX_ERROR at byte {offset}: malformed number {text:?}")]
    Literal { offset: usize, text: String },

    #[error("SYNTAX_ERROR: empty expression")]
    Empty,

    #[error("GENERATOR_OUT_OF_RANGE: e{index} at byte {offset} but n = {n}")]
    GeneratorOutOfRange {
        index: usize,
        n: usize,
        offset: usize,
    },
}

impl ExprError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Syntax { .. } | Self::Literal { .. } | Self::Empty => "SYNTAX_ERROR",
            Self::Blade { .. } => "BLADE_ERROR",
            Self::GeneratorOutOfRange { .. } => "GENERATOR_OUT_OF_RANGE",
        }
    }
}

/// Evaluates a syntax tree in `DL(p,q)`.
pub fn bind<S: Scalar>(expr: &Expr, sig: Signature) -> Result<Element<S>, ExprError> {
    Ok(match &expr.kind {
        ExprKind::Literal { text, value } => {
            let s = S::parse_literal(text).unwrap_or_else(|| S::from_rational(value));
            Element::from_scalar(sig, s)
        }
        ExprKind::Blade(indices) => {
            let mut mask = 0u32;
            for &i in indices {
                if i > sig.n() {
                    return Err(ExprError::GeneratorOutOfRange {
                        index: i,
                        n: sig.n(),
                        offset: expr.offset,
                    });
                }
                mask |= 1 << (i - 1);
            }
            Element::basis_blade(sig, mask).expect("mask checked against n")
        }
        ExprKind::Neg(inner) => -bind::<S>(inner, sig)?,
        ExprKind::Add(a, b) => &bind::<S>(a, sig)? + &bind::<S>(b, sig)?,
        ExprKind::Sub(a, b) => &bind::<S>(a, sig)? - &bind::<S>(b, sig)?,
        ExprKind::Mul(a, b) => &bind::<S>(a, sig)? * &bind::<S>(b, sig)?,
    })
}

/// `parse` followed by `bind`.
pub fn parse_element<S: Scalar>(text: &str, sig: Signature) -> Result<Element<S>, ExprError> {
    bind(&parse(text)?, sig)
}

/// Blade token for a mask, e.g. `0b101 -> "e13"`.
pub fn blade_name(mask: u32) -> String {
    let digits: String = (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b + 1).to_string())
        .collect();
    format!("e{digits}")
}

/// Canonical text: nonzero terms in increasing blade-mask order, `c*eA` with
/// the coefficient omitted when it is 1. Elements with more than nine
/// generators fall back to a bracketed coefficient list.
pub fn format_element<S: Scalar>(u: &Element<S>) -> String {
    if u.signature().n() > MAX_SURFACE_N {
        let cells: Vec<String> = u.coeffs().iter().map(|c| c.to_string()).collect();
        return format!("[{}]", cells.join(", "));
    }
    let mut out = String::new();
    for (mask, c) in u.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        if mask == 0 {
            out.push_str(&mag.to_string());
        } else {
            if mag != S::one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&blade_name(mask as u32));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
