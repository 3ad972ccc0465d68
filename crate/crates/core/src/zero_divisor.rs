//! Units vs. zero divisors, with explicit witnesses.
//!
//! A nonzero `U` is a zero divisor exactly when `Det(U) = 0`. Witnesses are
//! built greedily by eliminating generators with conjugate products; each
//! candidate is verified by multiplication, and the matrix kernel is used
//! when the greedy path only produces zero candidates.

use serde_json::{json, Value};

use crate::algebra::{ConjMask, Element};
use crate::char_ops::{det_recursive, is_singular};
use crate::error::{AlgebraError, Result};
use crate::matrix_rep::kernel_witness_with;
use crate::scalar::Scalar;
use crate::tolerance::Tolerance;

/// How a witness was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMethod {
    ConjugateElimination,
    MatrixKernel,
}

impl WitnessMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessMethod::ConjugateElimination => "conjugate-elimination",
            WitnessMethod::MatrixKernel => "matrix-kernel",
        }
    }
}

#[derive(Debug, Clone)]
pub struct WitnessReport<S> {
    pub is_unit: bool,
    pub det: S,
    /// `V != 0` with `U V = 0`; `None` for units.
    pub witness: Option<Element<S>>,
    /// Conjugates of `U` whose product is the witness, in increasing mask
    /// order. Empty for kernel-derived witnesses.
    pub witness_path: Vec<ConjMask>,
    pub method: Option<WitnessMethod>,
}

impl<S: Scalar> WitnessReport<S> {
    /// `{is_unit, det, witness, witness_path, method}`; the witness is a
    /// coefficient array or `null`, path entries are integer masks.
    pub fn to_json(&self) -> Value {
        json!({
            "is_unit": self.is_unit,
            "det": self.det.to_json(),
            "witness": self
                .witness
                .as_ref()
                .map(|w| Value::Array(w.coeffs().iter().map(Scalar::to_json).collect())),
            "witness_path": self.witness_path.iter().map(|m| m.bits()).collect::<Vec<_>>(),
            "method": self.method.map(WitnessMethod::as_str),
        })
    }
}

/// `U V = 0` up to the backend's notion of zero.
pub fn verify_witness<S: Scalar>(u: &Element<S>, v: &Element<S>, tol: &Tolerance) -> bool {
    if v.is_zero() {
        return false;
    }
    let uv = u * v;
    if S::EXACT {
        return uv.is_zero();
    }
    uv.max_norm() <= tol.witness * u.max_norm() * v.max_norm()
}

/// Product of the conjugates `U^(m)` for the masks in `path`.
fn conjugate_product<S: Scalar>(u: &Element<S>, path: &[ConjMask]) -> Element<S> {
    path.iter()
        .fold(Element::one(u.signature()), |acc, &m| &acc * &u.conj(m))
}

/// Masks of the conjugates making up `M W^(j)` when `M` is the product over
/// `path`: `path`, then `{j}`, then `{m xor j}` for `m` in `path`.
fn extend_path(path: &[ConjMask], j: usize) -> Vec<ConjMask> {
    let jm = ConjMask::single(j);
    let mut out: Vec<ConjMask> = path.to_vec();
    out.push(jm);
    out.extend(path.iter().map(|m| m.compose(jm)));
    out.sort();
    out
}

fn is_zero_elem<S: Scalar>(x: &Element<S>, scale: f64, tol: &Tolerance) -> bool {
    x.coeffs()
        .iter()
        .all(|c| c.is_negligible(scale, tol.witness))
}

/// Greedy elimination search. Stage by stage, with `W = U M` where `M` is the
/// product of the conjugates in `path`: if `W W^(j) = 0` for some remaining
/// generator `j`, then `M W^(j)` is a candidate witness; otherwise
/// `W <- W W^(j)` for the smallest remaining `j` and continue.
fn greedy_witness<S: Scalar>(
    u: &Element<S>,
    tol: &Tolerance,
) -> Option<(Element<S>, Vec<ConjMask>)> {
    let n = u.signature().n();
    let mut remaining: Vec<usize> = (1..=n).collect();
    let mut path: Vec<ConjMask> = Vec::new();
    let mut w = u.clone();
    let mut w_scale = u.max_norm();
    while !remaining.is_empty() {
        let products: Vec<(usize, Element<S>)> = remaining
            .iter()
            .map(|&j| (j, &w * &w.conj(ConjMask::single(j))))
            .collect();
        let mut any_zero = false;
        for (j, prod) in &products {
            if !is_zero_elem(prod, w_scale * w_scale, tol) {
                continue;
            }
            any_zero = true;
            let cand_path = extend_path(&path, *j);
            let cand = conjugate_product(u, &cand_path);
            if verify_witness(u, &cand, tol) {
                return Some((cand, cand_path));
            }
        }
        if any_zero {
            // continuing would multiply by a zero product
            return None;
        }
        let (j, next) = products.into_iter().next().expect("remaining is non-empty");
        path = extend_path(&path, j);
        w_scale = next.max_norm();
        w = next;
        remaining.retain(|&r| r != j);
    }
    None
}

/// Unit / zero-divisor classification with a verified witness.
pub fn classify<S: Scalar>(u: &Element<S>) -> Result<WitnessReport<S>> {
    classify_with(u, &Tolerance::default())
}

pub fn classify_with<S: Scalar>(u: &Element<S>, tol: &Tolerance) -> Result<WitnessReport<S>> {
    if u.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    let det = det_recursive(u);
    if !is_singular(&det, u, tol.singular) {
        return Ok(WitnessReport {
            is_unit: true,
            det,
            witness: None,
            witness_path: Vec::new(),
            method: None,
        });
    }
    if let Some((v, path)) = greedy_witness(u, tol) {
        return Ok(WitnessReport {
            is_unit: false,
            det,
            witness: Some(v),
            witness_path: path,
            method: Some(WitnessMethod::ConjugateElimination),
        });
    }
    let v = kernel_witness_with(u, tol.singular).filter(|v| verify_witness(u, v, tol));
    Ok(WitnessReport {
        is_unit: false,
        det,
        witness: v,
        witness_path: Vec::new(),
        method: Some(WitnessMethod::MatrixKernel),
    })
}

/// `Det(U) = 0`, exactly or under the float singularity threshold.
pub fn is_zero_divisor<S: Scalar>(u: &Element<S>) -> bool {
    is_zero_divisor_with(u, &Tolerance::default())
}

pub fn is_zero_divisor_with<S: Scalar>(u: &Element<S>, tol: &Tolerance) -> bool {
    is_singular(&det_recursive(u), u, tol.singular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use num_rational::BigRational;

    fn el(p: usize, q: usize, c: &[i64]) -> Element<BigRational> {
        let s = Signature::new(p, q).unwrap();
        Element::from_coeffs(
            s,
            c.iter()
                .map(|&x| <BigRational as Scalar>::from_i64(x))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn split_complex_witness() {
        let r = classify(&el(1, 0, &[1, 1])).unwrap();
        assert!(!r.is_unit);
        assert_eq!(r.witness, Some(el(1, 0, &[1, -1])));
        assert_eq!(r.witness_path, vec![ConjMask::single(1)]);
    }

    #[test]
    fn product_of_idempotent_factors() {
        // (1 + e1)(1 + e2) in DL(2,0): U U^(1) = 0
        let u = el(2, 0, &[1, 1, 1, 1]);
        let r = classify(&u).unwrap();
        assert_eq!(r.witness, Some(el(2, 0, &[1, -1, 1, -1])));
        assert_eq!(r.method, Some(WitnessMethod::ConjugateElimination));
        // the full adjoint vanishes here, so only the greedy early exit works
        assert!(crate::char_ops::adjoint(&u).is_zero());
    }

    #[test]
    fn unit_reports_no_witness() {
        let r = classify(&el(1, 1, &[2, 0, 1, 0])).unwrap();
        assert!(r.is_unit);
        assert_eq!(r.det, <BigRational as Scalar>::from_i64(25));
        assert!(r.witness.is_none());
        assert_eq!(
            r.to_json().to_string(),
            r#"{"det":"25","is_unit":true,"method":null,"witness":null,"witness_path":[]}"#
        );
    }

    #[test]
    fn zero_input_rejected() {
        assert!(matches!(
            classify(&el(1, 0, &[0, 0])),
            Err(AlgebraError::ZeroInput)
        ));
    }

    #[test]
    fn zero_divisor_predicate() {
        assert!(is_zero_divisor(&el(1, 0, &[1, 1])));
        assert!(!is_zero_divisor(&el(0, 1, &[1, 1])));
    }

    #[test]
    fn deeper_elimination_stage() {
        // 1 + e1 + e2 - 3e12 in DL(2,0): U U^(1) and U U^(2) are both nonzero,
        // so the witness comes from the second stage: U^(1) U^(2) U^(12).
        let u = el(2, 0, &[1, 1, 1, -3]);
        assert!(!u.eliminate_generator(1).unwrap().is_zero());
        assert!(!u.eliminate_generator(2).unwrap().is_zero());
        let r = classify(&u).unwrap();
        assert_eq!(
            r.witness_path,
            vec![ConjMask::new(1), ConjMask::new(2), ConjMask::new(3)]
        );
        let v = r.witness.unwrap();
        assert!((&u * &v).is_zero() && !v.is_zero());
    }

    #[test]
    fn float_backend() {
        let s = Signature::new(1, 0).unwrap();
        let u = Element::from_coeffs(s, vec![2.0, 2.0]).unwrap();
        let r = classify(&u).unwrap();
        let v = r.witness.unwrap();
        assert!((&u * &v).max_norm() < 1e-12);
    }
}
