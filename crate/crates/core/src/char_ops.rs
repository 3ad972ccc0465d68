//! Representation-free trace, determinant, characteristic polynomial,
//! adjoint and inverse.
//!
//! Everything in this module works inside the algebra through conjugations
//! and products; nothing builds a matrix.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::Value;

use crate::algebra::{ConjMask, Element, Signature};
use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;
use crate::tolerance::Tolerance;

/// `psi_U(lambda) = sum_k c_k lambda^k`, stored as `[c_0, ..., c_N]`.
#[derive(Clone, PartialEq, Debug)]
pub struct CharPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> CharPoly<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_0`, the determinant.
    pub fn constant(&self) -> &S {
        &self.coeffs[0]
    }

    /// Evaluates the polynomial at an algebra element (Horner).
    pub fn evaluate(&self, x: &Element<S>) -> Element<S> {
        let sig = x.signature();
        self.coeffs
            .iter()
            .rev()
            .fold(Element::zero(sig), |acc, c| (&acc * x).add_scalar(c))
    }

    /// Coefficient-wise comparison, exact on exact backends.
    pub fn approx_eq(&self, other: &Self, rel: f64) -> bool {
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        if S::EXACT {
            return self == other;
        }
        let scale = self
            .coeffs
            .iter()
            .chain(&other.coeffs)
            .map(Scalar::magnitude)
            .fold(1.0, f64::max);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| (a.clone() - b.clone()).magnitude() <= rel * scale)
    }

    /// `[c_0, ..., c_N]`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }
}

/// Highest degree first, e.g. `λ^2 - 3*λ + 1/2`.
impl<S: Scalar> fmt::Display for CharPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag == S::one();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("λ")?;
                    } else {
                        write!(f, "λ^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `Tr(U) = N <U>_0`.
pub fn trace<S: Scalar>(u: &Element<S>) -> S {
    u.scalar_part() * S::from_i64(u.signature().dim() as i64)
}

/// Sum of all `2^n` conjugates; a scalar element equal to `Tr(U)`.
pub fn trace_by_conjugates<S: Scalar>(u: &Element<S>) -> Element<S> {
    ConjMask::all(u.signature()).fold(Element::zero(u.signature()), |acc, c| &acc + &u.conj(c))
}

fn conjugates<S: Scalar>(u: &Element<S>, skip_identity: bool) -> Vec<Element<S>> {
    let start = u32::from(skip_identity);
    let masks = start..u.signature().dim() as u32;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        masks
            .into_par_iter()
            .map(|m| u.conj(ConjMask::new(m)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        masks.map(|m| u.conj(ConjMask::new(m))).collect()
    }
}

fn ln_norm(x: f64) -> f64 {
    if x > 0.0 {
        x.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// Fails with `GRADE_LEAK` if `p` has a non-scalar part beyond
/// `rel * exp(ln_scale)` (any nonzero part on exact backends).
fn ensure_scalar<S: Scalar>(p: &Element<S>, ln_scale: f64, rel: f64) -> Result<()> {
    let residue = p.non_scalar_norm();
    let leaked = if S::EXACT {
        p.coeffs()[1..].iter().any(|c| !c.is_zero())
    } else {
        residue > 0.0 && ln_norm(residue) > rel.ln() + ln_scale
    };
    if leaked {
        Err(AlgebraError::GradeLeak { residue })
    } else {
        Ok(())
    }
}

fn widen<S: Scalar>(u: &Element<S>) -> Element<S::Work> {
    u.convert(Scalar::to_work)
}

fn narrow<S: Scalar>(w: &Element<S::Work>) -> Element<S> {
    w.convert(S::from_work)
}

fn pow2<T: Scalar>(e: i64) -> T {
    let p = BigInt::one() << e.unsigned_abs() as usize;
    let r = if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    };
    T::from_rational(&r)
}

/// `x * 2^e`, in steps small enough to stay inside the float exponent range.
fn mul_pow2<T: Scalar>(mut x: T, mut e: i64) -> T {
    if x.is_zero() {
        return x;
    }
    while e != 0 {
        let step = e.clamp(-512, 512);
        x = x * pow2::<T>(step);
        e -= step;
    }
    x
}

/// Float inputs are divided by the power of two nearest their 2-norm so that
/// long products neither overflow nor underflow early; the exponent is
/// returned. Exact inputs are left alone.
fn widen_scaled<S: Scalar>(u: &Element<S>) -> (Element<S::Work>, i64) {
    let w = widen(u);
    let max = u.max_norm();
    if S::EXACT || max == 0.0 || !max.is_finite() {
        return (w, 0);
    }
    let l2 = max
        * u.coeffs()
            .iter()
            .map(|c| (c.magnitude() / max).powi(2))
            .sum::<f64>()
            .sqrt();
    let k = l2.log2().round() as i64;
    if k == 0 {
        (w, 0)
    } else {
        (w.scale(&pow2(-k)), k)
    }
}

/// `Det(U)` as the product of all `2^n` conjugates, multiplied in increasing
/// mask order.
pub fn det_full_product<S: Scalar>(u: &Element<S>) -> Result<S> {
    det_full_product_with(u, &Tolerance::default())
}

pub fn det_full_product_with<S: Scalar>(u: &Element<S>, tol: &Tolerance) -> Result<S> {
    let (w, k) = widen_scaled(u);
    let d = full_product(&w, tol)?;
    Ok(mul_pow2(S::from_work(&d), k * u.signature().dim() as i64))
}

fn full_product<T: Scalar>(u: &Element<T>, tol: &Tolerance) -> Result<T> {
    let factors = conjugates(u, false);
    let ln_scale = factors.len() as f64 * ln_norm(u.l1_norm());
    let product = factors
        .iter()
        .fold(Element::one(u.signature()), |acc, f| &acc * f);
    ensure_scalar(&product, ln_scale, tol.grade_leak)?;
    Ok(product.scalar_part())
}

/// `x^2 - e_n^2 y^2` for `U = x + y e_n`, computed in the subalgebra without
/// `e_n`. Equal to `U U^(n)` restricted to that subalgebra.
fn eliminate_last<S: Scalar>(u: &Element<S>) -> Option<Element<S>> {
    let n = u.signature().n();
    let (x, y) = u.split_last()?;
    let xx = &x * &x;
    let yy = &y * &y;
    Some(
        match u.signature().square(n).expect("n is a valid generator") {
            1 => &xx - &yy,
            _ => &xx + &yy,
        },
    )
}

fn eliminate_last_scalar<S: Scalar>(sig: Signature, a: S, b: S) -> S {
    let aa = a.clone() * a;
    let bb = b.clone() * b;
    if sig.p() == 1 {
        aa - bb
    } else {
        aa + bb
    }
}

/// `Det(U)` by repeated elimination of the highest generator:
/// `Det_n(U) = Det_{n-1}(U U^(n))`.
pub fn det_recursive<S: Scalar>(u: &Element<S>) -> S {
    let (w, k) = widen_scaled(u);
    mul_pow2(S::from_work(&recursive(&w)), k * u.signature().dim() as i64)
}

fn recursive<T: Scalar>(u: &Element<T>) -> T {
    let mut cur = u.clone();
    loop {
        match eliminate_last(&cur) {
            Some(w) => cur = w,
            None => {
                let (a, b) = cur.split_last_scalars().expect("one generator left");
                return eliminate_last_scalar(cur.signature(), a, b);
            }
        }
    }
}

/// `Adj(U)`: the product of the `2^n - 1` nontrivial conjugates, in increasing
/// mask order.
pub fn adjoint<S: Scalar>(u: &Element<S>) -> Element<S> {
    let w = widen(u);
    let adj = conjugates(&w, true)
        .iter()
        .fold(Element::one(u.signature()), |acc, f| &acc * f);
    narrow(&adj)
}

/// Zero-pads an element of the subalgebra without `e_n` into `sig`.
fn lift<S: Scalar>(sub: Element<S>, sig: Signature) -> Element<S> {
    let mut coeffs = sub.into_coeffs();
    coeffs.resize(sig.dim(), S::zero());
    Element::from_coeffs(sig, coeffs).expect("padded to full dimension")
}

/// `Adj(U)` via `Adj(U) = U^(n) Adj'(U U^(n))`, with `Adj'` the adjoint of the
/// subalgebra without `e_n`. Same value as [`adjoint`] in `O(4^n)` instead of
/// `O(8^n)` coefficient products.
pub fn adjoint_recursive<S: Scalar>(u: &Element<S>) -> Element<S> {
    narrow(&adjoint_rec(&widen(u)))
}

fn adjoint_rec<T: Scalar>(u: &Element<T>) -> Element<T> {
    let sig = u.signature();
    let top = u.conj(ConjMask::single(sig.n()));
    match eliminate_last(u) {
        None => top,
        Some(w) => &top * &lift(adjoint_rec(&w), sig),
    }
}

/// Coefficients of `prod_A (U^(A) - lambda)` by expanding one factor at a
/// time; every coefficient must come out scalar.
pub fn charpoly_symmetric<S: Scalar>(u: &Element<S>) -> Result<CharPoly<S>> {
    charpoly_symmetric_with(u, &Tolerance::default())
}

pub fn charpoly_symmetric_with<S: Scalar>(u: &Element<S>, tol: &Tolerance) -> Result<CharPoly<S>> {
    let w = widen(u);
    let sig = u.signature();
    let factors = conjugates(&w, false);
    // poly[k] is the element coefficient of lambda^k
    let mut poly: Vec<Element<S::Work>> = vec![Element::one(sig)];
    for f in &factors {
        let mut next = Vec::with_capacity(poly.len() + 1);
        for k in 0..=poly.len() {
            let mut c = match poly.get(k) {
                Some(p) => p * f,
                None => Element::zero(sig),
            };
            if k > 0 {
                c = &c - &poly[k - 1];
            }
            next.push(c);
        }
        poly = next;
    }
    let ln_scale = factors.len() as f64 * ln_norm(u.l1_norm() + 1.0);
    for c in &poly {
        ensure_scalar(c, ln_scale, tol.grade_leak)?;
    }
    Ok(CharPoly::new(
        poly.iter()
            .map(|c| S::from_work(&c.scalar_part()))
            .collect(),
    ))
}

/// `psi_U` by the same elimination as [`det_recursive`], carried out over
/// polynomials in `lambda`: `psi_U = prod_A W^(A)` with
/// `W = (x - lambda)^2 - e_n^2 y^2` in the subalgebra without `e_n`.
/// Uses `O(n 4^n)` scalar products and never leaves the scalar part.
pub fn charpoly_recursive<S: Scalar>(u: &Element<S>) -> CharPoly<S> {
    let (w, k) = widen_scaled(u);
    let big_n = u.signature().dim() as i64;
    let coeffs = poly_recursive(&w)
        .iter()
        .enumerate()
        .map(|(j, c)| mul_pow2(S::from_work(c), k * (big_n - j as i64)))
        .collect();
    CharPoly::new(coeffs)
}

/// Element with polynomial coefficients, `a[mask][k]` the coefficient of
/// `lambda^k e_mask`.
type PolyElement<T> = Vec<Vec<T>>;

fn poly_recursive<T: Scalar>(u: &Element<T>) -> Vec<T> {
    let mut sig = u.signature();
    let mut cur: PolyElement<T> = u.coeffs().iter().map(|c| vec![c.clone()]).collect();
    cur[0].push(-T::one());
    loop {
        let sub = sig.drop_last();
        let sign = |a: u32, b: u32| sub.map_or(1, |s| s.blade_sign(a, b));
        let (x, y) = cur.split_at(cur.len() / 2);
        let mut w = poly_square(x, &sign);
        let yy = poly_square(y, &sign);
        let plus = sig.square(sig.n()).expect("n is a valid generator") < 0;
        for (acc, p) in w.iter_mut().zip(&yy) {
            poly_add_into(acc, p, plus);
        }
        match sub {
            Some(s) => {
                sig = s;
                cur = w;
            }
            None => {
                let mut out = w.swap_remove(0);
                out.resize(u.signature().dim() + 1, T::zero());
                return out;
            }
        }
    }
}

fn poly_square<T: Scalar>(a: &[Vec<T>], sign: &impl Fn(u32, u32) -> i8) -> PolyElement<T> {
    let mut out: PolyElement<T> = vec![Vec::new(); a.len()];
    let live: Vec<usize> = (0..a.len())
        .filter(|&i| a[i].iter().any(|c| !c.is_zero()))
        .collect();
    for (pos, &i) in live.iter().enumerate() {
        for &j in &live[pos..] {
            let mut p = poly_mul(&a[i], &a[j]);
            if i != j {
                let two = T::from_i64(2);
                p.iter_mut().for_each(|c| *c = c.clone() * two.clone());
            }
            poly_add_into(&mut out[i ^ j], &p, sign(i as u32, j as u32) > 0);
        }
    }
    out
}

fn poly_mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// `acc += p` or `acc -= p`.
fn poly_add_into<T: Scalar>(acc: &mut Vec<T>, p: &[T], add: bool) {
    if acc.len() < p.len() {
        acc.resize(p.len(), T::zero());
    }
    for (a, c) in acc.iter_mut().zip(p) {
        *a = if add {
            a.clone() + c.clone()
        } else {
            a.clone() - c.clone()
        };
    }
}

/// Output of the in-algebra Faddeev-LeVerrier recursion.
#[derive(Clone, Debug)]
pub struct FlResult<S> {
    /// `psi_U` in the same convention as [`charpoly_symmetric`]:
    /// `c_N = 1` and `c_{N-k} = -fl_coeffs[k-1]`.
    pub charpoly: CharPoly<S>,
    /// The recursion's own sequence `c_1..c_N`, `c_k = (N/k) <U_(k)>_0`.
    pub fl_coeffs: Vec<S>,
    /// `c_{N-1} - U_(N-1)`.
    pub adjoint: Element<S>,
    /// `-c_N`.
    pub det: S,
}

/// `U_(1) = U`, `U_(k+1) = U (U_(k) - c_k)`, `c_k = (N/k) <U_(k)>_0`.
///
/// The recursion cancels heavily (relative errors around `10^52` times the
/// unit roundoff at `n = 6`), so float inputs run in [`Scalar::Wide`]
/// precision.
pub fn charpoly_fl<S: Scalar>(u: &Element<S>) -> FlResult<S> {
    let r = fl(&u.convert(Scalar::to_wide));
    let round = |v: &[S::Wide]| v.iter().map(S::from_wide).collect::<Vec<S>>();
    FlResult {
        charpoly: CharPoly::new(round(r.charpoly.coeffs())),
        fl_coeffs: round(&r.fl_coeffs),
        adjoint: r.adjoint.convert(S::from_wide),
        det: S::from_wide(&r.det),
    }
}

fn fl<T: Scalar>(u: &Element<T>) -> FlResult<T> {
    let sig = u.signature();
    let n = sig.dim();
    let big_n = T::from_i64(n as i64);
    let mut fl = Vec::with_capacity(n);
    let mut u_k = u.clone();
    let mut u_prev = u.clone();
    for k in 1..=n {
        let c_k = big_n.clone() * u_k.scalar_part() / T::from_i64(k as i64);
        fl.push(c_k.clone());
        if k < n {
            let next = u * &u_k.add_scalar(&-c_k);
            u_prev = std::mem::replace(&mut u_k, next);
        }
    }
    // after the loop u_prev = U_(N-1)
    let adjoint = (-&u_prev).add_scalar(&fl[n - 2]);
    let det = -fl[n - 1].clone();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    for (k, c) in fl.iter().enumerate() {
        coeffs[n - (k + 1)] = -c.clone();
    }
    FlResult {
        charpoly: CharPoly::new(coeffs),
        fl_coeffs: fl,
        adjoint,
        det,
    }
}

/// `|det| <= rel * max_norm(U)^N` on floats; `det == 0` on exact backends.
pub fn is_singular<S: Scalar>(det: &S, u: &Element<S>, rel: f64) -> bool {
    if S::EXACT {
        return det.is_zero();
    }
    singular_ln(ln_norm(det.magnitude()), u, rel)
}

fn singular_ln<S: Scalar>(ln_det: f64, u: &Element<S>, rel: f64) -> bool {
    let n = u.signature().dim() as f64;
    ln_det <= rel.ln() + n * ln_norm(u.max_norm())
}

/// `Adj(U) / Det(U)`.
pub fn inverse<S: Scalar>(u: &Element<S>) -> Result<Element<S>> {
    inverse_with(u, &Tolerance::default())
}

pub fn inverse_with<S: Scalar>(u: &Element<S>, tol: &Tolerance) -> Result<Element<S>> {
    let (w, k) = widen_scaled(u);
    let det_w = recursive(&w);
    let n = u.signature().dim() as i64;
    let singular = if S::EXACT {
        det_w.is_zero()
    } else {
        singular_ln(
            ln_norm(det_w.magnitude()) + (k * n) as f64 * std::f64::consts::LN_2,
            u,
            tol.singular,
        )
    };
    if singular {
        let det = mul_pow2(S::from_work(&det_w), k * n);
        return Err(AlgebraError::NotInvertible {
            det: det.to_string(),
        });
    }
    let inv = adjoint_rec(&w).scale(&(<S::Work as Scalar>::one() / det_w));
    Ok(narrow(&inv.scale(&pow2(-k))))
}

/// Checks `(U^(A))^-1 = (U^-1)^(A)`.
pub fn inverse_of_conjugate_check<S: Scalar>(u: &Element<S>, c: ConjMask) -> Result<bool> {
    inverse_of_conjugate_check_with(u, c, &Tolerance::default())
}

pub fn inverse_of_conjugate_check_with<S: Scalar>(
    u: &Element<S>,
    c: ConjMask,
    tol: &Tolerance,
) -> Result<bool> {
    let lhs = inverse_with(&u.conjugate(c)?, tol)?;
    let rhs = inverse_with(u, tol)?.conj(c);
    Ok(lhs.approx_eq(&rhs, tol.equality))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn q(x: i64) -> BigRational {
        <BigRational as Scalar>::from_i64(x)
    }

    fn el(s: Signature, c: &[i64]) -> Element<BigRational> {
        Element::from_coeffs(s, c.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn traces() {
        assert_eq!(trace(&el(sig(1, 1), &[3, 1, 0, 0])), q(12));
        assert_eq!(trace(&el(sig(1, 1), &[0, 0, 0, 1])), q(0));
        let u = el(sig(0, 1), &[5, 7]);
        assert_eq!(trace_by_conjugates(&u), el(sig(0, 1), &[10, 0]));
        let u = el(sig(2, 0), &[2, -1, 4, 3]);
        assert_eq!(
            trace_by_conjugates(&u),
            Element::from_scalar(sig(2, 0), trace(&u))
        );
        assert!(trace_by_conjugates(&Element::<f64>::zero(sig(1, 2))).is_zero());
    }

    #[test]
    fn determinant_closed_forms() {
        let (a, a1) = (3, -5);
        assert_eq!(det_recursive(&el(sig(0, 1), &[a, a1])), q(a * a + a1 * a1));
        assert_eq!(det_recursive(&el(sig(1, 0), &[a, a1])), q(a * a - a1 * a1));
        let (a, a1, a2, a12) = (2, -1, 3, 5);
        let want = ((a + a1) * (a + a1) + (a2 + a12) * (a2 + a12))
            * ((a - a1) * (a - a1) + (a2 - a12) * (a2 - a12));
        let u = el(sig(1, 1), &[a, a1, a2, a12]);
        assert_eq!(det_full_product(&u).unwrap(), q(want));
        assert_eq!(det_recursive(&u), q(want));
        assert_eq!(
            det_full_product(&Element::<BigRational>::one(sig(2, 1))).unwrap(),
            q(1)
        );
    }

    #[test]
    fn adjoint_small_n() {
        let u = el(sig(1, 0), &[4, 9]);
        assert_eq!(adjoint(&u), el(sig(1, 0), &[4, -9]));
        let u = el(sig(0, 2), &[1, 2, -3, 4]);
        let expect =
            &(&u.conj(ConjMask::new(1)) * &u.conj(ConjMask::new(2))) * &u.conj(ConjMask::new(3));
        assert_eq!(adjoint(&u), expect);
        let u = el(sig(1, 1), &[2, 7, -1, 3]);
        assert_eq!(
            &u * &adjoint(&u),
            Element::from_scalar(u.signature(), det_recursive(&u))
        );
        let u = el(sig(2, 1), &[2, 7, -1, 3, 0, 1, 1, -4]);
        assert_eq!(adjoint_recursive(&u), adjoint(&u));
    }

    #[test]
    fn fl_complex_numbers() {
        // U = a + a1 e1: c_1 = 2a, Adj = a - a1 e1, Det = a^2 + a1^2
        let u = el(sig(0, 1), &[3, 4]);
        let r = charpoly_fl(&u);
        assert_eq!(r.fl_coeffs[0], q(6));
        assert_eq!(r.adjoint, el(sig(0, 1), &[3, -4]));
        assert_eq!(r.det, q(25));
        // psi = lambda^2 - 6 lambda + 25
        assert_eq!(r.charpoly.coeffs(), &[q(25), q(-6), q(1)]);
        assert_eq!(charpoly_symmetric(&u).unwrap(), r.charpoly);
    }

    #[test]
    fn charpoly_of_e1() {
        let e1 = el(sig(0, 1), &[0, 1]);
        let p = charpoly_symmetric(&e1).unwrap();
        assert_eq!(p.coeffs(), &[q(1), q(0), q(1)]);
        assert_eq!(p.to_string(), "λ^2 + 1");
        assert!(p.evaluate(&e1).is_zero());
        let p = charpoly_symmetric(&el(sig(1, 0), &[0, 1])).unwrap();
        assert_eq!(p.to_string(), "λ^2 - 1");
        let p = CharPoly::new(vec![q(0), BigRational::new(1.into(), 2.into()), q(-3)]);
        assert_eq!(p.to_string(), "-3*λ^2 + 1/2*λ");
    }

    #[test]
    fn inverses() {
        let u = el(sig(0, 1), &[1, 1]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            inverse(&u).unwrap(),
            Element::from_coeffs(sig(0, 1), vec![half.clone(), -half]).unwrap()
        );
        assert!(matches!(
            inverse(&el(sig(1, 0), &[1, 1])),
            Err(AlgebraError::NotInvertible { .. })
        ));
        let f = Element::from_coeffs(sig(1, 0), vec![1.0, 1.0 - 1e-13]).unwrap();
        assert!(inverse(&f).is_err(), "near-singular floats are refused");
    }

    #[test]
    fn inverse_of_conjugate() {
        let u = el(sig(1, 1), &[2, 0, 1, 0]);
        assert!(inverse_of_conjugate_check(&u, ConjMask::single(2)).unwrap());
        assert!(inverse_of_conjugate_check(&u, ConjMask::IDENTITY).unwrap());
        assert!(inverse_of_conjugate_check(&el(sig(1, 0), &[1, 1]), ConjMask::single(1)).is_err());
    }

    #[test]
    fn grade_leak_detected() {
        let p = el(sig(1, 1), &[1, 0, 1, 0]);
        assert!(matches!(
            ensure_scalar(&p, 0.0, 1e-9),
            Err(AlgebraError::GradeLeak { .. })
        ));
        let f = Element::from_coeffs(sig(1, 0), vec![1.0, 1e-14]).unwrap();
        assert!(ensure_scalar(&f, 0.0, 1e-9).is_ok());
    }
}
