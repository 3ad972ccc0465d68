//! Random elements for tests, benchmarks and the CLI `--random` input.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::algebra::{Element, Signature};

/// Coefficients uniform in `[-1, 1)`.
pub fn random_float<R: Rng + ?Sized>(sig: Signature, rng: &mut R) -> Element<f64> {
    let coeffs = (0..sig.dim())
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    Element::from_coeffs(sig, coeffs).expect("dimension matches")
}

/// Coefficients `a/b` with `|a| <= max_num`, `1 <= b <= max_den`.
pub fn random_rational<R: Rng + ?Sized>(
    sig: Signature,
    rng: &mut R,
    max_num: i64,
    max_den: i64,
) -> Element<BigRational> {
    let coeffs = (0..sig.dim())
        .map(|_| {
            let a = rng.random_range(-max_num..=max_num);
            let b = rng.random_range(1..=max_den);
            BigRational::new(BigInt::from(a), BigInt::from(b))
        })
        .collect();
    Element::from_coeffs(sig, coeffs).expect("dimension matches")
}

/// Integer coefficients in `[-bound, bound]`, each zero with probability
/// `1 - density`.
pub fn random_sparse_int<R: Rng + ?Sized>(
    sig: Signature,
    rng: &mut R,
    bound: i64,
    density: f64,
) -> Element<BigRational> {
    let coeffs = (0..sig.dim())
        .map(|_| {
            let v = if rng.random_bool(density) {
                rng.random_range(-bound..=bound)
            } else {
                0
            };
            BigRational::from_integer(BigInt::from(v))
        })
        .collect();
    Element::from_coeffs(sig, coeffs).expect("dimension matches")
}
