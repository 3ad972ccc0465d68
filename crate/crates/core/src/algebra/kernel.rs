//! Coefficient-level product kernels.
//!
//! Both kernels compute each output coefficient as the same ordered sum
//! `out[k] = sum_i a[i] * b[i ^ k] * sign(i, i ^ k)` over ascending `i`, so the
//! sequential and parallel paths agree bit-for-bit on floats.

use crate::scalar::Scalar;

use super::Signature;

/// Below this dimension the parallel kernel falls back to the sequential one.
pub const PAR_MIN_DIM: usize = 64;

#[inline]
fn coefficient<S: Scalar>(sig: Signature, support: &[u32], a: &[S], b: &[S], k: u32) -> S {
    let neg = sig.neg_mask();
    let mut acc = S::zero();
    for &i in support {
        let j = i ^ k;
        let bj = &b[j as usize];
        if bj.is_zero() {
            continue;
        }
        let term = a[i as usize].clone() * bj.clone();
        if (i & j & neg).count_ones() & 1 == 0 {
            acc = acc + term;
        } else {
            acc = acc - term;
        }
    }
    acc
}

fn support<S: Scalar>(a: &[S]) -> Vec<u32> {
    a.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i as u32)
        .collect()
}

/// Single-threaded product of two coefficient arrays of `sig`.
pub fn mul_sequential<S: Scalar>(sig: Signature, a: &[S], b: &[S]) -> Vec<S> {
    debug_assert_eq!(a.len(), sig.dim());
    debug_assert_eq!(b.len(), sig.dim());
    let support = support(a);
    (0..sig.dim() as u32)
        .map(|k| coefficient(sig, &support, a, b, k))
        .collect()
}

/// Product with output coefficients computed across the rayon pool.
#[cfg(feature = "parallel")]
pub fn mul_parallel<S: Scalar>(sig: Signature, a: &[S], b: &[S]) -> Vec<S> {
    use rayon::prelude::*;

    debug_assert_eq!(a.len(), sig.dim());
    debug_assert_eq!(b.len(), sig.dim());
    if sig.dim() < PAR_MIN_DIM {
        return mul_sequential(sig, a, b);
    }
    let support = support(a);
    (0..sig.dim() as u32)
        .into_par_iter()
        .map(|k| coefficient(sig, &support, a, b, k))
        .collect()
}

/// The kernel selected by the `parallel` feature.
pub fn mul<S: Scalar>(sig: Signature, a: &[S], b: &[S]) -> Vec<S> {
    #[cfg(feature = "parallel")]
    {
        mul_parallel(sig, a, b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        mul_sequential(sig, a, b)
    }
}
