//! The faithful regular representation `beta_n : DL(p,q) -> Mat(2^n)`.
//!
//! Generator `e_j` maps to a Kronecker product of `n` 2x2 factors with `J+`
//! (`e_j^2 = +1`) or `J-` (`e_j^2 = -1`) in slot `j` and `I` elsewhere, slot 1
//! leftmost. The Kronecker product uses the block layout `A (x) B = [b_ij A]`,
//! which places `e_1` on the fastest-varying index bit and makes column `m`
//! of `beta(U)` the coefficient vector of `U e_m`.
//!
//! Everything here is matrix-based on purpose: it is the independent oracle
//! the closed-form routines in [`crate::char_ops`] are checked against.

use serde_json::Value;

use crate::algebra::{Element, Signature};
use crate::char_ops::CharPoly;
use crate::scalar::Scalar;

const I2: [i8; 4] = [1, 0, 0, 1];
const J_PLUS: [i8; 4] = [0, 1, 1, 0];
const J_MINUS: [i8; 4] = [0, -1, 1, 0];

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct RepMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> RepMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![S::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = S::one();
        }
        m
    }

    /// Builds a matrix from rows; `None` unless the rows form a square.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Option<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[S] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.dim)
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn max_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(Scalar::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.entries[idx] = out.entries[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Kronecker product with block layout `[b_ij * self]`.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let dim = da * db;
        let mut entries = vec![S::zero(); dim * dim];
        for bi in 0..db {
            for bj in 0..db {
                let b = other.get(bi, bj);
                if b.is_zero() {
                    continue;
                }
                for r in 0..da {
                    for c in 0..da {
                        entries[(bi * da + r) * dim + bj * da + c] =
                            self.get(r, c).clone() * b.clone();
                    }
                }
            }
        }
        Self { dim, entries }
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Determinant: fraction-free (Bareiss) elimination on exact backends,
    /// partial-pivot LU on floats.
    pub fn det(&self) -> S {
        if S::EXACT {
            self.det_bareiss()
        } else {
            self.det_lu()
        }
    }

    fn det_bareiss(&self) -> S {
        let n = self.dim;
        let mut m = self.entries.clone();
        let mut negate = false;
        let mut prev = S::one();
        for k in 0..n {
            if m[k * n + k].is_zero() {
                let Some(piv) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return S::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, piv * n + j);
                }
                negate = !negate;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                let lead = m[i * n + k].clone();
                for j in k + 1..n {
                    let v =
                        m[i * n + j].clone() * pivot.clone() - lead.clone() * m[k * n + j].clone();
                    m[i * n + j] = v / prev.clone();
                }
                m[i * n + k] = S::zero();
            }
            prev = pivot;
        }
        let d = m[n * n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn det_lu(&self) -> S {
        let n = self.dim;
        let mut m = self.entries.clone();
        let mut det = S::one();
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&a, &b| {
                    m[a * n + k]
                        .magnitude()
                        .total_cmp(&m[b * n + k].magnitude())
                })
                .unwrap_or(k);
            if m[piv * n + k].is_zero() {
                return S::zero();
            }
            if piv != k {
                for j in 0..n {
                    m.swap(k * n + j, piv * n + j);
                }
                det = -det;
            }
            let pivot = m[k * n + k].clone();
            det = det * pivot.clone();
            for i in k + 1..n {
                let f = m[i * n + k].clone() / pivot.clone();
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    m[i * n + j] = m[i * n + j].clone() - f.clone() * m[k * n + j].clone();
                }
            }
        }
        det
    }

    /// Coefficients of `det(M - lambda I)`, lowest degree first. Hessenberg
    /// reduction on exact backends, the Faddeev-LeVerrier recursion on floats.
    pub fn charpoly(&self) -> Vec<S> {
        let a = if S::EXACT {
            self.charpoly_hessenberg()
        } else {
            self.charpoly_fl()
        };
        if self.dim % 2 == 1 {
            a.into_iter().map(|c| -c).collect()
        } else {
            a
        }
    }

    /// `det(lambda I - M)` via a similar upper Hessenberg matrix.
    fn charpoly_hessenberg(&self) -> Vec<S> {
        let n = self.dim;
        let mut h = self.entries.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(piv) = (m..n).find(|&i| !h[i * n + m - 1].is_zero()) else {
                continue;
            };
            if piv != m {
                for j in 0..n {
                    h.swap(piv * n + j, m * n + j);
                }
                for j in 0..n {
                    h.swap(j * n + piv, j * n + m);
                }
            }
            let pivot = h[m * n + m - 1].clone();
            for i in m + 1..n {
                if h[i * n + m - 1].is_zero() {
                    continue;
                }
                let f = h[i * n + m - 1].clone() / pivot.clone();
                for j in 0..n {
                    let v = h[i * n + j].clone() - f.clone() * h[m * n + j].clone();
                    h[i * n + j] = v;
                }
                for j in 0..n {
                    let v = h[j * n + m].clone() + f.clone() * h[j * n + i].clone();
                    h[j * n + m] = v;
                }
            }
        }
        // p[k] = det(lambda I - H[..k, ..k]), lowest degree first
        let mut p: Vec<Vec<S>> = vec![vec![S::one()]];
        for k in 0..n {
            let prev = &p[k];
            let mut next = vec![S::zero(); k + 2];
            for (d, c) in prev.iter().enumerate() {
                next[d + 1] = next[d + 1].clone() + c.clone();
                next[d] = next[d].clone() - h[k * n + k].clone() * c.clone();
            }
            let mut sub = S::one();
            for i in (0..k).rev() {
                sub = sub * h[(i + 1) * n + i].clone();
                if sub.is_zero() {
                    break;
                }
                let f = h[i * n + k].clone() * sub.clone();
                for (d, c) in p[i].iter().enumerate() {
                    next[d] = next[d].clone() - f.clone() * c.clone();
                }
            }
            p.push(next);
        }
        p.pop().expect("p starts non-empty")
    }

    /// `det(lambda I - M)` by the Faddeev-LeVerrier recursion.
    fn charpoly_fl(&self) -> Vec<S> {
        let n = self.dim;
        // a[k] is the coefficient of lambda^k in det(lambda I - M)
        let mut a = vec![S::zero(); n + 1];
        a[n] = S::one();
        let ident = Self::identity(n);
        let mut m_k = Self::zeros(n);
        for k in 1..=n {
            m_k = self.matmul(&m_k).add(&ident.scale(&a[n + 1 - k]));
            let t = self.matmul(&m_k).trace();
            a[n - k] = -(t / S::from_i64(k as i64));
        }
        a
    }

    /// A nonzero null vector, or `None` if the matrix has full rank.
    ///
    /// Reduced row echelon form with partial pivoting; the first free column
    /// generates the vector. On floats a pivot counts as zero when it is
    /// below `rel * dim * max_norm`.
    pub fn null_vector(&self, rel: f64) -> Option<Vec<S>> {
        let n = self.dim;
        let mut m = self.entries.clone();
        let cutoff = rel * n as f64 * self.max_norm();
        let negligible = |x: &S| x.is_negligible(cutoff, 1.0);
        let mut pivots: Vec<usize> = Vec::new();
        let mut free = None;
        let mut row = 0;
        for col in 0..n {
            let cand = if S::EXACT {
                (row..n).find(|&i| !m[i * n + col].is_zero())
            } else {
                (row..n).max_by(|&a, &b| {
                    m[a * n + col]
                        .magnitude()
                        .total_cmp(&m[b * n + col].magnitude())
                })
            };
            let piv = match cand {
                Some(p) if !negligible(&m[p * n + col]) => p,
                _ => {
                    free = Some(col);
                    break;
                }
            };
            for j in 0..n {
                m.swap(row * n + j, piv * n + j);
            }
            let inv = S::one() / m[row * n + col].clone();
            for j in 0..n {
                m[row * n + j] = m[row * n + j].clone() * inv.clone();
            }
            for i in 0..n {
                if i == row || m[i * n + col].is_zero() {
                    continue;
                }
                let f = m[i * n + col].clone();
                for j in 0..n {
                    m[i * n + j] = m[i * n + j].clone() - f.clone() * m[row * n + j].clone();
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free = free?;
        let mut v = vec![S::zero(); n];
        v[free] = S::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r * n + free].clone();
        }
        Some(v)
    }

    /// One row per line, comma separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Nested JSON arrays, one inner array per row.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows()
                .map(|r| Value::Array(r.iter().map(Scalar::to_json).collect()))
                .collect(),
        )
    }
}

fn kron_i8(a: &[i8], da: usize, b: &[i8], db: usize) -> Vec<i8> {
    let dim = da * db;
    let mut out = vec![0i8; dim * dim];
    for bi in 0..db {
        for bj in 0..db {
            let s = b[bi * db + bj];
            if s == 0 {
                continue;
            }
            for r in 0..da {
                for c in 0..da {
                    out[(bi * da + r) * dim + bj * da + c] = a[r * da + c] * s;
                }
            }
        }
    }
    out
}

/// `beta(e_A)` as a signed permutation matrix of `i8` entries, built as the
/// Kronecker product of the per-slot factors. By the mixed-product rule this
/// equals the product of the generator images `beta(e_i)`, `i in A`.
fn blade_image_i8(sig: Signature, mask: u32) -> Vec<i8> {
    let mut m = vec![1i8];
    let mut dim = 1;
    for slot in 1..=sig.n() {
        let factor: &[i8] = if mask >> (slot - 1) & 1 == 0 {
            &I2
        } else if slot <= sig.p() {
            &J_PLUS
        } else {
            &J_MINUS
        };
        m = kron_i8(&m, dim, factor, 2);
        dim *= 2;
    }
    m
}

fn from_i8<S: Scalar>(m: &[i8], dim: usize) -> RepMatrix<S> {
    RepMatrix {
        dim,
        entries: m.iter().map(|&x| S::from_i64(x.into())).collect(),
    }
}

/// Image `beta(e_j)` of a 1-based generator.
pub fn generator_image<S: Scalar>(sig: Signature, j: usize) -> RepMatrix<S> {
    assert!(j >= 1 && j <= sig.n(), "generator index out of range");
    from_i8(&blade_image_i8(sig, 1 << (j - 1)), sig.dim())
}

/// Image `beta(e_A)` of a basis blade.
pub fn blade_image<S: Scalar>(sig: Signature, mask: u32) -> RepMatrix<S> {
    from_i8(&blade_image_i8(sig, mask), sig.dim())
}

/// `beta(U) = sum_A u_A beta(e_A)`.
pub fn represent<S: Scalar>(u: &Element<S>) -> RepMatrix<S> {
    let sig = u.signature();
    let dim = sig.dim();
    let mut out: RepMatrix<S> = RepMatrix::zeros(dim);
    for (mask, coeff) in u.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let image = blade_image_i8(sig, mask as u32);
        for (idx, &s) in image.iter().enumerate() {
            match s {
                0 => {}
                1 => out.entries[idx] = out.entries[idx].clone() + coeff.clone(),
                _ => out.entries[idx] = out.entries[idx].clone() - coeff.clone(),
            }
        }
    }
    out
}

/// `det(beta(U))`.
pub fn oracle_det<S: Scalar>(u: &Element<S>) -> S {
    represent(u).det()
}

/// `tr(beta(U))`.
pub fn oracle_trace<S: Scalar>(u: &Element<S>) -> S {
    represent(u).trace()
}

/// Characteristic polynomial of `beta(U)`, in [`Scalar::Wide`] precision.
pub fn oracle_charpoly<S: Scalar>(u: &Element<S>) -> CharPoly<S> {
    let wide = represent(&u.convert(Scalar::to_wide)).charpoly();
    CharPoly::new(wide.iter().map(S::from_wide).collect())
}

/// A nonzero `V` with `U V = 0` read off a null vector of `beta(U)`, or `None`
/// when `beta(U)` is nonsingular.
pub fn kernel_witness<S: Scalar>(u: &Element<S>) -> Option<Element<S>> {
    kernel_witness_with(u, 1e-9)
}

/// [`kernel_witness`] with an explicit float pivot tolerance.
pub fn kernel_witness_with<S: Scalar>(u: &Element<S>, rel: f64) -> Option<Element<S>> {
    let v = represent(u).null_vector(rel)?;
    Element::from_coeffs(u.signature(), v).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> RepMatrix<f64> {
        RepMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| x as f64).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn kron_uses_b_ij_times_a_blocks() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let b = mat(&[&[0, 1], &[5, 0]]);
        let k = a.kron(&b);
        assert_eq!(
            k,
            mat(&[
                &[0, 0, 1, 2],
                &[0, 0, 3, 4],
                &[5, 10, 0, 0],
                &[15, 20, 0, 0]
            ])
        );
    }

    #[test]
    fn generator_images_dl20() {
        let s = sig(2, 0);
        let e1: RepMatrix<f64> = generator_image(s, 1);
        let e2: RepMatrix<f64> = generator_image(s, 2);
        // J+ (x) I = diag(J+, J+); I (x) J+ = [[0, I], [I, 0]]
        assert_eq!(
            e1,
            mat(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
        );
        assert_eq!(
            e2,
            mat(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]])
        );
    }

    #[test]
    fn blade_images_are_generator_products() {
        for s in Signature::all_up_to(3) {
            for mask in 0..s.dim() as u32 {
                let mut prod = RepMatrix::<f64>::identity(s.dim());
                for j in 1..=s.n() {
                    if mask >> (j - 1) & 1 == 1 {
                        prod = prod.matmul(&generator_image(s, j));
                    }
                }
                assert_eq!(blade_image::<f64>(s, mask), prod, "DL({s}) mask {mask:b}");
            }
        }
    }

    #[test]
    fn golden_dl02() {
        let u = Element::from_coeffs(sig(0, 2), vec![2.0, 3.0, 5.0, 7.0]).unwrap();
        assert_eq!(
            represent(&u),
            mat(&[
                &[2, -3, -5, 7],
                &[3, 2, -7, -5],
                &[5, -7, 2, -3],
                &[7, 5, 3, 2]
            ])
        );
    }

    #[test]
    fn dets() {
        let m = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert!((m.det() - 18.0).abs() < 1e-12);
        let q = RepMatrix::<BigRational>::from_rows(
            [[0, 1, 2], [1, 0, 3], [4, -3, 8]]
                .iter()
                .map(|r| r.iter().map(|&x| BigRational::from_i64(x)).collect())
                .collect(),
        )
        .unwrap();
        // 0*(0+9) - 1*(8-12) + 2*(-3-0) = -2
        assert_eq!(q.det(), BigRational::from_i64(-2));
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).det(), 0.0);
    }

    #[test]
    fn small_charpolys() {
        // [[0,-1],[1,0]] -> lambda^2 + 1 ; [[0,1],[1,0]] -> lambda^2 - 1
        assert_eq!(mat(&[&[0, -1], &[1, 0]]).charpoly(), vec![1.0, 0.0, 1.0]);
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).charpoly(), vec![-1.0, 0.0, 1.0]);
        // odd dimension: det(M - l) = -l^3 + ... for M = diag(1,2,3)
        let d = mat(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(d.charpoly(), vec![6.0, -11.0, 6.0, -1.0]);
    }

    #[test]
    fn hessenberg_matches_faddeev_leverrier() {
        let q = |rows: &[&[i64]]| {
            RepMatrix::<BigRational>::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&x| BigRational::from_i64(x)).collect())
                    .collect(),
            )
            .unwrap()
        };
        let cases = [
            q(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]),
            q(&[&[0, 0, 1, 0], &[0, 0, 0, 2], &[3, 0, 0, 0], &[0, 4, 0, 0]]),
            q(&[&[1, 2, 3, 4], &[0, 0, 0, 0], &[0, 0, 0, 0], &[5, 6, 7, 8]]),
            q(&[&[7]]),
        ];
        for m in cases {
            assert_eq!(m.charpoly_hessenberg(), m.charpoly_fl());
        }
        let u = Element::from_coeffs(
            sig(1, 2),
            [3, -1, 0, 2, 5, 0, -4, 1]
                .iter()
                .map(|&x| BigRational::new(x.into(), 3.into()))
                .collect(),
        )
        .unwrap();
        let m = represent(&u);
        assert_eq!(m.charpoly_hessenberg(), m.charpoly_fl());
    }

    #[test]
    fn null_vectors() {
        let m = mat(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.null_vector(1e-9), Some(vec![-1.0, 1.0]));
        assert_eq!(mat(&[&[1, 0], &[0, 1]]).null_vector(1e-9), None);
    }

    #[test]
    fn exports() {
        let m = mat(&[&[1, -2], &[3, 4]]);
        assert_eq!(m.to_csv(), "1,-2\n3,4\n");
        assert_eq!(m.to_json().to_string(), "[[1.0,-2.0],[3.0,4.0]]");
    }
}
