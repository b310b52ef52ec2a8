//! Dense solvers: column-stacking vectorization, LU with partial pivoting,
//! and Hermitian eigenvalues.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Stacks the columns of `rho`: entry `(i, j)` lands at `j·rows + i`.
pub fn vectorize(rho: &ComplexMatrix) -> Vec<Complex64> {
    let (r, c) = rho.shape();
    let mut v = vec![Complex64::zero(); r * c];
    for i in 0..r {
        for j in 0..c {
            v[j * r + i] = rho[(i, j)];
        }
    }
    v
}

/// Inverse of [`vectorize`] for a `dim × dim` matrix.
pub fn unvectorize(v: &[Complex64], dim: usize) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if v.len() != dim * dim {
        return Err(Error::DimensionMismatch {
            op: "unvectorize",
            expected: (dim * dim, 1),
            found: (v.len(), 1),
        });
    }
    let mut m = ComplexMatrix::zeros(dim, dim);
    for j in 0..dim {
        for i in 0..dim {
            m[(i, j)] = v[j * dim + i];
        }
    }
    Ok(m)
}

pub fn vector_norm(v: &[Complex64]) -> f64 {
    Float::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// LU factorization `P·A = L·U` with partial (row) pivoting.
#[derive(Debug, Clone)]
pub struct LuDecomposition {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl LuDecomposition {
    /// Pivots smaller than `rel_tol · max|A|` are reported as singular.
    pub fn factor(a: &ComplexMatrix, rel_tol: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let scale = a.max_abs();
        if scale == 0.0 {
            return Err(Error::NonUniqueSteadyState);
        }
        let threshold = rel_tol * scale;
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();

        for k in 0..n {
            let (pivot_row, pivot_mag) =
                (k..n)
                    .map(|r| (r, lu[r * n + k].norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pivot_mag <= threshold {
                return Err(Error::NonUniqueSteadyState);
            }
            if pivot_row != k {
                for col in 0..n {
                    lu.swap(k * n + col, pivot_row * n + col);
                }
                perm.swap(k, pivot_row);
            }
            let pivot = lu[k * n + k];
            for r in (k + 1)..n {
                let factor = lu[r * n + k] / pivot;
                lu[r * n + k] = factor;
                if factor.is_zero() {
                    continue;
                }
                let (upper, lower) = lu.split_at_mut(r * n);
                let pivot_row = &upper[k * n + k + 1..k * n + n];
                for (x, &p) in lower[k + 1..n].iter_mut().zip(pivot_row) {
                    *x -= factor * p;
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                op: "lu_solve",
                expected: (n, 1),
                found: (b.len(), 1),
            });
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let s: Complex64 = row.iter().zip(&x[..i]).map(|(&l, &y)| l * y).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n + i + 1..(i + 1) * n];
            let s: Complex64 = row.iter().zip(&x[i + 1..]).map(|(&u, &y)| u * y).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        Ok(x)
    }
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// The `n × n` complex matrix `A + iB` is embedded as the real symmetric
/// `2n × 2n` matrix `[[A, −B], [B, A]]`, whose spectrum is that of the
/// original with every eigenvalue doubled; cyclic Jacobi rotations then
/// diagonalize it.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let n = h.rows();
    let m = 2 * n;
    let mut a = vec![0.0f64; m * m];
    for i in 0..n {
        for j in 0..n {
            // symmetrize so small anti-Hermitian noise cannot break Jacobi
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            a[i * m + j] = z.re;
            a[(i + n) * m + (j + n)] = z.re;
            a[i * m + (j + n)] = -z.im;
            a[(i + n) * m + j] = z.im;
        }
    }
    jacobi_symmetric(&mut a, m);
    let mut eig: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    Ok(eig.into_iter().step_by(2).collect())
}

fn jacobi_symmetric(a: &mut [f64], m: usize) {
    let total: f64 = a.iter().map(|x| x * x).sum();
    if total == 0.0 {
        return;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * m + j] * a[i * m + j])
            .sum();
        if off <= 1e-30 * total {
            return;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = a[p * m + q];
                if Float::abs(apq) < 1e-300 {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t =
                    Float::signum(theta) / (Float::abs(theta) + Float::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / Float::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
}
