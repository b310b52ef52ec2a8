//! Eigenvalues of general (non-Hermitian) complex matrices.

use magblock_core::{Complex64, ComplexMatrix};
use nalgebra::DMatrix;

/// All eigenvalues of a square matrix via complex Schur decomposition,
/// sorted by decreasing real part.
pub fn eigenvalues(a: &ComplexMatrix) -> Option<Vec<Complex64>> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    let m = DMatrix::from_row_slice(n, n, a.as_slice());
    let mut ev: Vec<Complex64> = m.schur().eigenvalues()?.iter().copied().collect();
    ev.sort_by(|x, y| y.re.total_cmp(&x.re));
    Some(ev)
}

/// Largest real part and smallest modulus over the spectrum.
pub fn spectral_summary(a: &ComplexMatrix) -> Option<(f64, f64)> {
    let ev = eigenvalues(a)?;
    let max_re = ev.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let min_abs = ev.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    Some((max_re, min_abs))
}
