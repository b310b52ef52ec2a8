//! Operators on the joint qubit ⊗ magnon space.
//!
//! Basis ordering is qubit-major and fixed: `|q, n⟩` sits at index
//! `q·n_fock + n`, with `q = 0` for `|g⟩` and `q = 1` for `|e⟩`. Lifting a
//! qubit operator is `op ⊗ 1`, lifting a magnon operator is `1 ⊗ op`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use num_traits::Float;

/// Dimensions of the truncated joint space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertLayout {
    n_fock: usize,
}

impl HilbertLayout {
    pub fn new(n_fock: usize) -> Result<Self> {
        if n_fock < 2 {
            return Err(Error::FockTooSmall(n_fock));
        }
        Ok(Self { n_fock })
    }

    #[inline]
    pub fn n_fock(&self) -> usize {
        self.n_fock
    }

    #[inline]
    pub fn total_dim(&self) -> usize {
        2 * self.n_fock
    }

    /// Index of `|q, n⟩`; `excited` selects `|e⟩`.
    #[inline]
    pub fn index(&self, excited: bool, n: usize) -> usize {
        debug_assert!(n < self.n_fock);
        usize::from(excited) * self.n_fock + n
    }

    /// `|q, n⟩⟨q, n|` on the joint space.
    pub fn basis_state(&self, excited: bool, n: usize) -> ComplexMatrix {
        ComplexMatrix::basis_projector(self.total_dim(), self.index(excited, n))
    }

    /// `op ⊗ 1_magnon`.
    pub fn lift_qubit(&self, op: &ComplexMatrix) -> Result<ComplexMatrix> {
        lift_qubit(op, self)
    }

    /// `1_qubit ⊗ op`.
    pub fn lift_magnon(&self, op: &ComplexMatrix) -> Result<ComplexMatrix> {
        lift_magnon(op, self)
    }
}

pub fn identity(dim: usize) -> Result<ComplexMatrix> {
    ComplexMatrix::identity(dim)
}

/// Truncated bosonic annihilation operator: `m|n⟩ = √n |n−1⟩`.
pub fn annihilation(n_fock: usize) -> Result<ComplexMatrix> {
    if n_fock < 2 {
        return Err(Error::FockTooSmall(n_fock));
    }
    let mut m = ComplexMatrix::zeros(n_fock, n_fock);
    for n in 1..n_fock {
        m[(n - 1, n)] = Complex64::new(Float::sqrt(n as f64), 0.0);
    }
    Ok(m)
}

pub fn creation(n_fock: usize) -> Result<ComplexMatrix> {
    annihilation(n_fock).map(|m| m.dagger())
}

/// `m†m = diag(0, 1, …, n_fock−1)`.
pub fn number(n_fock: usize) -> Result<ComplexMatrix> {
    if n_fock < 2 {
        return Err(Error::FockTooSmall(n_fock));
    }
    let diag: Vec<f64> = (0..n_fock).map(|n| n as f64).collect();
    Ok(ComplexMatrix::from_real_diagonal(&diag))
}

/// `σ₋ = |g⟩⟨e|`.
pub fn sigma_minus() -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(2, 2);
    s[(0, 1)] = Complex64::new(1.0, 0.0);
    s
}

/// `σ₊ = |e⟩⟨g|`.
pub fn sigma_plus() -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(2, 2);
    s[(1, 0)] = Complex64::new(1.0, 0.0);
    s
}

/// `σ_z = |e⟩⟨e| − |g⟩⟨g|`.
pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[-1.0, 1.0])
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.kron(b)
}

pub fn lift_qubit(op: &ComplexMatrix, layout: &HilbertLayout) -> Result<ComplexMatrix> {
    if op.shape() != (2, 2) {
        return Err(Error::DimensionMismatch {
            op: "lift_qubit",
            expected: (2, 2),
            found: op.shape(),
        });
    }
    op.kron(&ComplexMatrix::identity(layout.n_fock())?)
}

pub fn lift_magnon(op: &ComplexMatrix, layout: &HilbertLayout) -> Result<ComplexMatrix> {
    let n = layout.n_fock();
    if op.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "lift_magnon",
            expected: (n, n),
            found: op.shape(),
        });
    }
    ComplexMatrix::identity(2)?.kron(op)
}

pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn add_scaled(a: &ComplexMatrix, c: Complex64, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.add_scaled(c, b)
}

pub fn trace(a: &ComplexMatrix) -> Result<Complex64> {
    a.trace()
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.commutator(b)
}

/// `Tr(op·ρ)`, computed without forming the product.
pub fn expectation(op: &ComplexMatrix, rho: &ComplexMatrix) -> Result<Complex64> {
    if !op.is_square() || op.shape() != rho.shape() {
        return Err(Error::DimensionMismatch {
            op: "expectation",
            expected: op.shape(),
            found: rho.shape(),
        });
    }
    let d = op.rows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            acc += op[(i, k)] * rho[(k, i)];
        }
    }
    Ok(acc)
}
