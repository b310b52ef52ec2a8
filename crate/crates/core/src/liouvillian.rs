//! Hamiltonian, dissipators, and the Lindblad generator in both matrix and
//! superoperator form.
//!
//! Superoperators act on column-stacked density matrices, so that
//! `vec(A ρ B) = (Bᵀ ⊗ A) vec(ρ)`.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::fockspace::{self, HilbertLayout};
use crate::matrix::ComplexMatrix;
use crate::params::SystemParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dissipation channels, in the order [`build_dissipators`] emits them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Process {
    QubitRelaxation,
    QubitExcitation,
    QubitDephasing,
    MagnonRelaxation,
    MagnonExcitation,
    Custom,
}

impl Process {
    pub fn name(self) -> &'static str {
        match self {
            Process::QubitRelaxation => "qubit relaxation",
            Process::QubitExcitation => "qubit excitation",
            Process::QubitDephasing => "qubit pure dephasing",
            Process::MagnonRelaxation => "magnon relaxation",
            Process::MagnonExcitation => "magnon excitation",
            Process::Custom => "custom",
        }
    }
}

/// One dissipation channel `Γ·D[L]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LindbladTerm {
    pub rate: f64,
    pub jump: ComplexMatrix,
    pub process: Process,
}

impl LindbladTerm {
    pub fn new(rate: f64, jump: ComplexMatrix) -> Result<Self> {
        Self::with_process(rate, jump, Process::Custom)
    }

    pub fn with_process(rate: f64, jump: ComplexMatrix, process: Process) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "rate",
                value: rate,
                reason: "Lindblad rates must be finite and non-negative",
            });
        }
        if !jump.is_square() {
            return Err(Error::NotSquare {
                rows: jump.rows(),
                cols: jump.cols(),
            });
        }
        Ok(Self {
            rate,
            jump,
            process,
        })
    }
}

/// `H' = Δ_m m†m + ½Δ_q σ_z + χ_qm m†m σ_z + Ω_s(σ₊ + σ₋) + Ω_d(m† + m)`.
///
/// The constant part of the dispersive shift is already contained in `Δ_q`.
pub fn build_hamiltonian(p: &SystemParams) -> Result<ComplexMatrix> {
    p.validate()?;
    let layout = p.layout()?;
    let m = layout.lift_magnon(&fockspace::annihilation(p.n_fock)?)?;
    let n = layout.lift_magnon(&fockspace::number(p.n_fock)?)?;
    let sz = layout.lift_qubit(&fockspace::sigma_z())?;
    let sx = layout.lift_qubit(&(&fockspace::sigma_plus() + &fockspace::sigma_minus()))?;
    let m_x = &m + &m.dagger();

    let re = |x: f64| Complex64::new(x, 0.0);
    let mut h = n.scale(re(p.delta_m));
    h.axpy(re(0.5 * p.delta_q), &sz)?;
    h.axpy(re(p.chi_qm), &n.matmul(&sz)?)?;
    h.axpy(re(p.omega_s), &sx)?;
    h.axpy(re(p.omega_d), &m_x)?;
    Ok(h)
}

/// The five channels, in order: qubit relaxation `κ₁(1+n_th)·σ₋`, qubit
/// excitation `κ₁n_th·σ₊`, pure dephasing `2κ_φ·σ_z`, magnon relaxation
/// `κ_m(1+m_th)·m`, magnon excitation `κ_m m_th·m†`. Zero-rate channels are
/// kept.
pub fn build_dissipators(p: &SystemParams, layout: &HilbertLayout) -> Result<Vec<LindbladTerm>> {
    p.validate()?;
    if layout.n_fock() != p.n_fock {
        return Err(Error::DimensionMismatch {
            op: "build_dissipators",
            expected: (p.n_fock, p.n_fock),
            found: (layout.n_fock(), layout.n_fock()),
        });
    }
    let m = layout.lift_magnon(&fockspace::annihilation(p.n_fock)?)?;
    let md = m.dagger();
    Ok(alloc::vec![
        LindbladTerm::with_process(
            p.kappa_1 * (1.0 + p.n_th),
            layout.lift_qubit(&fockspace::sigma_minus())?,
            Process::QubitRelaxation,
        )?,
        LindbladTerm::with_process(
            p.kappa_1 * p.n_th,
            layout.lift_qubit(&fockspace::sigma_plus())?,
            Process::QubitExcitation,
        )?,
        LindbladTerm::with_process(
            2.0 * p.dephasing_rate(),
            layout.lift_qubit(&fockspace::sigma_z())?,
            Process::QubitDephasing,
        )?,
        LindbladTerm::with_process(p.kappa_m * (1.0 + p.m_th), m, Process::MagnonRelaxation)?,
        LindbladTerm::with_process(p.kappa_m * p.m_th, md, Process::MagnonExcitation)?,
    ])
}

fn check_terms(h: &ComplexMatrix, terms: &[LindbladTerm]) -> Result<usize> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let d = h.rows();
    for t in terms {
        if t.jump.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                op: "lindblad term",
                expected: (d, d),
                found: t.jump.shape(),
            });
        }
    }
    Ok(d)
}

/// The `d² × d²` generator with `vec(ρ̇) = L·vec(ρ)`:
///
/// `L = −i(1⊗H − Hᵀ⊗1) + Σⱼ Γⱼ [conj(Lⱼ)⊗Lⱼ − ½ 1⊗Lⱼ†Lⱼ − ½ (Lⱼ†Lⱼ)ᵀ⊗1]`
pub fn liouvillian_matrix(h: &ComplexMatrix, terms: &[LindbladTerm]) -> Result<ComplexMatrix> {
    let d = check_terms(h, terms)?;
    let id = ComplexMatrix::identity(d)?;
    let mut l = id
        .kron(h)?
        .add_scaled(-Complex64::new(1.0, 0.0), &h.transpose().kron(&id)?)?;
    l = l.scale(-I);
    for t in terms {
        if t.rate == 0.0 {
            continue;
        }
        let g = Complex64::new(t.rate, 0.0);
        let ldl = t.jump.dagger().matmul(&t.jump)?;
        l.axpy(g, &t.jump.conj().kron(&t.jump)?)?;
        l.axpy(-0.5 * g, &id.kron(&ldl)?)?;
        l.axpy(-0.5 * g, &ldl.transpose().kron(&id)?)?;
    }
    Ok(l)
}

/// `ρ̇ = −i[H, ρ] + Σⱼ Γⱼ (Lⱼ ρ Lⱼ† − ½{Lⱼ†Lⱼ, ρ})`, evaluated in matrix form.
pub fn master_rhs(
    h: &ComplexMatrix,
    terms: &[LindbladTerm],
    rho: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    MasterEquation::new(h, terms)?.apply(rho)
}

#[derive(Debug, Clone)]
struct SparseOp {
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseOp {
    fn from_dense(a: &ComplexMatrix, scale: Complex64) -> Self {
        let c = a.cols();
        let entries = a
            .as_slice()
            .iter()
            .enumerate()
            .filter(|(_, z)| !z.is_zero())
            .map(|(k, &z)| (k / c, k % c, z * scale))
            .collect();
        Self { entries }
    }
}

/// Generator of the form `X ↦ A·X + X·B + Σ Γ K X K†` with sparse `A`, `B`, `K`.
#[derive(Debug, Clone)]
struct SandwichMap {
    left: SparseOp,
    right: SparseOp,
    jumps: Vec<(f64, SparseOp)>,
}

impl SandwichMap {
    fn apply_into(&self, x: &[Complex64], d: usize, out: &mut [Complex64]) {
        out.iter_mut().for_each(|z| *z = Complex64::zero());
        for &(i, k, v) in &self.left.entries {
            let src = &x[k * d..(k + 1) * d];
            let dst = &mut out[i * d..(i + 1) * d];
            for (o, &s) in dst.iter_mut().zip(src) {
                *o += v * s;
            }
        }
        for &(k, j, v) in &self.right.entries {
            for i in 0..d {
                out[i * d + j] += v * x[i * d + k];
            }
        }
        for (rate, k_op) in &self.jumps {
            for &(i, k, a) in &k_op.entries {
                let a = a * *rate;
                for &(j, l, b) in &k_op.entries {
                    out[i * d + j] += a * b.conj() * x[k * d + l];
                }
            }
        }
    }
}

/// Precompiled matrix-form master equation.
///
/// Rewrites the generator with `H_eff = H − (i/2) Σ Γ L†L` as
/// `ρ̇ = −i(H_eff ρ − ρ H_eff†) + Σ Γ L ρ L†` and evaluates it with sparse
/// operator entries. Also carries the Hilbert–Schmidt adjoint, used for
/// norm estimates.
#[derive(Debug, Clone)]
pub struct MasterEquation {
    dim: usize,
    forward: SandwichMap,
    adjoint: SandwichMap,
    min_nonzero_rate: Option<f64>,
}

impl MasterEquation {
    pub fn new(h: &ComplexMatrix, terms: &[LindbladTerm]) -> Result<Self> {
        let d = check_terms(h, terms)?;
        let mut h_eff = h.clone();
        let mut jumps = Vec::new();
        let mut jumps_adj = Vec::new();
        let mut min_rate: Option<f64> = None;
        for t in terms.iter().filter(|t| t.rate > 0.0) {
            let ldl = t.jump.dagger().matmul(&t.jump)?;
            h_eff.axpy(Complex64::new(0.0, -0.5 * t.rate), &ldl)?;
            let one = Complex64::new(1.0, 0.0);
            jumps.push((t.rate, SparseOp::from_dense(&t.jump, one)));
            jumps_adj.push((t.rate, SparseOp::from_dense(&t.jump.dagger(), one)));
            min_rate = Some(min_rate.map_or(t.rate, |r: f64| r.min(t.rate)));
        }
        let h_eff_dag = h_eff.dagger();
        Ok(Self {
            dim: d,
            forward: SandwichMap {
                left: SparseOp::from_dense(&h_eff, -I),
                right: SparseOp::from_dense(&h_eff_dag, I),
                jumps,
            },
            adjoint: SandwichMap {
                left: SparseOp::from_dense(&h_eff_dag, I),
                right: SparseOp::from_dense(&h_eff, -I),
                jumps: jumps_adj,
            },
            min_nonzero_rate: min_rate,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Smallest strictly positive channel rate, if any channel is active.
    pub fn min_nonzero_rate(&self) -> Option<f64> {
        self.min_nonzero_rate
    }

    fn check(&self, rho: &ComplexMatrix) -> Result<()> {
        if rho.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch {
                op: "master_rhs",
                expected: (self.dim, self.dim),
                found: rho.shape(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check(rho)?;
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        self.forward
            .apply_into(rho.as_slice(), self.dim, out.as_mut_slice());
        Ok(out)
    }

    /// Writes `ρ̇` into `out`; both slices are row-major `dim × dim`.
    pub fn apply_into(&self, rho: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(rho.len(), self.dim * self.dim);
        debug_assert_eq!(out.len(), self.dim * self.dim);
        self.forward.apply_into(rho, self.dim, out);
    }

    /// Hilbert–Schmidt adjoint of the generator (Heisenberg picture).
    pub fn apply_adjoint(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check(x)?;
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        self.adjoint
            .apply_into(x.as_slice(), self.dim, out.as_mut_slice());
        Ok(out)
    }

    /// Power-iteration estimate of the spectral norm of the generator.
    pub fn spectral_norm_estimate(&self) -> f64 {
        let d = self.dim;
        let mut v = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                v[(i, j)] = Complex64::new(
                    1.0 / (1.0 + (i + 2 * j) as f64),
                    0.3 / (1.0 + (2 * i + j) as f64),
                );
            }
        }
        let mut buf = ComplexMatrix::zeros(d, d);
        let mut w = ComplexMatrix::zeros(d, d);
        let mut sigma_sq = 0.0;
        for _ in 0..500 {
            let norm = v.frobenius_norm();
            if norm == 0.0 {
                return 0.0;
            }
            v = v.scale_real(1.0 / norm);
            self.forward.apply_into(v.as_slice(), d, buf.as_mut_slice());
            self.adjoint.apply_into(buf.as_slice(), d, w.as_mut_slice());
            let next = w.frobenius_norm();
            let converged = Float::abs(next - sigma_sq) <= 1e-9 * next;
            sigma_sq = next;
            core::mem::swap(&mut v, &mut w);
            if converged {
                break;
            }
        }
        num_traits::Float::sqrt(sigma_sq)
    }
}
