//! Steady states of the master equation.
//!
//! The primary path is a direct linear solve on the Liouvillian with one row
//! replaced by the trace functional. [`evolve_to_steady`] integrates the
//! matrix-form master equation with RK4 instead and never touches the
//! superoperator, so the two routes can check each other.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::fockspace::HilbertLayout;
use crate::linalg::{self, LuDecomposition};
use crate::liouvillian::{self, LindbladTerm, MasterEquation};
use crate::matrix::ComplexMatrix;
use crate::observables;
use crate::params::SystemParams;

/// Largest residual `‖L·vec(ρ)‖₂` a direct solve may return.
pub const DIRECT_RESIDUAL_LIMIT: f64 = 1e-6;

/// RK4 stops once `‖ρ̇‖_F` drops below this.
pub const EVOLVE_RESIDUAL_TARGET: f64 = 1e-8;

/// Upper bound on `dt·‖L‖` accepted by the integrator.
pub const MAX_STEP_NORM_PRODUCT: f64 = 0.1;

const PIVOT_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Direct,
    Evolve,
}

impl SolveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::Direct => "direct",
            SolveMethod::Evolve => "evolve",
        }
    }
}

/// A solved steady state with its derived observables.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyStateResult {
    pub rho_ss: ComplexMatrix,
    pub residual_norm: f64,
    pub method: SolveMethod,
    /// `None` when the magnon population is too small for `g²(0)` to exist.
    pub g2_zero: Option<f64>,
    pub p_n: Vec<f64>,
    pub mean_magnon: f64,
    pub qubit_excitation: f64,
    pub layout: HilbertLayout,
}

/// Physicality diagnostics of a solved state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalityReport {
    pub trace_error: f64,
    pub hermiticity_error: f64,
    pub min_eigenvalue: f64,
    pub distribution_sum_error: f64,
    pub residual_norm: f64,
}

impl PhysicalityReport {
    pub const TRACE_TOL: f64 = 1e-10;
    pub const HERMITICITY_TOL: f64 = 1e-10;
    pub const MIN_EIGENVALUE: f64 = -1e-8;
    pub const DISTRIBUTION_TOL: f64 = 1e-9;
    pub const RESIDUAL_TOL: f64 = 1e-8;

    pub fn passes(&self) -> bool {
        self.trace_error <= Self::TRACE_TOL
            && self.hermiticity_error <= Self::HERMITICITY_TOL
            && self.min_eigenvalue >= Self::MIN_EIGENVALUE
            && self.distribution_sum_error <= Self::DISTRIBUTION_TOL
            && self.residual_norm < Self::RESIDUAL_TOL
    }
}

impl SteadyStateResult {
    /// Evaluates observables on `rho` and packages them.
    pub fn from_state(
        rho: ComplexMatrix,
        layout: HilbertLayout,
        residual_norm: f64,
        method: SolveMethod,
    ) -> Result<Self> {
        let g2 = match observables::g2_zero(&rho, &layout) {
            Ok(g) => Some(g),
            Err(Error::UndefinedCorrelation { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            p_n: observables::magnon_distribution(&rho, &layout)?,
            mean_magnon: observables::mean_magnon(&rho, &layout)?,
            qubit_excitation: observables::qubit_excitation(&rho, &layout)?,
            g2_zero: g2,
            rho_ss: rho,
            residual_norm,
            method,
            layout,
        })
    }

    pub fn physicality(&self) -> Result<PhysicalityReport> {
        let eig = linalg::hermitian_eigenvalues(&self.rho_ss)?;
        Ok(PhysicalityReport {
            trace_error: (self.rho_ss.trace()? - Complex64::new(1.0, 0.0)).norm(),
            hermiticity_error: self.rho_ss.hermiticity_error(),
            min_eigenvalue: eig.first().copied().unwrap_or(0.0),
            distribution_sum_error: Float::abs(self.p_n.iter().sum::<f64>() - 1.0),
            residual_norm: self.residual_norm,
        })
    }
}

/// `‖L·vec(ρ)‖₂`.
pub fn liouvillian_residual(l: &ComplexMatrix, rho: &ComplexMatrix) -> Result<f64> {
    Ok(linalg::vector_norm(&l.mul_vec(&linalg::vectorize(rho))?))
}

/// Replaces row 0 of `L` by the trace functional (`1` at every `k·dim + k`).
pub fn trace_pinned_system(l: &ComplexMatrix, dim: usize) -> Result<ComplexMatrix> {
    let n = dim * dim;
    if l.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "solve_direct",
            expected: (n, n),
            found: l.shape(),
        });
    }
    let mut m = l.clone();
    for col in 0..n {
        m[(0, col)] = Complex64::zero();
    }
    for k in 0..dim {
        m[(0, k * dim + k)] = Complex64::new(1.0, 0.0);
    }
    Ok(m)
}

/// Solves `L·vec(ρ) = 0`, `Tr ρ = 1` and returns `(ρ + ρ†)/2`.
pub fn solve_direct(l: &ComplexMatrix, dim: usize) -> Result<ComplexMatrix> {
    let m = trace_pinned_system(l, dim)?;
    let lu = LuDecomposition::factor(&m, PIVOT_REL_TOL)?;
    let mut rhs = vec![Complex64::zero(); dim * dim];
    rhs[0] = Complex64::new(1.0, 0.0);
    let x = lu.solve(&rhs)?;
    let rho = linalg::unvectorize(&x, dim)?.hermitian_part()?;
    let residual = liouvillian_residual(l, &rho)?;
    if residual.is_nan() || residual > DIRECT_RESIDUAL_LIMIT {
        return Err(Error::ResidualTooLarge {
            residual,
            limit: DIRECT_RESIDUAL_LIMIT,
        });
    }
    Ok(rho)
}

/// Outcome of a fixed-step integration.
#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub rho: ComplexMatrix,
    pub time: f64,
    pub steps: usize,
    /// `‖ρ̇‖_F` at the returned state.
    pub residual: f64,
}

/// Step size and horizon for [`evolve_to_steady`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    pub t_final: f64,
    pub dt: f64,
}

impl EvolveOptions {
    /// `dt = 0.09/‖L‖` and a horizon of at least 500/γ (or `10/Γ_min` if longer).
    pub fn auto(eq: &MasterEquation) -> Self {
        let norm = eq.spectral_norm_estimate().max(1e-12);
        let horizon = eq
            .min_nonzero_rate()
            .map_or(500.0, |r| (10.0 / r).max(500.0));
        Self {
            t_final: horizon,
            dt: 0.9 * MAX_STEP_NORM_PRODUCT / norm,
        }
    }
}

/// RK4 from `|0⟩⟨0|` (that is `|g, 0⟩⟨g, 0|` on the joint space).
pub fn evolve_to_steady(
    h: &ComplexMatrix,
    terms: &[LindbladTerm],
    t_final: f64,
    dt: f64,
) -> Result<Evolution> {
    let rho0 = ComplexMatrix::basis_projector(h.rows(), 0);
    evolve_from(h, terms, &rho0, t_final, dt)
}

/// Classical RK4 with fixed step `dt`, renormalizing the trace after every
/// step, until `‖ρ̇‖_F < 1e-8` or `t_final` is reached.
pub fn evolve_from(
    h: &ComplexMatrix,
    terms: &[LindbladTerm],
    rho0: &ComplexMatrix,
    t_final: f64,
    dt: f64,
) -> Result<Evolution> {
    let eq = MasterEquation::new(h, terms)?;
    let d = eq.dim();
    if rho0.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            op: "evolve_from",
            expected: (d, d),
            found: rho0.shape(),
        });
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: dt,
            reason: "must be strictly positive",
        });
    }
    let product = dt * eq.spectral_norm_estimate();
    if product >= MAX_STEP_NORM_PRODUCT {
        return Err(Error::StepTooLarge { dt, product });
    }
    if let Some(rate) = eq.min_nonzero_rate() {
        let required = 10.0 / rate;
        if t_final < required {
            return Err(Error::HorizonTooShort { t_final, required });
        }
    }

    let n = d * d;
    let mut rho = rho0.as_slice().to_vec();
    let mut k1 = vec![Complex64::zero(); n];
    let mut k2 = vec![Complex64::zero(); n];
    let mut k3 = vec![Complex64::zero(); n];
    let mut k4 = vec![Complex64::zero(); n];
    let mut stage = vec![Complex64::zero(); n];
    let max_steps = (t_final / dt).ceil() as usize;
    let half = 0.5 * dt;
    let sixth = dt / 6.0;

    let mut steps = 0;
    loop {
        eq.apply_into(&rho, &mut k1);
        let residual = linalg::vector_norm(&k1);
        if residual < EVOLVE_RESIDUAL_TARGET || steps >= max_steps {
            let time = steps as f64 * dt;
            let state = ComplexMatrix::from_row_major(d, d, rho)?.hermitian_part()?;
            if residual < EVOLVE_RESIDUAL_TARGET {
                return Ok(Evolution {
                    rho: state,
                    time,
                    steps,
                    residual,
                });
            }
            return Err(Error::EvolutionNotConverged {
                t_final: time,
                residual,
            });
        }
        for ((s, &r), &k) in stage.iter_mut().zip(&rho).zip(&k1) {
            *s = r + k * half;
        }
        eq.apply_into(&stage, &mut k2);
        for ((s, &r), &k) in stage.iter_mut().zip(&rho).zip(&k2) {
            *s = r + k * half;
        }
        eq.apply_into(&stage, &mut k3);
        for ((s, &r), &k) in stage.iter_mut().zip(&rho).zip(&k3) {
            *s = r + k * dt;
        }
        eq.apply_into(&stage, &mut k4);
        for i in 0..n {
            rho[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * sixth;
        }
        let tr: f64 = (0..d).map(|k| rho[k * d + k].re).sum();
        rho.iter_mut().for_each(|z| *z /= tr);
        steps += 1;
    }
}

/// Builds the model for `p`, solves it directly and evaluates observables.
pub fn steady_state(p: &SystemParams) -> Result<SteadyStateResult> {
    let layout = p.layout()?;
    let h = liouvillian::build_hamiltonian(p)?;
    let terms = liouvillian::build_dissipators(p, &layout)?;
    let l = liouvillian::liouvillian_matrix(&h, &terms)?;
    let rho = solve_direct(&l, layout.total_dim())?;
    let residual = liouvillian_residual(&l, &rho)?;
    SteadyStateResult::from_state(rho, layout, residual, SolveMethod::Direct)
}

/// Same as [`steady_state`] but through RK4 with [`EvolveOptions::auto`].
pub fn steady_state_by_evolution(p: &SystemParams) -> Result<SteadyStateResult> {
    let layout = p.layout()?;
    let h = liouvillian::build_hamiltonian(p)?;
    let terms = liouvillian::build_dissipators(p, &layout)?;
    let eq = MasterEquation::new(&h, &terms)?;
    let opts = EvolveOptions::auto(&eq);
    let evo = evolve_to_steady(&h, &terms, opts.t_final, opts.dt)?;
    let l = liouvillian::liouvillian_matrix(&h, &terms)?;
    let residual = liouvillian_residual(&l, &evo.rho)?;
    SteadyStateResult::from_state(evo.rho, layout, residual, SolveMethod::Evolve)
}

/// Direct solve, falling back to time evolution when the direct route fails
/// or leaves a residual at or above [`DIRECT_RESIDUAL_LIMIT`].
pub fn solve_accepted(p: &SystemParams) -> Result<SteadyStateResult> {
    let solved = match steady_state(p) {
        Ok(r) if r.residual_norm < DIRECT_RESIDUAL_LIMIT => r,
        Ok(_) | Err(Error::NonUniqueSteadyState) | Err(Error::ResidualTooLarge { .. }) => {
            steady_state_by_evolution(p)?
        }
        Err(e) => return Err(e),
    };
    if solved.residual_norm.is_nan() || solved.residual_norm >= DIRECT_RESIDUAL_LIMIT {
        return Err(Error::ResidualTooLarge {
            residual: solved.residual_norm,
            limit: DIRECT_RESIDUAL_LIMIT,
        });
    }
    Ok(solved)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationQuantity {
    G2,
    MeanMagnon,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    pub converged: bool,
    pub n_fock: usize,
    pub value: Option<f64>,
    pub value_extended: Option<f64>,
}

/// Compares `quantity` at `n_fock` and `n_fock + 4`. Two undefined `g²(0)`
/// values (no magnon population at either size) count as converged.
pub fn truncation_converged(
    p: &SystemParams,
    quantity: TruncationQuantity,
    tol: f64,
) -> Result<TruncationReport> {
    if p.n_fock < 2 {
        return Err(Error::FockTooSmall(p.n_fock));
    }
    let pick = |r: &SteadyStateResult| match quantity {
        TruncationQuantity::G2 => r.g2_zero,
        TruncationQuantity::MeanMagnon => Some(r.mean_magnon),
    };
    let base = steady_state(p)?;
    let extended = steady_state(&SystemParams {
        n_fock: p.n_fock + 4,
        ..p.clone()
    })?;
    let (a, b) = (pick(&base), pick(&extended));
    let converged = match (a, b) {
        (Some(x), Some(y)) => Float::abs(x - y) < tol,
        (None, None) => true,
        _ => false,
    };
    Ok(TruncationReport {
        converged,
        n_fock: p.n_fock,
        value: a,
        value_extended: b,
    })
}
