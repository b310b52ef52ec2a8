//! Model parameters, all rates and detunings in units of the reference rate γ.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fockspace::HilbertLayout;

pub const DEFAULT_N_FOCK: usize = 6;

/// Physical value of γ in rad/s (γ = 2π × 1 MHz).
pub const DEFAULT_GAMMA_REF_HZ: f64 = 2.0 * PI * 1.0e6;

/// Parameters of the rotating-frame model.
///
/// Defaults are the experimental values used throughout: `Ω_s = 15`,
/// `Ω_d = 0.1`, `Δ_q = −20`, `κ_m = 1.4`, `κ_q = 1.2`, `κ₁ = 1`, zero thermal
/// occupation, `n_fock = 6`. `Δ_m` and `χ_qm` default to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    /// Magnon–drive detuning `Δ_m = ω_m − ω_d`.
    pub delta_m: f64,
    /// Qubit–control detuning `Δ_q = ω̃_q − ω_s` with the dispersive shift
    /// already folded into `ω̃_q = ω_q + χ_qm`.
    pub delta_q: f64,
    /// Dispersive coupling `χ_qm`.
    pub chi_qm: f64,
    /// Qubit control strength `Ω_s`.
    pub omega_s: f64,
    /// Magnon drive Rabi frequency `Ω_d`.
    pub omega_d: f64,
    pub kappa_m: f64,
    pub kappa_q: f64,
    pub kappa_1: f64,
    /// Overrides the derived pure dephasing rate when set.
    pub kappa_phi: Option<f64>,
    pub n_th: f64,
    pub m_th: f64,
    pub n_fock: usize,
    pub gamma_ref_hz: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            delta_m: 0.0,
            delta_q: -20.0,
            chi_qm: 0.0,
            omega_s: 15.0,
            omega_d: 0.1,
            kappa_m: 1.4,
            kappa_q: 1.2,
            kappa_1: 1.0,
            kappa_phi: None,
            n_th: 0.0,
            m_th: 0.0,
            n_fock: DEFAULT_N_FOCK,
            gamma_ref_hz: DEFAULT_GAMMA_REF_HZ,
        }
    }
}

impl SystemParams {
    /// Pure dephasing rate: the override if present, else `½(κ₁ + κ_q)`.
    pub fn dephasing_rate(&self) -> f64 {
        self.kappa_phi
            .unwrap_or(0.5 * (self.kappa_1 + self.kappa_q))
    }

    /// The conventional alternative `κ_φ = κ_q − κ₁/2`, for side-by-side runs.
    pub fn alternate_dephasing_rate(&self) -> f64 {
        self.kappa_q - 0.5 * self.kappa_1
    }

    pub fn with_alternate_dephasing(&self) -> Self {
        Self {
            kappa_phi: Some(self.alternate_dephasing_rate()),
            ..self.clone()
        }
    }

    pub fn layout(&self) -> Result<HilbertLayout> {
        HilbertLayout::new(self.n_fock)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("delta_m", self.delta_m),
            ("delta_q", self.delta_q),
            ("chi_qm", self.chi_qm),
            ("omega_s", self.omega_s),
            ("omega_d", self.omega_d),
            ("kappa_m", self.kappa_m),
            ("kappa_q", self.kappa_q),
            ("kappa_1", self.kappa_1),
            ("n_th", self.n_th),
            ("m_th", self.m_th),
            ("gamma_ref_hz", self.gamma_ref_hz),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                return Err(invalid(name, value, "must be finite"));
            }
        }
        for (name, value) in [
            ("chi_qm", self.chi_qm),
            ("omega_s", self.omega_s),
            ("omega_d", self.omega_d),
            ("n_th", self.n_th),
            ("m_th", self.m_th),
        ] {
            if value < 0.0 {
                return Err(invalid(name, value, "must be non-negative"));
            }
        }
        for (name, value) in [
            ("kappa_m", self.kappa_m),
            ("kappa_q", self.kappa_q),
            ("kappa_1", self.kappa_1),
            ("gamma_ref_hz", self.gamma_ref_hz),
        ] {
            if value <= 0.0 {
                return Err(invalid(name, value, "must be strictly positive"));
            }
        }
        if let Some(k) = self.kappa_phi {
            if !k.is_finite() || k < 0.0 {
                return Err(invalid("kappa_phi", k, "must be finite and non-negative"));
            }
        }
        if self.n_fock < 2 {
            return Err(Error::FockTooSmall(self.n_fock));
        }
        Ok(())
    }
}

fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
