//! Quantities read off a density matrix, and Bose–Einstein occupations.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fockspace::{self, HilbertLayout};
use crate::matrix::ComplexMatrix;
use num_traits::Float;

pub const PLANCK: f64 = 6.626_070_15e-34;
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Below this mean magnon number `g²(0)` is reported as undefined.
pub const MIN_MEAN_MAGNON: f64 = 1e-12;

/// Populations more negative than this are treated as a solver failure.
pub const NEGATIVE_POPULATION_LIMIT: f64 = -1e-10;

fn check_rho(rho: &ComplexMatrix, layout: &HilbertLayout) -> Result<()> {
    let d = layout.total_dim();
    if rho.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            op: "observable",
            expected: (d, d),
            found: rho.shape(),
        });
    }
    Ok(())
}

/// `⟨m†m⟩ = Tr(m†m ρ)`.
pub fn mean_magnon(rho: &ComplexMatrix, layout: &HilbertLayout) -> Result<f64> {
    check_rho(rho, layout)?;
    let n = layout.lift_magnon(&fockspace::number(layout.n_fock())?)?;
    Ok(fockspace::expectation(&n, rho)?.re)
}

/// `g²(0) = Tr(m†m†mm ρ) / Tr(m†m ρ)²`.
pub fn g2_zero(rho: &ComplexMatrix, layout: &HilbertLayout) -> Result<f64> {
    check_rho(rho, layout)?;
    let m = layout.lift_magnon(&fockspace::annihilation(layout.n_fock())?)?;
    let md = m.dagger();
    let n_op = md.matmul(&m)?;
    let pair = md.matmul(&md)?.matmul(&m)?.matmul(&m)?;
    let mean = fockspace::expectation(&n_op, rho)?.re;
    if mean < MIN_MEAN_MAGNON {
        return Err(Error::UndefinedCorrelation { mean_magnon: mean });
    }
    let pair = fockspace::expectation(&pair, rho)?.re;
    Ok((pair / (mean * mean)).max(0.0))
}

/// `Pₙ = Σ_q ⟨q, n|ρ|q, n⟩` for `n < n_fock`.
///
/// Entries within round-off of zero are clamped to 0; anything below
/// [`NEGATIVE_POPULATION_LIMIT`] is an error.
pub fn magnon_distribution(rho: &ComplexMatrix, layout: &HilbertLayout) -> Result<Vec<f64>> {
    check_rho(rho, layout)?;
    (0..layout.n_fock())
        .map(|n| {
            let p = rho[(layout.index(false, n), layout.index(false, n))].re
                + rho[(layout.index(true, n), layout.index(true, n))].re;
            if p < NEGATIVE_POPULATION_LIMIT {
                Err(Error::NegativePopulation { n, value: p })
            } else {
                Ok(p.max(0.0))
            }
        })
        .collect()
}

/// `Σₙ ⟨e, n|ρ|e, n⟩`.
pub fn qubit_excitation(rho: &ComplexMatrix, layout: &HilbertLayout) -> Result<f64> {
    check_rho(rho, layout)?;
    Ok((0..layout.n_fock())
        .map(|n| rho[(layout.index(true, n), layout.index(true, n))].re)
        .sum())
}

/// Bose–Einstein occupation `1/(exp(h·f/k_B·T) − 1)` for an ordinary
/// frequency `f` in Hz. Returns exactly 0 when the exponent exceeds 700.
pub fn thermal_occupation(freq_hz: f64, temperature_k: f64) -> Result<f64> {
    if !(freq_hz > 0.0 && freq_hz.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "freq_hz",
            value: freq_hz,
            reason: "must be strictly positive",
        });
    }
    if !(temperature_k > 0.0 && temperature_k.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "temperature_k",
            value: temperature_k,
            reason: "must be strictly positive",
        });
    }
    let x = PLANCK * freq_hz / (BOLTZMANN * temperature_k);
    if x > 700.0 {
        return Ok(0.0);
    }
    Ok(1.0 / Float::exp_m1(x))
}

/// Inverse of [`thermal_occupation`] in temperature.
pub fn temperature_for_occupation(freq_hz: f64, occupation: f64) -> Result<f64> {
    if !(freq_hz > 0.0 && freq_hz.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "freq_hz",
            value: freq_hz,
            reason: "must be strictly positive",
        });
    }
    if !(occupation > 0.0 && occupation.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "occupation",
            value: occupation,
            reason: "must be strictly positive",
        });
    }
    Ok(PLANCK * freq_hz / (BOLTZMANN * Float::ln_1p(1.0 / occupation)))
}

/// Bath temperature together with the mode frequencies it populates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalSpec {
    pub temperature_k: f64,
    pub omega_m_hz: f64,
    pub omega_q_hz: f64,
}

impl ThermalSpec {
    pub fn new(temperature_k: f64, omega_m_hz: f64, omega_q_hz: f64) -> Result<Self> {
        for (name, value) in [
            ("temperature_k", temperature_k),
            ("omega_m_hz", omega_m_hz),
            ("omega_q_hz", omega_q_hz),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be strictly positive",
                });
            }
        }
        Ok(Self {
            temperature_k,
            omega_m_hz,
            omega_q_hz,
        })
    }

    /// `(m_th, n_th)`.
    pub fn occupations(&self) -> Result<(f64, f64)> {
        Ok((
            thermal_occupation(self.omega_m_hz, self.temperature_k)?,
            thermal_occupation(self.omega_q_hz, self.temperature_k)?,
        ))
    }
}

/// `|g⟩⟨g| ⊗ ρ_th` with the geometric distribution truncated and renormalized.
pub fn thermal_reference_state(layout: &HilbertLayout, m_th: f64) -> ComplexMatrix {
    let ratio = m_th / (1.0 + m_th);
    let weights: Vec<f64> = (0..layout.n_fock())
        .map(|n| Float::powi(ratio, n as i32))
        .collect();
    let z: f64 = weights.iter().sum();
    let mut rho = ComplexMatrix::zeros(layout.total_dim(), layout.total_dim());
    for (n, w) in weights.iter().enumerate() {
        let k = layout.index(false, n);
        rho[(k, k)] = Complex64::new(w / z, 0.0);
    }
    rho
}

/// `|g⟩⟨g| ⊗ |α⟩⟨α|` with the coherent state truncated and renormalized.
pub fn coherent_reference_state(layout: &HilbertLayout, alpha: Complex64) -> ComplexMatrix {
    let mut amp = Vec::with_capacity(layout.total_dim());
    amp.resize(layout.total_dim(), Complex64::new(0.0, 0.0));
    let mut c = Complex64::new(1.0, 0.0);
    for n in 0..layout.n_fock() {
        if n > 0 {
            c = c * alpha / Float::sqrt(n as f64);
        }
        amp[layout.index(false, n)] = c;
    }
    let norm = Float::sqrt(amp.iter().map(|z| z.norm_sqr()).sum::<f64>());
    amp.iter_mut().for_each(|z| *z /= norm);
    ComplexMatrix::outer(&amp, &amp)
}
