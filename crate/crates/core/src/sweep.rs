//! Parameter grids of steady-state solves, and the thermal-noise threshold.
//!
//! A sweep is a row-major grid over one or two [`AxisSpec`]s. Every grid
//! point is an independent solve; [`SweepPlan::solve_point`] is the unit of
//! work, so callers may evaluate points in any order or in parallel and
//! gather them by index.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::steadystate::{self, SolveMethod, SteadyStateResult};
use num_traits::Float;

pub const MAX_GRID_POINTS: usize = 1_000_000;

/// Number of `Pₙ` columns carried per record.
pub const RECORDED_POPULATIONS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    DeltaM,
    ChiQm,
    MTh,
    NTh,
    OmegaD,
    DeltaQ,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 6] = [
        SweepParameter::DeltaM,
        SweepParameter::ChiQm,
        SweepParameter::MTh,
        SweepParameter::NTh,
        SweepParameter::OmegaD,
        SweepParameter::DeltaQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::DeltaM => "delta_m",
            SweepParameter::ChiQm => "chi_qm",
            SweepParameter::MTh => "m_th",
            SweepParameter::NTh => "n_th",
            SweepParameter::OmegaD => "omega_d",
            SweepParameter::DeltaQ => "delta_q",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn apply(self, p: &mut SystemParams, value: f64) {
        match self {
            SweepParameter::DeltaM => p.delta_m = value,
            SweepParameter::ChiQm => p.chi_qm = value,
            SweepParameter::MTh => p.m_th = value,
            SweepParameter::NTh => p.n_th = value,
            SweepParameter::OmegaD => p.omega_d = value,
            SweepParameter::DeltaQ => p.delta_q = value,
        }
    }
}

/// Linearly spaced axis. A single-point axis (`points == 1`) must have
/// `start == stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl AxisSpec {
    pub fn new(parameter: SweepParameter, start: f64, stop: f64, points: usize) -> Result<Self> {
        let axis = Self {
            parameter,
            start,
            stop,
            points,
        };
        axis.validate()?;
        Ok(axis)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::InvalidAxis("axis bounds must be finite"));
        }
        match self.points {
            0 => Err(Error::InvalidAxis("axis needs at least one point")),
            1 if self.start != self.stop => Err(Error::InvalidAxis(
                "a single-point axis needs start == stop",
            )),
            1 => Ok(()),
            _ if self.start >= self.stop => {
                Err(Error::InvalidAxis("axis start must be below stop"))
            }
            _ => Ok(()),
        }
    }

    pub fn value(&self, k: usize) -> f64 {
        debug_assert!(k < self.points);
        if self.points == 1 {
            return self.start;
        }
        if k + 1 == self.points {
            return self.stop;
        }
        self.start + (self.stop - self.start) * (k as f64) / ((self.points - 1) as f64)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|k| self.value(k)).collect()
    }
}

/// Summary of one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub coordinates: Vec<f64>,
    pub g2_zero: Option<f64>,
    pub log10_g2: Option<f64>,
    pub p_n: [f64; RECORDED_POPULATIONS],
    pub mean_magnon: f64,
    pub qubit_excitation: f64,
    pub residual_norm: f64,
    pub method: SolveMethod,
}

impl SweepRecord {
    pub fn from_result(coordinates: Vec<f64>, r: &SteadyStateResult) -> Self {
        let mut p_n = [0.0; RECORDED_POPULATIONS];
        for (dst, &src) in p_n.iter_mut().zip(&r.p_n) {
            *dst = src;
        }
        Self {
            coordinates,
            g2_zero: r.g2_zero,
            log10_g2: r.g2_zero.map(Float::log10),
            p_n,
            mean_magnon: r.mean_magnon,
            qubit_excitation: r.qubit_excitation,
            residual_norm: r.residual_norm,
            method: r.method,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub base: SystemParams,
    pub axes: Vec<AxisSpec>,
    pub records: Vec<SweepRecord>,
}

/// A validated grid, ready to be evaluated point by point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    base: SystemParams,
    axes: Vec<AxisSpec>,
}

impl SweepPlan {
    pub fn new(base: SystemParams, axes: Vec<AxisSpec>) -> Result<Self> {
        base.validate()?;
        if axes.is_empty() || axes.len() > 2 {
            return Err(Error::InvalidAxis("a sweep takes one or two axes"));
        }
        for a in &axes {
            a.validate()?;
        }
        if axes.len() == 2 && axes[0].parameter == axes[1].parameter {
            return Err(Error::InvalidAxis(
                "the two axes must sweep different parameters",
            ));
        }
        let points = axes
            .iter()
            .try_fold(1usize, |acc, a| acc.checked_mul(a.points))
            .unwrap_or(usize::MAX);
        if points > MAX_GRID_POINTS {
            return Err(Error::GridTooLarge {
                points,
                limit: MAX_GRID_POINTS,
            });
        }
        Ok(Self { base, axes })
    }

    pub fn base(&self) -> &SystemParams {
        &self.base
    }

    pub fn axes(&self) -> &[AxisSpec] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Axis values of grid point `index`, first axis slowest.
    pub fn coordinates(&self, index: usize) -> Vec<f64> {
        let mut rest = index;
        let mut idx = [0usize; 2];
        for (slot, axis) in idx.iter_mut().zip(&self.axes).rev() {
            *slot = rest % axis.points;
            rest /= axis.points;
        }
        self.axes.iter().zip(idx).map(|(a, k)| a.value(k)).collect()
    }

    pub fn params_at(&self, index: usize) -> SystemParams {
        let mut p = self.base.clone();
        for (axis, value) in self.axes.iter().zip(self.coordinates(index)) {
            axis.parameter.apply(&mut p, value);
        }
        p
    }

    /// Direct solve, falling back to time evolution when the direct route
    /// fails or leaves a residual above the acceptance limit.
    pub fn solve_point(&self, index: usize) -> Result<SweepRecord> {
        let coordinates = self.coordinates(index);
        let p = self.params_at(index);
        let wrap = |e: Error| Error::SweepPoint {
            coordinates: coordinates.clone(),
            source: Box::new(e),
        };
        let solved = steadystate::solve_accepted(&p).map_err(wrap)?;
        Ok(SweepRecord::from_result(coordinates, &solved))
    }

    /// Packages records that were produced in grid order.
    pub fn assemble(&self, records: Vec<SweepRecord>) -> Result<SweepResult> {
        if records.len() != self.len() {
            return Err(Error::DimensionMismatch {
                op: "assemble",
                expected: (self.len(), 1),
                found: (records.len(), 1),
            });
        }
        Ok(SweepResult {
            base: self.base.clone(),
            axes: self.axes.clone(),
            records,
        })
    }
}

/// Evaluates every grid point in order on the calling thread.
pub fn run_sweep(base: &SystemParams, axes: &[AxisSpec]) -> Result<SweepResult> {
    let plan = SweepPlan::new(base.clone(), axes.to_vec())?;
    let records = (0..plan.len())
        .map(|k| plan.solve_point(k))
        .collect::<Result<Vec<_>>>()?;
    plan.assemble(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseChannel {
    /// Magnon bath occupation `m_th`.
    Magnon,
    /// Qubit bath occupation `n_th`.
    Qubit,
}

impl NoiseChannel {
    pub fn name(self) -> &'static str {
        match self {
            NoiseChannel::Magnon => "m_th",
            NoiseChannel::Qubit => "n_th",
        }
    }

    pub fn parameter(self) -> SweepParameter {
        match self {
            NoiseChannel::Magnon => SweepParameter::MTh,
            NoiseChannel::Qubit => SweepParameter::NTh,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub channel: NoiseChannel,
    /// Occupation at which `g²(0)` crosses 1.
    pub crossing: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

pub const THRESHOLD_REL_TOL: f64 = 1e-3;
pub const THRESHOLD_MAX_ITER: usize = 40;

fn g2_at(base: &SystemParams, channel: NoiseChannel, occupation: f64) -> Result<f64> {
    let mut p = base.clone();
    channel.parameter().apply(&mut p, occupation);
    let r = steadystate::steady_state(&p)?;
    r.g2_zero.ok_or(Error::UndefinedCorrelation {
        mean_magnon: r.mean_magnon,
    })
}

/// Bisects the occupation of `channel` on `[0, hi]` for the `g²(0) = 1`
/// crossing. Requires `g²(0) < 1` at zero occupation and `> 1` at `hi`.
pub fn thermal_threshold(
    base: &SystemParams,
    channel: NoiseChannel,
    hi: f64,
) -> Result<ThresholdResult> {
    if !(hi > 0.0 && hi.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "hi",
            value: hi,
            reason: "upper occupation must be strictly positive",
        });
    }
    let (mut lo, mut up) = (0.0, hi);
    let g_lo = g2_at(base, channel, lo)?;
    let g_hi = g2_at(base, channel, up)?;
    if !(g_lo < 1.0 && g_hi > 1.0) {
        return Err(Error::BracketViolation {
            lo,
            hi: up,
            g2_lo: g_lo,
            g2_hi: g_hi,
        });
    }
    let mut iterations = 0;
    while iterations < THRESHOLD_MAX_ITER && (up - lo) > THRESHOLD_REL_TOL * up {
        let mid = 0.5 * (lo + up);
        if g2_at(base, channel, mid)? < 1.0 {
            lo = mid;
        } else {
            up = mid;
        }
        iterations += 1;
    }
    Ok(ThresholdResult {
        channel,
        crossing: 0.5 * (lo + up),
        iterations,
        bracket: (lo, up),
    })
}
