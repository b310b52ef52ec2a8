//! Closed-form single- and two-magnon resonance detunings, and their
//! comparison against solved `g²(0)` curves.
//!
//! With `A = √((Δ_q + 2χ)² + Ω_s²)`, `B = √(Δ_q² + Ω_s²)` and
//! `C = √((Δ_q + 4χ)² + Ω_s²)`, single-magnon resonances sit at
//! `½(s₁A + s₂B)` and two-magnon resonances at `¼(s₁C + s₂B)`. These are
//! approximate predictors; [`annotate_curve`] measures how far each one is
//! from the extrema of an actual solve.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sweep::{SweepParameter, SweepResult};
use num_traits::Float;

/// Sign pairs `(s₁, s₂)` in output order.
pub const SIGN_ORDER: [(f64, f64); 4] = [(1.0, -1.0), (-1.0, 1.0), (1.0, 1.0), (-1.0, -1.0)];

const SINGLE_LABELS: [&str; 4] = [
    "|g,0>->|g,1>",
    "|e,0>->|e,1>",
    "|e,0>->|g,1>",
    "|g,0>->|e,1>",
];

const TWO_LABELS: [&str; 4] = [
    "|g,0>->|g(e),2>",
    "|e,0>->|g(e),2>",
    "|e,0>->|g(e),2>",
    "|g,0>->|g(e),2>",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResonanceOrder {
    SingleMagnon,
    TwoMagnon,
}

impl ResonanceOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            ResonanceOrder::SingleMagnon => "single",
            ResonanceOrder::TwoMagnon => "two",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub order: ResonanceOrder,
    pub label: &'static str,
    pub signs: (f64, f64),
    /// Predicted `Δ_m`, in units of γ.
    pub detuning: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceSet {
    pub single_magnon: [Resonance; 4],
    pub two_magnon: [Resonance; 4],
}

impl ResonanceSet {
    pub fn new(delta_q: f64, chi_qm: f64, omega_s: f64) -> Self {
        Self {
            single_magnon: single_magnon_detunings(delta_q, chi_qm, omega_s),
            two_magnon: two_magnon_detunings(delta_q, chi_qm, omega_s),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Resonance> {
        self.single_magnon.iter().chain(self.two_magnon.iter())
    }
}

fn build(
    order: ResonanceOrder,
    labels: &[&'static str; 4],
    outer: f64,
    inner: f64,
    divisor: f64,
) -> [Resonance; 4] {
    core::array::from_fn(|k| {
        let (s1, s2) = SIGN_ORDER[k];
        Resonance {
            order,
            label: labels[k],
            signs: (s1, s2),
            detuning: (s1 * outer + s2 * inner) / divisor,
        }
    })
}

pub fn single_magnon_detunings(delta_q: f64, chi_qm: f64, omega_s: f64) -> [Resonance; 4] {
    let a = Float::hypot(delta_q + 2.0 * chi_qm, omega_s);
    let b = Float::hypot(delta_q, omega_s);
    build(ResonanceOrder::SingleMagnon, &SINGLE_LABELS, a, b, 2.0)
}

pub fn two_magnon_detunings(delta_q: f64, chi_qm: f64, omega_s: f64) -> [Resonance; 4] {
    let c = Float::hypot(delta_q + 4.0 * chi_qm, omega_s);
    let b = Float::hypot(delta_q, omega_s);
    build(ResonanceOrder::TwoMagnon, &TWO_LABELS, c, b, 4.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
}

impl ExtremumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremumKind::Minimum => "min",
            ExtremumKind::Maximum => "max",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub index: usize,
    pub detuning: f64,
    pub kind: ExtremumKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnnotationStatus {
    OutOfRange,
    InRange {
        nearest_index: usize,
        /// Extremum within ±3 grid points of `nearest_index`, closest first.
        local: Option<Extremum>,
        /// Closest extremum anywhere on the curve.
        nearest: Option<Extremum>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annotation {
    pub resonance: Resonance,
    pub status: AnnotationStatus,
}

impl Annotation {
    /// `|prediction − local extremum|`, if a local extremum was found.
    pub fn local_distance(&self) -> Option<f64> {
        match self.status {
            AnnotationStatus::InRange { local: Some(e), .. } => {
                Some(Float::abs(e.detuning - self.resonance.detuning))
            }
            _ => None,
        }
    }

    /// `|prediction − nearest extremum anywhere|`.
    pub fn nearest_distance(&self) -> Option<f64> {
        match self.status {
            AnnotationStatus::InRange {
                nearest: Some(e), ..
            } => Some(Float::abs(e.detuning - self.resonance.detuning)),
            _ => None,
        }
    }
}

/// Strict interior local extrema; points next to undefined values are skipped.
pub fn local_extrema(axis: &[f64], values: &[Option<f64>]) -> Vec<Extremum> {
    let n = axis.len().min(values.len());
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let (Some(prev), Some(cur), Some(next)) = (values[i - 1], values[i], values[i + 1]) else {
            continue;
        };
        let kind = if cur < prev && cur < next {
            ExtremumKind::Minimum
        } else if cur > prev && cur > next {
            ExtremumKind::Maximum
        } else {
            continue;
        };
        out.push(Extremum {
            index: i,
            detuning: axis[i],
            kind,
        });
    }
    out
}

/// Annotates a `g²(0)` curve sampled on the increasing grid `axis`.
pub fn annotate_curve(
    axis: &[f64],
    g2: &[Option<f64>],
    resonances: &[Resonance],
) -> Result<Vec<Annotation>> {
    if axis.len() != g2.len() {
        return Err(Error::DimensionMismatch {
            op: "annotate_curve",
            expected: (axis.len(), 1),
            found: (g2.len(), 1),
        });
    }
    let extrema = local_extrema(axis, g2);
    let (lo, hi) = match (axis.first(), axis.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Ok(Vec::new()),
    };
    Ok(resonances
        .iter()
        .map(|&r| {
            if !(r.detuning >= lo && r.detuning <= hi) {
                return Annotation {
                    resonance: r,
                    status: AnnotationStatus::OutOfRange,
                };
            }
            let nearest_index = axis
                .iter()
                .enumerate()
                .min_by(|a, b| {
                    Float::abs(a.1 - r.detuning).total_cmp(&Float::abs(b.1 - r.detuning))
                })
                .map(|(i, _)| i)
                .unwrap_or(0);
            let by_distance = |a: &&Extremum, b: &&Extremum| {
                Float::abs(a.detuning - r.detuning).total_cmp(&Float::abs(b.detuning - r.detuning))
            };
            let local = extrema
                .iter()
                .filter(|e| e.index.abs_diff(nearest_index) <= 3)
                .min_by(by_distance)
                .copied();
            let nearest = extrema.iter().min_by(by_distance).copied();
            Annotation {
                resonance: r,
                status: AnnotationStatus::InRange {
                    nearest_index,
                    local,
                    nearest,
                },
            }
        })
        .collect())
}

/// Annotates a one-dimensional `Δ_m` sweep.
pub fn annotate_sweep(result: &SweepResult, resonances: &[Resonance]) -> Result<Vec<Annotation>> {
    if result.axes.len() != 1 || result.axes[0].parameter != SweepParameter::DeltaM {
        return Err(Error::InvalidAxis(
            "annotation needs a one-dimensional delta_m sweep",
        ));
    }
    let axis: Vec<f64> = result.records.iter().map(|r| r.coordinates[0]).collect();
    let g2: Vec<Option<f64>> = result.records.iter().map(|r| r.g2_zero).collect();
    annotate_curve(&axis, &g2, resonances)
}
