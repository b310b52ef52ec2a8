//! Mode dispatch.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use magblock_core::observables::temperature_for_occupation;
use magblock_core::resonance::{Resonance, ResonanceSet};
use magblock_core::steadystate::{self, SteadyStateResult, TruncationQuantity};
use magblock_core::sweep::{self, NoiseChannel, SweepRecord};
use magblock_core::{SweepResult, SystemParams};
use serde::Serialize;

use crate::check::{self, CheckOutcome};
use crate::config::{Mode, OutputFormat, RunConfig};
use crate::csv;
use crate::exit::CliError;
use crate::parallel;

/// Tolerance on `g²(0)` for the `converged` flag of a steady solve.
pub const TRUNCATION_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteadyReport {
    pub g2: Option<f64>,
    pub p_n: Vec<f64>,
    pub mean_magnon: f64,
    pub qubit_excitation: f64,
    pub residual: f64,
    pub n_fock: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResonanceEntry {
    pub order: &'static str,
    pub label: &'static str,
    pub s1: f64,
    pub s2: f64,
    pub detuning: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub channel: &'static str,
    pub crossing: f64,
    pub temperature_k: f64,
    pub frequency_hz: f64,
    pub iterations: usize,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct CheckEntry<'a> {
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

#[derive(Serialize)]
struct AxisJson {
    parameter: &'static str,
    start: f64,
    stop: f64,
    points: usize,
}

#[derive(Serialize)]
struct RecordJson<'a> {
    coordinates: &'a [f64],
    g2: Option<f64>,
    log10_g2: Option<f64>,
    p_n: &'a [f64],
    mean_magnon: f64,
    qubit_excitation: f64,
    residual: f64,
    method: &'static str,
}

#[derive(Serialize)]
struct SweepJson<'a> {
    axes: Vec<AxisJson>,
    records: Vec<RecordJson<'a>>,
}

pub fn steady_report(p: &SystemParams) -> Result<SteadyReport, CliError> {
    steady_report_from(p, &steadystate::solve_accepted(p)?)
}

fn steady_report_from(p: &SystemParams, r: &SteadyStateResult) -> Result<SteadyReport, CliError> {
    let trunc = steadystate::truncation_converged(p, TruncationQuantity::G2, TRUNCATION_TOL)?;
    Ok(SteadyReport {
        g2: r.g2_zero,
        p_n: r.p_n.clone(),
        mean_magnon: r.mean_magnon,
        qubit_excitation: r.qubit_excitation,
        residual: r.residual_norm,
        n_fock: p.n_fock,
        converged: trunc.converged,
    })
}

pub fn resonance_entries(p: &SystemParams) -> Vec<ResonanceEntry> {
    ResonanceSet::new(p.delta_q, p.chi_qm, p.omega_s)
        .iter()
        .map(|r: &Resonance| ResonanceEntry {
            order: r.order.as_str(),
            label: r.label,
            s1: r.signs.0,
            s2: r.signs.1,
            detuning: r.detuning,
        })
        .collect()
}

/// Converts a frequency in units of γ to Hz.
pub fn gamma_units_to_hz(value: f64, gamma_ref_hz: f64) -> f64 {
    value * gamma_ref_hz / (2.0 * PI)
}

pub fn threshold_report(cfg: &RunConfig) -> Result<ThresholdReport, CliError> {
    let channel = cfg
        .noise_channel
        .expect("validated configs carry a noise channel");
    let t = sweep::thermal_threshold(&cfg.params, channel, cfg.threshold_hi())?;
    let omega = match channel {
        NoiseChannel::Magnon => cfg.omega_m,
        NoiseChannel::Qubit => cfg.omega_q,
    };
    let frequency_hz = gamma_units_to_hz(omega, cfg.params.gamma_ref_hz);
    Ok(ThresholdReport {
        channel: channel.name(),
        crossing: t.crossing,
        temperature_k: temperature_for_occupation(frequency_hz, t.crossing)?,
        frequency_hz,
        iterations: t.iterations,
        bracket_lo: t.bracket.0,
        bracket_hi: t.bracket.1,
    })
}

pub fn run_sweep(cfg: &RunConfig) -> Result<SweepResult, CliError> {
    Ok(parallel::run_sweep_parallel(
        &cfg.params,
        &cfg.axes,
        cfg.workers,
    )?)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string(value).map_err(|e| CliError::Internal(e.to_string()))
}

fn sweep_json(result: &SweepResult) -> Result<String, CliError> {
    let doc = SweepJson {
        axes: result
            .axes
            .iter()
            .map(|a| AxisJson {
                parameter: a.parameter.name(),
                start: a.start,
                stop: a.stop,
                points: a.points,
            })
            .collect(),
        records: result.records.iter().map(record_json).collect(),
    };
    to_json(&doc)
}

fn record_json(r: &SweepRecord) -> RecordJson<'_> {
    RecordJson {
        coordinates: &r.coordinates,
        g2: r.g2_zero,
        log10_g2: r.log10_g2,
        p_n: &r.p_n,
        mean_magnon: r.mean_magnon,
        qubit_excitation: r.qubit_excitation,
        residual: r.residual_norm,
        method: r.method.as_str(),
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

/// Produces the output document for `cfg`, plus the outcomes in check mode.
pub fn render(cfg: &RunConfig) -> Result<(String, Option<Vec<CheckOutcome>>), CliError> {
    let format = cfg.format();
    let text = match cfg.mode {
        Mode::Steady => {
            let r = steadystate::solve_accepted(&cfg.params)?;
            match format {
                OutputFormat::Json => to_json(&steady_report_from(&cfg.params, &r)?)? + "\n",
                OutputFormat::Csv => {
                    let result = SweepResult {
                        base: cfg.params.clone(),
                        axes: Vec::new(),
                        records: vec![SweepRecord::from_result(Vec::new(), &r)],
                    };
                    csv::to_csv_string(&result)
                }
            }
        }
        Mode::Sweep => {
            let result = run_sweep(cfg)?;
            match format {
                OutputFormat::Csv => csv::to_csv_string(&result),
                OutputFormat::Json => sweep_json(&result)? + "\n",
            }
        }
        Mode::Resonance => {
            let entries = resonance_entries(&cfg.params);
            match format {
                OutputFormat::Json => to_json(&entries)? + "\n",
                OutputFormat::Csv => {
                    let mut s = String::from("order,label,s1,s2,detuning\n");
                    for e in &entries {
                        s += &csv_line(&[
                            e.order.to_string(),
                            e.label.to_string(),
                            csv::format_real(e.s1),
                            csv::format_real(e.s2),
                            csv::format_real(e.detuning),
                        ]);
                    }
                    s
                }
            }
        }
        Mode::ThermalThreshold => {
            let rep = threshold_report(cfg)?;
            match format {
                OutputFormat::Json => to_json(&rep)? + "\n",
                OutputFormat::Csv => {
                    "channel,crossing,temperature_k,frequency_hz,iterations,bracket_lo,bracket_hi\n"
                        .to_string()
                        + &csv_line(&[
                            rep.channel.to_string(),
                            csv::format_real(rep.crossing),
                            csv::format_real(rep.temperature_k),
                            csv::format_real(rep.frequency_hz),
                            rep.iterations.to_string(),
                            csv::format_real(rep.bracket_lo),
                            csv::format_real(rep.bracket_hi),
                        ])
                }
            }
        }
        Mode::Check => {
            let outcomes = check::run_checks(&cfg.params);
            let text = match cfg.output_format {
                None => outcomes
                    .iter()
                    .map(|o| {
                        let verdict = if o.passed { "PASS" } else { "FAIL" };
                        format!("{verdict} {}: {}\n", o.name, o.detail)
                    })
                    .collect(),
                Some(OutputFormat::Json) => {
                    let entries: Vec<CheckEntry> = outcomes
                        .iter()
                        .map(|o| CheckEntry {
                            name: o.name,
                            passed: o.passed,
                            detail: &o.detail,
                        })
                        .collect();
                    to_json(&entries)? + "\n"
                }
                Some(OutputFormat::Csv) => {
                    let mut s = String::from("name,passed,detail\n");
                    for o in &outcomes {
                        s += &csv_line(&[
                            o.name.to_string(),
                            o.passed.to_string(),
                            format!("\"{}\"", o.detail.replace('"', "\"\"")),
                        ]);
                    }
                    s
                }
            };
            return Ok((text, Some(outcomes)));
        }
    };
    Ok((text, None))
}

fn write_output(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output_path {
        Some(path) => {
            let io_err = |source| CliError::Io {
                context: format!("writing {path}"),
                source,
            };
            let mut f = BufWriter::new(File::create(path).map_err(io_err)?);
            f.write_all(text.as_bytes()).map_err(io_err)?;
            f.flush().map_err(io_err)
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    context: "writing standard output".into(),
                    source,
                })
        }
    }
}

/// Executes `cfg`, writing its output to the configured destination.
pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let (text, outcomes) = render(cfg)?;
    write_output(cfg, &text)?;
    if let Some(outcomes) = outcomes {
        let failed = outcomes.iter().filter(|o| !o.passed).count();
        if failed > 0 {
            return Err(CliError::CheckFailed {
                failed,
                total: outcomes.len(),
            });
        }
    }
    Ok(())
}
