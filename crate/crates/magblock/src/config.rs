//! Flat `key = value` run configuration.
//!
//! One assignment per line, `#` starts a comment, `[section]` headers are
//! accepted and ignored. Overrides are parsed with the same grammar and
//! applied after the file, in order.

use std::fmt;
use std::fmt::Write as _;

use magblock_core::sweep::{NoiseChannel, SweepParameter};
use magblock_core::{AxisSpec, SystemParams};

/// Points per axis when an axis entry omits its count.
pub const DEFAULT_POINTS_1D: usize = 241;
pub const DEFAULT_POINTS_2D: usize = 201;

/// Mode frequencies in units of γ used for thermal conversions.
pub const DEFAULT_OMEGA_M: f64 = 8500.0;
pub const DEFAULT_OMEGA_Q: f64 = 8500.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Steady,
    Sweep,
    Resonance,
    ThermalThreshold,
    Check,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Steady,
        Mode::Sweep,
        Mode::Resonance,
        Mode::ThermalThreshold,
        Mode::Check,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Steady => "steady",
            Mode::Sweep => "sweep",
            Mode::Resonance => "resonance",
            Mode::ThermalThreshold => "thermal-threshold",
            Mode::Check => "check",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub params: SystemParams,
    pub axes: Vec<AxisSpec>,
    /// `None` writes to standard output.
    pub output_path: Option<String>,
    /// `None` picks CSV for sweeps and JSON otherwise.
    pub output_format: Option<OutputFormat>,
    pub noise_channel: Option<NoiseChannel>,
    /// Upper end of the bisection bracket; `None` uses the per-channel default.
    pub threshold_hi: Option<f64>,
    pub omega_m: f64,
    pub omega_q: f64,
    /// `None` lets the thread pool size itself.
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Steady,
            params: SystemParams::default(),
            axes: Vec::new(),
            output_path: None,
            output_format: None,
            noise_channel: None,
            threshold_hi: None,
            omega_m: DEFAULT_OMEGA_M,
            omega_q: DEFAULT_OMEGA_Q,
            workers: None,
        }
    }
}

impl RunConfig {
    pub fn format(&self) -> OutputFormat {
        self.output_format.unwrap_or(match self.mode {
            Mode::Sweep => OutputFormat::Csv,
            _ => OutputFormat::Json,
        })
    }

    pub fn threshold_hi(&self) -> f64 {
        self.threshold_hi.unwrap_or(match self.noise_channel {
            Some(NoiseChannel::Qubit) => 20.0,
            _ => 0.1,
        })
    }

    /// Renders the configuration so that [`parse_config`] reproduces it.
    pub fn to_config_text(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let mut kv = |k: &str, v: &dyn fmt::Display| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("mode", &self.mode.as_str());
        kv("delta_m", &p.delta_m);
        kv("delta_q", &p.delta_q);
        kv("chi_qm", &p.chi_qm);
        kv("omega_s", &p.omega_s);
        kv("omega_d", &p.omega_d);
        kv("kappa_m", &p.kappa_m);
        kv("kappa_q", &p.kappa_q);
        kv("kappa_1", &p.kappa_1);
        if let Some(k) = p.kappa_phi {
            kv("kappa_phi", &k);
        }
        kv("n_th", &p.n_th);
        kv("m_th", &p.m_th);
        kv("n_fock", &p.n_fock);
        kv("gamma_ref_hz", &p.gamma_ref_hz);
        kv("omega_m", &self.omega_m);
        kv("omega_q", &self.omega_q);
        for (k, a) in self.axes.iter().enumerate() {
            let v = format!("{}:{}:{}:{}", a.parameter.name(), a.start, a.stop, a.points);
            kv(AXIS_KEYS[k], &v);
        }
        if let Some(c) = self.noise_channel {
            kv("noise_channel", &c.name());
        }
        if let Some(hi) = self.threshold_hi {
            kv("threshold_hi", &hi);
        }
        if let Some(o) = &self.output_path {
            kv("output", o);
        }
        if let Some(f) = self.output_format {
            kv("format", &f.as_str());
        }
        if let Some(w) = self.workers {
            kv("workers", &w);
        }
        s
    }
}

const AXIS_KEYS: [&str; 2] = ["axis1", "axis2"];

/// Where a key was assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Line(usize),
    Override(usize),
    Default,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(n) => write!(f, "line {n}"),
            Location::Override(n) => write!(f, "override {n}"),
            Location::Default => f.write_str("defaults"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("{location}: expected `key = value`, found {text:?}")]
    Syntax { location: Location, text: String },
    #[error("{location}: unknown key `{key}`")]
    UnknownKey { location: Location, key: String },
    #[error("{location}: invalid value {value:?} for `{key}`: {reason}")]
    InvalidValue {
        location: Location,
        key: String,
        value: String,
        reason: String,
    },
    #[error("{location}: `{key}` {reason}")]
    Invariant {
        location: Location,
        key: String,
        reason: String,
    },
}

impl ConfigError {
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::Syntax { .. } => None,
            ConfigError::UnknownKey { key, .. }
            | ConfigError::InvalidValue { key, .. }
            | ConfigError::Invariant { key, .. } => Some(key),
        }
    }

    pub fn location(&self) -> Location {
        match self {
            ConfigError::Syntax { location, .. }
            | ConfigError::UnknownKey { location, .. }
            | ConfigError::InvalidValue { location, .. }
            | ConfigError::Invariant { location, .. } => *location,
        }
    }
}

#[derive(Debug, Clone)]
struct RawAxis {
    parameter: SweepParameter,
    start: f64,
    stop: f64,
    points: Option<usize>,
    location: Location,
}

struct Builder {
    cfg: RunConfig,
    axes: [Option<RawAxis>; 2],
    seen: Vec<(&'static str, Location)>,
}

const KEYS: &[&str] = &[
    "mode",
    "delta_m",
    "delta_q",
    "chi_qm",
    "omega_s",
    "omega_d",
    "kappa_m",
    "kappa_q",
    "kappa_1",
    "kappa_phi",
    "n_th",
    "m_th",
    "n_fock",
    "gamma_ref_hz",
    "omega_m",
    "omega_q",
    "axis1",
    "axis2",
    "noise_channel",
    "threshold_hi",
    "output",
    "format",
    "workers",
];

fn invalid(location: Location, key: &str, value: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::InvalidValue {
        location,
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.into(),
    }
}

fn real(location: Location, key: &str, value: &str) -> Result<f64, ConfigError> {
    match value.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err(invalid(location, key, value, "must be finite")),
        Err(_) => Err(invalid(location, key, value, "not a number")),
    }
}

fn count(location: Location, key: &str, value: &str) -> Result<usize, ConfigError> {
    value
        .parse::<usize>()
        .map_err(|_| invalid(location, key, value, "not a non-negative integer"))
}

fn axis(location: Location, key: &str, value: &str) -> Result<RawAxis, ConfigError> {
    let parts: Vec<&str> = value.split(':').map(str::trim).collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(invalid(
            location,
            key,
            value,
            "expected parameter:start:stop[:points]",
        ));
    }
    let parameter = SweepParameter::from_name(parts[0]).ok_or_else(|| {
        let names: Vec<&str> = SweepParameter::ALL.iter().map(|p| p.name()).collect();
        invalid(
            location,
            key,
            value,
            format!("axis parameter must be one of {}", names.join(", ")),
        )
    })?;
    Ok(RawAxis {
        parameter,
        start: real(location, key, parts[1])?,
        stop: real(location, key, parts[2])?,
        points: parts.get(3).map(|p| count(location, key, p)).transpose()?,
        location,
    })
}

impl Builder {
    fn assign(&mut self, location: Location, key: &str, value: &str) -> Result<(), ConfigError> {
        let Some(&name) = KEYS.iter().find(|k| **k == key) else {
            return Err(ConfigError::UnknownKey {
                location,
                key: key.to_string(),
            });
        };
        self.seen.retain(|(k, _)| *k != name);
        self.seen.push((name, location));
        let p = &mut self.cfg.params;
        match name {
            "mode" => {
                self.cfg.mode = Mode::from_name(value).ok_or_else(|| {
                    invalid(
                        location,
                        key,
                        value,
                        "expected steady, sweep, resonance, thermal-threshold or check",
                    )
                })?
            }
            "delta_m" => p.delta_m = real(location, key, value)?,
            "delta_q" => p.delta_q = real(location, key, value)?,
            "chi_qm" => p.chi_qm = real(location, key, value)?,
            "omega_s" => p.omega_s = real(location, key, value)?,
            "omega_d" => p.omega_d = real(location, key, value)?,
            "kappa_m" => p.kappa_m = real(location, key, value)?,
            "kappa_q" => p.kappa_q = real(location, key, value)?,
            "kappa_1" => p.kappa_1 = real(location, key, value)?,
            "kappa_phi" => p.kappa_phi = Some(real(location, key, value)?),
            "n_th" => p.n_th = real(location, key, value)?,
            "m_th" => p.m_th = real(location, key, value)?,
            "n_fock" => p.n_fock = count(location, key, value)?,
            "gamma_ref_hz" => p.gamma_ref_hz = real(location, key, value)?,
            "omega_m" => self.cfg.omega_m = real(location, key, value)?,
            "omega_q" => self.cfg.omega_q = real(location, key, value)?,
            "axis1" => self.axes[0] = Some(axis(location, key, value)?),
            "axis2" => self.axes[1] = Some(axis(location, key, value)?),
            "noise_channel" => {
                self.cfg.noise_channel = Some(match value {
                    "m_th" => NoiseChannel::Magnon,
                    "n_th" => NoiseChannel::Qubit,
                    _ => return Err(invalid(location, key, value, "expected m_th or n_th")),
                })
            }
            "threshold_hi" => self.cfg.threshold_hi = Some(real(location, key, value)?),
            "output" => {
                if value.is_empty() {
                    return Err(invalid(location, key, value, "must not be empty"));
                }
                self.cfg.output_path = Some(value.to_string())
            }
            "format" => {
                self.cfg.output_format = Some(
                    OutputFormat::from_name(value)
                        .ok_or_else(|| invalid(location, key, value, "expected csv or json"))?,
                )
            }
            "workers" => {
                let w = count(location, key, value)?;
                if w == 0 {
                    return Err(invalid(location, key, value, "must be at least 1"));
                }
                self.cfg.workers = Some(w)
            }
            _ => unreachable!("key table and match arms disagree"),
        }
        Ok(())
    }

    fn location_of(&self, key: &str) -> Location {
        self.seen
            .iter()
            .find(|(k, _)| *k == key)
            .map_or(Location::Default, |(_, l)| *l)
    }

    fn finish(mut self) -> Result<RunConfig, ConfigError> {
        if let Err(e) = self.cfg.params.validate() {
            let (key, reason) = match &e {
                magblock_core::Error::InvalidParameter {
                    name,
                    value,
                    reason,
                } => (*name, format!("= {value}: {reason}")),
                other => ("n_fock", other.to_string()),
            };
            return Err(ConfigError::Invariant {
                location: self.location_of(key),
                key: key.to_string(),
                reason,
            });
        }
        for (key, value) in [("omega_m", self.cfg.omega_m), ("omega_q", self.cfg.omega_q)] {
            if value <= 0.0 {
                return Err(ConfigError::Invariant {
                    location: self.location_of(key),
                    key: key.to_string(),
                    reason: "must be strictly positive".into(),
                });
            }
        }
        if let Some(hi) = self.cfg.threshold_hi {
            if hi <= 0.0 {
                return Err(ConfigError::Invariant {
                    location: self.location_of("threshold_hi"),
                    key: "threshold_hi".into(),
                    reason: "must be strictly positive".into(),
                });
            }
        }

        if self.axes[1].is_some() && self.axes[0].is_none() {
            return Err(ConfigError::Invariant {
                location: self.location_of("axis2"),
                key: "axis2".into(),
                reason: "given without axis1".into(),
            });
        }
        let raw: Vec<(usize, RawAxis)> = self
            .axes
            .iter_mut()
            .enumerate()
            .filter_map(|(k, a)| a.take().map(|a| (k, a)))
            .collect();
        let default_points = if raw.len() == 2 {
            DEFAULT_POINTS_2D
        } else {
            DEFAULT_POINTS_1D
        };
        for (k, a) in &raw {
            let points = a.points.unwrap_or(default_points);
            let spec = AxisSpec::new(a.parameter, a.start, a.stop, points).map_err(|e| {
                ConfigError::Invariant {
                    location: a.location,
                    key: AXIS_KEYS[*k].into(),
                    reason: e.to_string(),
                }
            })?;
            self.cfg.axes.push(spec);
        }
        if let [(_, a), (_, b)] = raw.as_slice() {
            if a.parameter == b.parameter {
                return Err(ConfigError::Invariant {
                    location: b.location,
                    key: "axis2".into(),
                    reason: "repeats the parameter of axis1".into(),
                });
            }
        }

        let mode_location = self.location_of("mode");
        let mode_error = |reason: &str| ConfigError::Invariant {
            location: mode_location,
            key: "mode".into(),
            reason: reason.into(),
        };
        match self.cfg.mode {
            Mode::Sweep if self.cfg.axes.is_empty() => {
                return Err(mode_error("sweep requires axis1"));
            }
            Mode::ThermalThreshold if self.cfg.noise_channel.is_none() => {
                return Err(mode_error("thermal-threshold requires noise_channel"));
            }
            Mode::Sweep => {}
            _ if !self.cfg.axes.is_empty() => {
                return Err(mode_error("only sweep mode accepts axes"));
            }
            _ => {}
        }
        Ok(self.cfg)
    }
}

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn unquote(v: &str) -> &str {
    v.strip_prefix('"')
        .and_then(|v| v.strip_suffix('"'))
        .unwrap_or(v)
}

fn split_assignment(
    location: Location,
    raw: &str,
) -> Result<Option<(String, String)>, ConfigError> {
    let line = strip(raw);
    if line.is_empty() || (line.starts_with('[') && line.ends_with(']')) {
        return Ok(None);
    }
    match line.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => {
            Ok(Some((k.trim().to_string(), unquote(v.trim()).to_string())))
        }
        _ => Err(ConfigError::Syntax {
            location,
            text: raw.trim().to_string(),
        }),
    }
}

/// Parses `text`, applies `overrides` (each `key=value`) in order and
/// validates the result.
pub fn parse_config<S: AsRef<str>>(text: &str, overrides: &[S]) -> Result<RunConfig, ConfigError> {
    let mut b = Builder {
        cfg: RunConfig::default(),
        axes: [None, None],
        seen: Vec::new(),
    };
    for (n, raw) in text.lines().enumerate() {
        let location = Location::Line(n + 1);
        if let Some((k, v)) = split_assignment(location, raw)? {
            b.assign(location, &k, &v)?;
        }
    }
    for (n, raw) in overrides.iter().enumerate() {
        let location = Location::Override(n + 1);
        match split_assignment(location, raw.as_ref())? {
            Some((k, v)) => b.assign(location, &k, &v)?,
            None => {
                return Err(ConfigError::Syntax {
                    location,
                    text: raw.as_ref().to_string(),
                })
            }
        }
    }
    b.finish()
}
