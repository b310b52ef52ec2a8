//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands;
use crate::config::{parse_config, Mode};
use crate::exit::{self, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "magblock",
    version,
    about = "Steady-state magnon blockade simulator for a driven dispersive qubit-magnon system",
    long_about = "Steady-state magnon blockade simulator for a driven dispersive qubit-magnon system.\n\n\
All rates and detunings are in units of the reference rate gamma (gamma_ref_hz, default 2*pi*1 MHz). \
A run is described by a flat `key = value` file plus `--set key=value` overrides.",
    after_long_help = exit::HELP_TABLE
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Run configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Override a configuration key; may be repeated.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,
    /// Fock-space truncation of the magnon mode.
    #[arg(long, global = true, value_name = "N")]
    pub fock: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Solve one steady state and print a JSON summary.
    Steady,
    /// Solve a 1-D or 2-D grid (axis1, axis2) and write CSV.
    Sweep,
    /// Print the eight closed-form resonance detunings.
    Resonance,
    /// Bisect the thermal occupation of noise_channel for the g2(0) = 1 crossing.
    ThermalThreshold,
    /// Run the invariant suite and report each property.
    Check,
}

impl Command {
    pub fn mode(self) -> Mode {
        match self {
            Command::Steady => Mode::Steady,
            Command::Sweep => Mode::Sweep,
            Command::Resonance => Mode::Resonance,
            Command::ThermalThreshold => Mode::ThermalThreshold,
            Command::Check => Mode::Check,
        }
    }
}

/// Flags become overrides applied after `--set`, the subcommand last.
pub fn overrides(cli: &Cli) -> Vec<String> {
    let c = &cli.common;
    let mut out = c.set.clone();
    if let Some(n) = c.fock {
        out.push(format!("n_fock={n}"));
    }
    if let Some(o) = &c.out {
        out.push(format!("output={o}"));
    }
    if let Some(f) = c.format {
        out.push(match f {
            FormatArg::Csv => "format=csv".into(),
            FormatArg::Json => "format=json".into(),
        });
    }
    if let Some(w) = c.workers {
        out.push(format!("workers={w}"));
    }
    out.push(format!("mode={}", cli.command.mode().as_str()));
    out
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let text = match &cli.common.config {
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            context: format!("reading {}", path.display()),
            source,
        })?,
        None => String::new(),
    };
    let cfg = parse_config(&text, &overrides(cli))?;
    commands::run(&cfg)
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::SUCCESS
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => exit::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.error_line());
            e.code()
        }
    }
}
