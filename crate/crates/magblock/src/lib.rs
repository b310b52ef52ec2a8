//! Command line, parallel sweeps, file formats and self-checks on top of
//! [`magblock_core`].

pub mod check;
pub mod cli;
pub mod commands;
pub mod config;
pub mod csv;
pub mod exit;
pub mod parallel;
pub mod spectrum;

pub use config::{parse_config, ConfigError, Mode, OutputFormat, RunConfig};
pub use exit::CliError;
