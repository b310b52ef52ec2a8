//! Process exit codes and the machine-readable error line.

use magblock_core::Error;

use crate::config::ConfigError;

pub const SUCCESS: i32 = 0;
pub const USAGE: i32 = 2;
pub const CONFIG: i32 = 3;
pub const IO: i32 = 4;
pub const CHECK_FAILED: i32 = 5;
pub const INTERNAL: i32 = 6;

/// `(code, kind)` for every solver-side error.
pub fn classify(e: &Error) -> (i32, &'static str) {
    match e {
        Error::ZeroDimension => (10, "zero_dimension"),
        Error::NotSquare { .. } => (11, "not_square"),
        Error::DimensionMismatch { .. } => (12, "dimension_mismatch"),
        Error::NonFinite { .. } => (13, "non_finite"),
        Error::FockTooSmall(_) => (14, "fock_too_small"),
        Error::InvalidParameter { .. } => (15, "invalid_parameter"),
        Error::NonUniqueSteadyState => (20, "non_unique_steady_state"),
        Error::ResidualTooLarge { .. } => (21, "residual_too_large"),
        Error::StepTooLarge { .. } => (22, "step_too_large"),
        Error::HorizonTooShort { .. } => (23, "horizon_too_short"),
        Error::EvolutionNotConverged { .. } => (24, "evolution_not_converged"),
        Error::UndefinedCorrelation { .. } => (30, "undefined_correlation"),
        Error::NegativePopulation { .. } => (31, "negative_population"),
        Error::BracketViolation { .. } => (40, "bracket_violation"),
        Error::InvalidAxis(_) => (41, "invalid_axis"),
        Error::GridTooLarge { .. } => (42, "grid_too_large"),
        Error::SweepPoint { source, .. } => {
            let (code, _) = classify(source);
            (code + 100, "sweep_point")
        }
    }
}

/// Exit code table shown in `--help`.
pub const HELP_TABLE: &str = "\
Exit codes:
    0    success
    2    command-line usage error
    3    configuration error (unknown key, bad value, violated invariant)
    4    file read or write failure
    5    check mode: at least one property failed
    6    internal failure (worker pool, serialization)
    10   zero-sized matrix
    11   non-square matrix
    12   dimension mismatch
    13   non-finite matrix entry
    14   Fock truncation below 2
    15   invalid parameter value
    20   steady state is not unique
    21   steady-state residual above limit
    22   RK4 step too large for the generator norm
    23   RK4 horizon shorter than 10 relaxation times
    24   RK4 did not converge before the horizon
    30   g2(0) undefined (no magnon population)
    31   negative magnon population
    40   thermal threshold bracket violated
    41   invalid sweep axis
    42   sweep grid too large
    1xx  a sweep point failed; xx is the code of the underlying failure

Failures also print one line to stderr:
    {\"error\":{\"code\":N,\"kind\":\"...\",\"message\":\"...\"}}";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Solve(#[from] Error),
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Internal(String),
    #[error("{failed} of {total} checks failed")]
    CheckFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn code(&self) -> i32 {
        self.classify().0
    }

    pub fn classify(&self) -> (i32, &'static str) {
        match self {
            CliError::Config(_) => (CONFIG, "config"),
            CliError::Solve(e) => classify(e),
            CliError::Io { .. } => (IO, "io"),
            CliError::Internal(_) => (INTERNAL, "internal"),
            CliError::CheckFailed { .. } => (CHECK_FAILED, "check_failed"),
        }
    }

    /// Single-line JSON description for stderr.
    pub fn error_line(&self) -> String {
        let (code, kind) = self.classify();
        serde_json::json!({
            "error": { "code": code, "kind": kind, "message": self.to_string() }
        })
        .to_string()
    }
}

impl From<crate::parallel::SweepError> for CliError {
    fn from(e: crate::parallel::SweepError) -> Self {
        match e {
            crate::parallel::SweepError::Solve(e) => CliError::Solve(e),
            crate::parallel::SweepError::Pool(e) => CliError::Internal(e.to_string()),
        }
    }
}
