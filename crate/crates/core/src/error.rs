use alloc::boxed::Box;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    ZeroDimension,

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("{op}: dimension mismatch, expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        op: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("Fock truncation must be at least 2, got {0}")]
    FockTooSmall(usize),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("steady state is not unique: the trace-pinned Liouvillian is singular")]
    NonUniqueSteadyState,

    #[error("steady-state residual {residual:e} exceeds {limit:e}")]
    ResidualTooLarge { residual: f64, limit: f64 },

    #[error("time step {dt:e} too large: dt * |L| = {product:.3} (must be < 0.1)")]
    StepTooLarge { dt: f64, product: f64 },

    #[error("t_final = {t_final} is shorter than the required horizon {required}")]
    HorizonTooShort { t_final: f64, required: f64 },

    #[error("time evolution did not converge by t = {t_final}: residual {residual:e}")]
    EvolutionNotConverged { t_final: f64, residual: f64 },

    #[error("g2(0) undefined: mean magnon number {mean_magnon:e} is below 1e-12")]
    UndefinedCorrelation { mean_magnon: f64 },

    #[error("population P_{n} = {value:e} is negative beyond round-off")]
    NegativePopulation { n: usize, value: f64 },

    #[error("threshold bracket invalid: g2 = {g2_lo} at occupation {lo}, g2 = {g2_hi} at occupation {hi}")]
    BracketViolation {
        lo: f64,
        hi: f64,
        g2_lo: f64,
        g2_hi: f64,
    },

    #[error("invalid axis: {0}")]
    InvalidAxis(&'static str),

    #[error("sweep grid has {points} points, limit is {limit}")]
    GridTooLarge { points: usize, limit: usize },

    #[error("sweep point {coordinates:?} failed: {source}")]
    SweepPoint {
        coordinates: Vec<f64>,
        source: Box<Error>,
    },
}
