use thiserror::Error;

use crate::spectral::Repr;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("expected a field in {expected:?} representation, found {found:?}")]
    WrongRepr { expected: Repr, found: Repr },

    #[error("fields live on different grids")]
    GridMismatch,

    /// A parameter fell outside its admissible range. `bound` names the
    /// violated constraint, e.g. `s ∈ (1/2, 1)`.
    #[error("parameter `{name}` = {value} violates {bound}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        bound: &'static str,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("time step {dt} too large: dt * max|u|^2 = {rotation:.3e} exceeds {cap}")]
    StepTooLarge { dt: f64, rotation: f64, cap: f64 },

    #[error("solution diverged at t = {time}: sup norm grew by a factor {growth:.3e}")]
    Divergence { time: f64, growth: f64 },

    #[error("Picard iteration is not contracting (distances {distances:?})")]
    NonContraction { distances: Vec<f64> },

    #[error("Picard iteration did not reach tol after {max_iter} iterations (last distance {last:.3e})")]
    MaxIterExceeded { max_iter: usize, last: f64 },

    #[error("interval [{t1}, {t2}] is outside the trajectory span [{start}, {end}]")]
    IntervalOutOfRange {
        t1: f64,
        t2: f64,
        start: f64,
        end: f64,
    },

    #[error("(p, q) = ({p}, {q}) is not an admissible pair in dimension {dim}")]
    NonAdmissible { p: f64, q: f64, dim: usize },

    #[error("degenerate quantity: {0}")]
    Degenerate(String),

    #[error("L4 space-time norm {norm:.4e} exceeds the smallness budget {epsilon:.4e}")]
    L4Budget { norm: f64, epsilon: f64 },

    #[error("power-law fit: {0}")]
    Fit(String),

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("config: {0}")]
    Config(String),

    #[error("schema: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag, used in the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGrid(_) => "invalid_grid",
            Error::WrongRepr { .. } => "wrong_repr",
            Error::GridMismatch => "grid_mismatch",
            Error::OutOfRange { .. } => "out_of_range",
            Error::Precondition(_) => "precondition",
            Error::StepTooLarge { .. } => "step_too_large",
            Error::Divergence { .. } => "divergence",
            Error::NonContraction { .. } => "non_contraction",
            Error::MaxIterExceeded { .. } => "max_iter_exceeded",
            Error::IntervalOutOfRange { .. } => "interval_out_of_range",
            Error::NonAdmissible { .. } => "non_admissible",
            Error::Degenerate(_) => "degenerate",
            Error::L4Budget { .. } => "l4_budget",
            Error::Fit(_) => "fit",
            Error::Checkpoint(_) => "checkpoint",
            Error::Config(_) => "config",
            Error::Schema(_) => "schema",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
