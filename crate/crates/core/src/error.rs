use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {requested} exceeds the configured maximum {max}")]
    DimensionOverflow { requested: usize, max: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not skew-Hermitian (max |G + G^dagger| = {0:e})")]
    NotSkewHermitian(f64),

    #[error("eigensolver did not converge for eigenvalue {index} after {iterations} sweeps")]
    NoConvergence { index: usize, iterations: usize },

    #[error("numerical invariant violated: {0}")]
    Invariant(String),

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("binomial support |{level}> does not fit in dimension {dim}")]
    SupportOverflow { level: usize, dim: usize },

    #[error("qunaught envelope cutoff t_max = {t_max} leaves weight {weight:e} at delta = {delta}")]
    EnvelopeCutoff { t_max: usize, delta: f64, weight: f64 },

    #[error("outcome probability underflow at level {level} (p = {probability:e})")]
    Underflow { level: usize, probability: f64 },

    #[error("outcome index {index} out of range for dimension {dim}")]
    OutcomeIndex { index: usize, dim: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Numerical failures map to exit code 3, everything else the CLI
    /// reports is a configuration problem.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::Invariant(_)
                | Error::NotSkewHermitian(_)
                | Error::NotNormalized(_)
                | Error::Underflow { .. }
        )
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_numerical() {
            3
        } else {
            2
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
