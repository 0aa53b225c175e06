use thiserror::Error;

/// Errors raised by the laboratory's numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid of {got} points is below the anti-aliasing floor of {floor} for truncation {truncation}")]
    GridTooCoarse {
        got: usize,
        floor: usize,
        truncation: usize,
    },

    #[error("mode {mode} is outside the truncation |n| <= {truncation}")]
    ModeOutOfRange { mode: i64, truncation: usize },

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("Euler-Maruyama stability guard violated: dt * max a(n) = {0} > 1/2")]
    StabilityGuard(f64),

    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, LabError>;
