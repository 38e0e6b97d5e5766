use thiserror::Error;

use crate::models::ModelVariant;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    #[error("invalid model parameters: {0}")]
    InvalidModel(String),

    #[error("model {0:?} has no flip-basis matrix; use the analytic branch")]
    UnsupportedVariant(ModelVariant),

    #[error("eigensolver did not converge for eigenvalue {index} after {iterations} sweeps")]
    NoConvergence { index: usize, iterations: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{name} = {value} outside [0, 1]")]
    Domain { name: &'static str, value: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("observable never reached {threshold} before t = {horizon}; minimum seen {minimum}")]
    NoCrossing { threshold: f64, horizon: f64, minimum: f64 },

    #[error("size limit exceeded: {0}")]
    TooLarge(String),
}
