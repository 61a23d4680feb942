use thiserror::Error;

/// Errors produced by the numeric kernels and checkers.
#[derive(Debug, Error)]
pub enum Error {
    /// Input violates a precondition (non-square, non-Hermitian, parameter
    /// out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative kernel failed to converge.
    #[error("{op} did not converge after {iterations} iterations")]
    NonConvergence { op: &'static str, iterations: usize },

    /// Invalid run configuration (ensemble/checker mismatch, bad truncation
    /// parameters, unparsable spec files, ...).
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
