//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain a function is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature could not reach the requested absolute tolerance.
    /// `achieved` carries the error estimate at the point of giving up.
    #[error("quadrature did not converge: requested abs_tol {requested:e}, achieved {achieved:e}")]
    QuadratureNonConvergence { requested: f64, achieved: f64 },

    /// A special-function iteration (continued fraction, root finder) failed
    /// to converge.
    #[error("special function evaluation failed to converge: {0}")]
    ConvergenceFailure(String),

    /// Not enough data to run a statistical procedure at its stated validity.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A textual specification (distribution spec, CDF table) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A sample value at a known input line is unusable.
    #[error("line {line}: {message}")]
    InvalidLine { line: usize, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
