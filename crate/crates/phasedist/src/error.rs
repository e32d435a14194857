//! Error type shared across the crate.

use std::fmt;

/// Errors produced by the evaluators and checks.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation
    /// (non-positive mass, `g` below the bound that keeps `g0` real, ...).
    Domain(String),
    /// An iterative computation (series, quadrature, window expansion)
    /// stopped before reaching the requested accuracy. Carries the
    /// residual that was actually achieved.
    Accuracy {
        context: String,
        achieved: f64,
        requested: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Accuracy {
                context,
                achieved,
                requested,
            } => write!(
                f,
                "accuracy error in {context}: achieved {achieved:e}, requested {requested:e}"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn accuracy(context: impl Into<String>, achieved: f64, requested: f64) -> Self {
        Error::Accuracy {
            context: context.into(),
            achieved,
            requested,
        }
    }
}
