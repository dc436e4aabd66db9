//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Caller misuse (bad grid sizes, empty inputs, malformed requests).
    #[error("usage error: {0}")]
    Usage(String),

    /// A numerical routine failed to produce a usable result.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Adaptive integration could not continue. Carries the last good
    /// time and state vector so callers can inspect where it stopped.
    #[error("integration failure at t = {t}: {reason}")]
    Integration {
        t: f64,
        reason: String,
        last_state: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
