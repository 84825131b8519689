//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the library and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller handed in a value outside an operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A stated precondition was violated (e.g. a coefficient on the closed
    /// boundary |t| = 2 where a strict inequality is required).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A resonant element was evaluated inside the guard zone of its pole.
    #[error("coefficient pole at lambda = {pole}: lambda = {lambda} is inside the guard zone")]
    PoleProximity { pole: f64, lambda: f64 },

    /// A band quantity was requested at a point of the wrong classification.
    #[error("lambda = {lambda} is out of band for this query (dispersion value {rhs})")]
    OutOfBand { lambda: f64, rhs: f64 },

    /// A system description failed to parse or validate.
    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
