use std::path::PathBuf;

use thiserror::Error;

use crate::mass::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("frame mismatch: {0}")]
    FrameMismatch(String),

    #[error("invalid mass function: {0}")]
    InvalidMass(ValidationReport),

    /// A documented precondition of a combination rule or transformation
    /// does not hold for the given input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot parse operator `{input}`: {reason}")]
    OperatorParse { input: String, reason: String },

    #[error("cannot parse rule `{input}`: {reason}")]
    RuleParse { input: String, reason: String },

    #[error("{path}: row {row}, column {column}: {reason}")]
    Dataset {
        path: PathBuf,
        row: usize,
        column: usize,
        reason: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
