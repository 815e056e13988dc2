use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A vector or list does not have the length the model requires.
    #[error("dimension mismatch in `{field}`: expected {expected}, found {found}")]
    DimensionMismatch {
        field: String,
        expected: usize,
        found: usize,
    },

    /// A value violates a model invariant (non-finite, out of range, ...).
    #[error("invalid value for `{field}`: {reason}")]
    InvalidValue { field: String, reason: String },

    #[error("time {t} is outside the trajectory span [{start}, {end}]")]
    TimeOutOfRange { t: f64, start: f64, end: f64 },

    /// The requested analysis is not defined for this chain (e.g. a prismatic
    /// joint in the torque-sensor special case).
    #[error("unsupported chain: {0}")]
    UnsupportedChain(String),

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot access {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidValue {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn dims(field: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            field: field.into(),
            expected,
            found,
        }
    }
}
