//! Error type shared by the whole crate.

use std::path::PathBuf;

use thiserror::Error;

/// The errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The inputs are formally valid but carry no usable information
    /// (e.g. an all-zero masked image handed to the rotation estimator).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// File system failure, with the offending path.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// Image decode/encode failure, with the offending path.
    #[error("image error on {path}: {message}")]
    Image { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::DegenerateInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
