use thiserror::Error;

/// Errors raised by field, ring and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {n} out of range: {reason}")]
    InvalidDegree { n: u32, reason: String },

    #[error("defining polynomial {poly} rejected: {reason}")]
    InvalidPolynomial { poly: String, reason: String },

    #[error("degree {n} unsupported: {reason}")]
    UnsupportedDegree { n: u32, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Error {
        Error::Io(e.to_string())
    }
}
