use thiserror::Error;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("negative exponent in polynomial mode: {0}")]
    NegativeExponent(String),
    #[error("operation not supported on Laurent elements: {0}")]
    LaurentUnsupported(String),
    #[error("parameter is not central: {0}")]
    NotCentral(String),
    #[error("left connection is not admissible: {0}")]
    NotAdmissible(String),
    #[error("exponent window is empty")]
    WindowEmpty,
    #[error("declared inverse is invalid: {0}")]
    InverseInvalid(String),
    #[error("map is not a bimodule map: {0}")]
    NotBimoduleMap(String),
    #[error("matrix is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
