use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("module rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("the zero operator has no principal symbol")]
    ZeroSymbol,
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("input must be homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("the unit ideal has no finite codimension")]
    UnitIdeal,
}

pub type Result<T> = std::result::Result<T, Error>;
