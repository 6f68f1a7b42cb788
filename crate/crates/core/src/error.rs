use thiserror::Error;

/// Errors raised by the exact algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    DomainMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial degree must be at least 1")]
    DegreeTooSmall,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("operation is undefined over a field of characteristic 2")]
    CharacteristicTwo,
    #[error("factors are not pairwise coprime")]
    NotPairwiseCoprime,
    #[error("product of factors is not the characteristic polynomial")]
    NotCharPolyFactorization,
    #[error("factor list is empty")]
    EmptyFactorList,
    #[error("bad field `{0}`: expected `Q` or a prime below 2^31")]
    BadField(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
