use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("substitution makes the denominator identically zero")]
    ZeroDenominator,
    #[error("pole at infinity in {0}: numerator degree exceeds denominator degree")]
    PoleAtInfinity(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("{0} is not an element of the subset")]
    NotInSubset(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
