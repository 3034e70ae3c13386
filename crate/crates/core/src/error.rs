use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at {0}")]
    Pole(String),
    #[error("singular system: rank {rank} of {size}")]
    Singular { rank: usize, size: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("sequence window too short: need index {needed}, have {len}")]
    WindowTooShort { needed: i64, len: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("basis is not quasi-triangular: {0}")]
    NotQuasiTriangular(String),
    #[error("no compatibility: {0}")]
    NoCompatibility(String),
    #[error("operator has order {0}, expected {1}")]
    WrongOrder(i64, i64),
    #[error("degenerate result: {0}")]
    Degenerate(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
