use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: u64, got: u64 },
    #[error("{0} is not contained in {1}")]
    NotNested(String, String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("label is not quasi-trivial: {0}")]
    NotQuasiTrivial(String),
    #[error("out of oracle scope: {0}")]
    OracleScope(String),
    #[error("refusing to enumerate a set over n = {0} (cap is {1})")]
    TooLarge(u64, u64),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
