use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("sublattice is not contained in the superlattice")]
    NotContained,

    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("invalid level {0}")]
    InvalidLevel(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
