use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite coordinate {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("simplex has {got} vertices, expected {expected}")]
    VertexCount { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("boundary of a 0-chain is not defined")]
    NoBoundary,

    #[error("coordinate plane index {index} out of range (N = {count})")]
    PlaneIndex { index: usize, count: usize },

    #[error("lambda = {lambda} outside the admissible range [{lo}, {hi}]")]
    LambdaRange { lambda: f64, lo: f64, hi: f64 },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("term {term} is not representable on the given complex: {reason}")]
    NotRepresentable { term: usize, reason: String },

    #[error("malformed complex: {0}")]
    MalformedComplex(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("simplex iteration limit {0} reached")]
    IterationLimit(usize),

    #[error("witness does not match the chain: {0}")]
    Witness(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
