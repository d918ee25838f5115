use thiserror::Error;

use crate::spectral::EigenPair;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid edge {edge:?}: {message}")]
    InvalidEdge { edge: Vec<usize>, message: String },

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("uniformity {r} not supported here: {message}")]
    Uniformity { r: usize, message: String },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("zero vector has no eigen residual")]
    ZeroVector,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("operator is not entrywise nonnegative")]
    NotNonnegative,

    #[error("invalid solver configuration: {0}")]
    Config(String),

    #[error(
        "power iteration did not converge after {} iterations (bracket [{}, {}])",
        .0.iterations, .0.lower, .0.upper
    )]
    NotConverged(Box<EigenPair>),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
