use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("power-law exponent must be > 1, got {0}")]
    ExponentTooSmall(f64),
    #[error("power-law support must contain at least one value")]
    EmptySupport,
    #[error("value {value} outside support [1..{max}]")]
    OutsideSupport { value: usize, max: usize },
    #[error("mutation rate must lie in (0, 1/2], got {0}")]
    InvalidRate(f64),
    #[error("rate distribution is invalid: {0}")]
    InvalidRateDistribution(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid problem parameters: {0}")]
    InvalidProblem(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parameter outside valid domain: {0}")]
    Domain(String),
    #[error("optimum unreachable from level {level}: escape probability underflowed")]
    UnreachableLevel { level: usize },
    #[error("graph has {edges} edges, brute force is limited to {limit}")]
    TooManyEdges { edges: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
