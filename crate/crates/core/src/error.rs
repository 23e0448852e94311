//! Error type shared across the library.

use thiserror::Error;

/// Unified error type for graph ingestion, sampling, and numerics.
#[derive(Debug, Error)]
pub enum Error {
    /// A line of an edge-list file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The operation needs a nonempty graph.
    #[error("empty graph: {0}")]
    EmptyGraph(String),

    /// A caller-supplied argument is out of range or inconsistent.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An iterative numerical routine could not produce a usable result.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A sampler could not make progress.
    #[error("sampling failed: {0}")]
    Sampling(String),

    /// A statistic is undefined for the given input (e.g. constant vector).
    #[error("undefined correlation: {0}")]
    Undefined(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
