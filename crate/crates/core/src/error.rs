//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong when constructing kernels or computing norms.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("values not symmetric: |V[{i}][{j}] - V[{j}][{i}]| = {delta:e} exceeds {tol:e}")]
    NotSymmetric {
        i: usize,
        j: usize,
        delta: f64,
        tol: f64,
    },

    #[error("weight {index} is {value}; all block weights must be positive")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("weights sum to {sum:.17}, expected 1 within {tol:e}")]
    WeightSum { sum: f64, tol: f64 },

    #[error("kernel has no blocks")]
    Empty,

    #[error("value {value} at block ({i},{j}) lies outside [0,1]; not a graphon")]
    NotAGraphon { i: usize, j: usize, value: f64 },

    #[error("value {value} at block ({i},{j}) exceeds the declared bound {bound}")]
    BoundExceeded { i: usize, j: usize, value: f64, bound: f64 },

    #[error("argument {0} outside the domain [0,1]")]
    OutOfDomain(f64),

    #[error("block count {n} exceeds the exact enumeration limit {limit}; use the heuristic")]
    ExactLimitExceeded { n: usize, limit: usize },

    #[error(
        "eigensolver did not converge within {iterations} iterations (relative residual {residual:e}, tolerance {tol:e})"
    )]
    NonConvergence {
        iterations: usize,
        residual: f64,
        tol: f64,
    },

    #[error(
        "enumeration budget exceeded: motif has {vertices} vertices and the graphon {blocks} blocks (limits: {max_vertices} vertices, {max_blocks} blocks)"
    )]
    BudgetExceeded {
        vertices: usize,
        blocks: usize,
        max_vertices: usize,
        max_blocks: usize,
    },

    #[error("unknown graphon family '{0}'")]
    UnknownFamily(String),

    #[error("invalid parameters for family '{family}': {reason}")]
    InvalidParams { family: String, reason: String },

    #[error("invalid motif: {0}")]
    InvalidMotif(String),

    #[error("homomorphism density requires a graphon: {0}")]
    GraphonRequired(String),

    #[error("invalid value range [{lo}, {hi}]: {reason}")]
    InvalidRange { lo: f64, hi: f64, reason: String },

    #[error("invalid adjacency graph: {0}")]
    InvalidGraph(String),

    #[error("cycle length must be at least 3, got {0}")]
    CycleTooShort(usize),

    #[error("{0}")]
    Usage(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
