//! Error type shared by every module.

use thiserror::Error;

/// Errors produced by hypergraph construction, operators, solvers and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// An edge has fewer than two members.
    #[error("edge {edge} has {size} member(s); hyperedges need at least 2")]
    SingletonEdge { edge: usize, size: usize },

    /// An edge weight is zero, negative or not finite.
    #[error("edge {edge} has non-positive or non-finite weight {weight}")]
    NonPositiveWeight { edge: usize, weight: f64 },

    /// The hypergraph has more than one connected component.
    #[error("hypergraph is disconnected ({components} components)")]
    Disconnected { components: usize },

    /// A node id is outside `0..num_nodes`.
    #[error("node id {node} out of range for {num_nodes} nodes")]
    NodeIdOutOfRange { node: usize, num_nodes: usize },

    /// An edge index is outside `0..num_edges`.
    #[error("edge index {edge} out of range for {num_edges} edges")]
    EdgeIndexOutOfRange { edge: usize, num_edges: usize },

    /// The same node appears twice in one edge.
    #[error("edge {edge} lists node {node} more than once")]
    DuplicateNode { edge: usize, node: usize },

    /// No nodes or no edges.
    #[error("hypergraph has no nodes or no edges")]
    EmptyGraph,

    /// Two vectors that must have equal length do not.
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// An edge field was built for a different hypergraph layout.
    #[error("edge field has {actual} entries, hypergraph has {expected} incidences")]
    FieldMismatch { expected: usize, actual: usize },

    /// The exponent `p` is outside the supported range.
    #[error("invalid exponent p = {p}: {reason}")]
    InvalidP { p: f64, reason: &'static str },

    /// Labels are not in {-1, 0, +1} or a class is missing.
    #[error("invalid labels: {0}")]
    InvalidLabels(String),

    /// The regularization weight is not a positive finite number.
    #[error("invalid regularization weight mu = {0}")]
    InvalidMu(f64),

    /// The Jacobi denominator `p l_p(v,v) + 2 mu` is not positive.
    #[error("non-positive Jacobi denominator {value} at node {node}")]
    ZeroDiagonal { node: usize, value: f64 },

    /// The linear solver failed to reach its tolerance.
    #[error("linear solver stalled after {iterations} iterations (residual {residual:e})")]
    SolverStall { iterations: usize, residual: f64 },

    /// Not enough labeled nodes per class for cross validation.
    #[error("class {class} has {count} labeled node(s), need at least {needed}")]
    TooFewLabels {
        class: i8,
        count: usize,
        needed: usize,
    },

    /// The eigensolver did not converge.
    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    /// A cut has an empty side.
    #[error("partition has an empty side")]
    DegeneratePartition,

    /// A cluster id in `0..k` has no members.
    #[error("cluster {0} is empty")]
    EmptyCluster(usize),

    /// Exhaustive enumeration refused because the input is too large.
    #[error("{what} = {size} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// The number of clusters or eigenpairs is out of range.
    #[error("invalid k = {k} for {n} nodes")]
    InvalidK { k: usize, n: usize },

    /// Two assignments being compared have different lengths.
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    /// The function is identically zero where a nonzero one is required.
    #[error("function is identically zero")]
    ZeroFunction,

    /// The function is a multiple of `D^{1/2} 1`, so the centered quotient is undefined.
    #[error("function has zero p-variance (multiple of D^(1/2) 1)")]
    DegenerateDirection,

    /// A comparison adjacency matrix is not a valid symmetric weight matrix.
    #[error("adjacency matrix is invalid: {0}")]
    AsymmetricInput(String),

    /// Malformed input file.
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },

    /// The input file has no data rows.
    #[error("dataset has no rows")]
    EmptyDataset,

    /// A serialized hypergraph has an unexpected format tag or shape.
    #[error("schema mismatch: {0}")]
    SchemaVersionMismatch(String),

    /// Invalid configuration values.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// CSV reading or writing failure.
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by an iterative method failing to converge.
    pub fn is_non_convergence(&self) -> bool {
        matches!(self, Error::SolverStall { .. } | Error::NoConvergence(_))
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
