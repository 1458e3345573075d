use thiserror::Error;

use crate::graph::MAX_VERTICES;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has {n} vertices; the bit-row representation supports at most {MAX_VERTICES}")]
    TooManyVertices { n: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),
    #[error("arc {0} -> {1} is not present in the graph")]
    ArcMissing(usize, usize),
    #[error("arcs share endpoint {vertex}; not a matching")]
    NotAMatching { vertex: usize },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("instance of size {n} exceeds the exact-search cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("graph class mismatch: rule needs {expected}, input is {found}")]
    ClassMismatch { expected: String, found: String },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no Hamilton cycle of the host contains matching {matching:?}")]
    CoverFailure { matching: Vec<(usize, usize)> },
    #[error("cluster {cluster} is used {count} times as entry/exit, cap is {cap}")]
    DemandOverload { cluster: usize, count: usize, cap: usize },
    #[error("no shifted walk from cluster {from} to cluster {to}")]
    Disconnected { from: usize, to: usize },
    #[error("no disjoint connecting arc from {from} to {to}")]
    ConnectorFailure { from: String, to: String },
    #[error("bipartite graph G_A of cluster {cluster} has no perfect matching")]
    MatchingFailure { cluster: usize },
    #[error("merging cycles through cluster {cluster} failed")]
    MergeFailure { cluster: usize },
    #[error("invalid orientation pattern: {0}")]
    InvalidPattern(String),
    #[error("count overflowed 64 bits")]
    CountOverflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
