use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: expected two non-negative integers, got {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: loop edge at vertex {vertex}")]
    LoopAtLine { line: usize, vertex: usize },
    #[error("loop edge at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("branch set {part} is empty")]
    EmptyPart { part: usize },
    #[error("vertex {vertex} appears in branch sets {first} and {second}")]
    OverlappingParts {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("branch set {part} does not induce a connected subgraph")]
    DisconnectedPart { part: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("no {d}-regular graph on {n} vertices exists")]
    Infeasible { n: usize, d: usize },
    #[error("pairing model gave up after {attempts} attempts")]
    RejectionBudget { attempts: usize },
    #[error("q = {q} is not a supported prime power (supported: 2, 3, 4, 5, 7, 8, 9, 11, 13)")]
    UnsupportedFieldOrder { q: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("clique bound s must be at least 2, got {s}")]
    CliqueBoundTooSmall { s: usize },
    #[error("input is not K_{s}-free: clique {witness:?}")]
    CliqueFound { s: usize, witness: Vec<usize> },
    #[error("side sizes {left} and {right} exceed the brute-force limit of {limit}")]
    TooLarge {
        left: usize,
        right: usize,
        limit: usize,
    },
    #[error("given sides are not a bipartition: edge {0}-{1} lies inside one side")]
    NotBipartite(usize, usize),
    #[error("side vector has length {got}, graph has {n} vertices")]
    SideLength { got: usize, n: usize },
    #[error("need 1 <= s <= t, got s = {s}, t = {t}")]
    BadShape { s: usize, t: usize },
}

/// A closed-form bound was asked for outside the hypotheses under which it holds.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("bound inapplicable: {reason}")]
pub struct BoundError {
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("decomposition covers {got} vertices, graph has {n}")]
    SizeMismatch { got: usize, n: usize },
    #[error("blue vertex {vertex} chose {target}, which is not a red neighbor")]
    BadChoice { vertex: usize, target: usize },
    #[error("blue vertex {vertex} has a red neighbor but made no choice")]
    MissingChoice { vertex: usize },
    #[error("vertex {vertex} is listed as isolated but is red or has a red neighbor")]
    BadIsolated { vertex: usize },
    #[error("red vertex {vertex} has a choice recorded")]
    RedChooses { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("path requires s >= 3, got {s}")]
    CliqueBoundTooSmall { s: usize },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("{u} is not an endpoint of any path in the family")]
    UnknownEndpoint { u: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("host has {n} vertices; exact enumeration is limited to {limit}")]
    HostTooLarge { n: usize, limit: usize },
    #[error("path {path:?} is not a 3-path of the host")]
    NotAPath { path: [usize; 4] },
    #[error("trials must be at least 1")]
    NoTrials,
}
