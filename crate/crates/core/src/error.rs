use thiserror::Error;

/// Problems found while reading an edge-list document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseIssue {
    #[error("expected header \"n m\"")]
    MalformedHeader,
    #[error("expected two vertex ids \"u v\"")]
    MalformedEdge,
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {issue}")]
    Parse { line: usize, issue: ParseIssue },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not a cactus: block with {vertices} vertices and {edges} edges")]
    NotCactus { vertices: usize, edges: usize },

    #[error("expected {expected} direction bits, got {found}")]
    DirectionLength { expected: usize, found: usize },

    #[error("{what} = {actual} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("exponent a = {0} must be a finite number >= 1")]
    ExponentTooSmall(f64),

    #[error("exact mode requires an integer exponent, got {0}")]
    NonIntegerExponent(f64),

    #[error("infeasible parameters n = {n}, r = {r}")]
    Infeasible { n: usize, r: usize },

    #[error("phi is undefined at degree pair ({0}, {1})")]
    PhiUndefined(usize, usize),

    #[error("grid of {points} points is below the minimum of {min}")]
    GridTooCoarse { points: usize, min: usize },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
