use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: Vertex, v: Vertex },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("query endpoint equals the deleted vertex {vertex}")]
    DeletedVertexQuery { vertex: Vertex },
    #[error("minor pattern has {size} vertices, the search supports at most {cap}")]
    PatternTooLarge { size: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WidthError {
    #[error("graph has {n} vertices, exact width is capped at {cap} (heuristic upper bound {upper_bound})")]
    CapExceeded {
        n: usize,
        cap: usize,
        upper_bound: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("vertex counts differ: root has {root}, graph has {graph}")]
    VertexCountMismatch { root: usize, graph: usize },
    #[error("the given graph is not a square root of the target")]
    NotASquareRoot,
    #[error("graph has {m} edges, the brute-force oracle is capped at {cap}")]
    CapExceeded { m: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("edge set does not square to the target graph")]
    NotASquareRoot,
    #[error("root is not a member of family {0}")]
    NotInFamily(alloc::string::String),
    #[error("no pendant or degree-2 twin pattern to re-attach vertex {vertex}")]
    ReconstructionFailed { vertex: Vertex },
}
