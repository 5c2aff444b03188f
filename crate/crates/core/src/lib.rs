//! Square roots of graphs in subgraph-closed families.
#![no_std]

extern crate alloc;

pub mod error;
pub mod families;
pub mod gen;
pub mod graph;
pub mod minor;
pub mod oracle;
pub mod reduction;
pub mod search;
pub mod width;

pub use error::{GraphError, OracleError, RootError, WidthError};
pub use families::{FamilyConfig, FamilyKind};
pub use graph::{Distance, Edge, Graph, Vertex, VertexSet};
pub use search::{solve, Answer, SolveOutcome};
