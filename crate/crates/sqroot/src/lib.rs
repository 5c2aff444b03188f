//! File formats, reports, corpora and the parallel driver around
//! `sqroot-core`.

pub mod corpus;
pub mod decomposition;
pub mod edge_list;
pub mod report;
pub mod run;

pub use edge_list::{parse_edge_list, parse_labeled_edge_list, to_dot, write_edge_list, ParseError};
pub use report::{solve_report, SolveReport};
pub use run::{solve_parallel, TimeBudget};
