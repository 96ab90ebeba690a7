//! Exact classic, total and L-Grundy domination numbers on small simple graphs,
//! the constructive families with full-length L-sequences, and machine checks
//! of the known bounds and characterizations.

pub mod bitset;
pub mod constructions;
pub mod engine;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod solver;

pub use bitset::{Vertex, VertexSet};
pub use engine::{validate_sequence, FootprintLog, SequenceState, Variant};
pub use graph::{Graph, GraphError};
pub use solver::{solve, SolveError, SolveOptions, SolveResult};
