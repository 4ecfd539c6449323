//! Exact pebbling numbers, closed formulas for powers of paths, tree and
//! chordal-graph tooling, and conjecture checkers.

pub mod chordal;
pub mod corpus;
pub mod error;
pub mod exponent;
pub mod graph;
pub mod lab;
pub mod parse;
pub mod path_power;
pub mod pebbles;
pub mod search;
pub mod solver;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Graph, Metric, VertexKind};
pub use pebbles::{Configuration, Distribution};
pub use search::{
    cheap_number, graph_pebbling_number, pebbling_number, t_fold_pebbling_number, PebblingNumberResult, ScanOptions,
    Strategy,
};
pub use solver::{is_solvable, min_moves, Engine, Move, SolveCertificate, Solver, SolverOptions, UnsolvableReason};
