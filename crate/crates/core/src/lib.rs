//! Exact parameterized algorithms for Minimum Fill-in and related chordal
//! completion problems.

pub mod branch;
pub mod chordal;
pub mod dp;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod pmc;
pub mod reductions;
pub mod solver;
