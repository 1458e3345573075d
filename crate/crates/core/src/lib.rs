//! Exact and certificate-producing algorithms for Hamilton cycles in
//! digraphs, oriented graphs and tournaments.
//!
//! - [`graph`]: bit-row digraphs, degree and connectivity primitives,
//!   matching contraction and blow-ups.
//! - [`conditions`]: checkers for classical sufficient conditions, each
//!   returning a [`Verdict`] with a witness on failure.
//! - [`constructions`]: extremal examples and tournament generators.
//! - [`solvers`]: exact searches and counts (Hamilton cycles, pancyclicity,
//!   powers, orientations, cycle factors, tree embeddings).
//! - [`decomp`]: Hamilton decompositions and covers.
//! - [`expander`]: robust outexpansion and the cluster-level assembly of a
//!   Hamilton cycle from shifted walks.

pub mod conditions;
pub mod constructions;
pub mod decomp;
pub mod error;
pub mod expander;
pub mod graph;
pub mod io;
pub mod rng;
pub mod solvers;
pub mod verdict;

pub use error::{Error, Result};
pub use graph::{CycleFactor, DegreeSequencePair, Digraph, GraphClass, HamiltonCycle, Matching, Semidegrees};
pub use rng::Seed;
pub use solvers::Budget;
pub use verdict::{Verdict, Witness};
