//! Hamilton decompositions and covers: Walecki's construction, exact
//! decomposition search, greedy extraction, Misra-Gries edge colouring and
//! the matching-based covering pipelines for regular tournaments and
//! regular graphs.

mod cover;
mod exact;
mod validate;
mod vizing;
mod walecki;

use serde::{Deserialize, Serialize};

use crate::graph::{HamiltonCycle, Matching};

pub use cover::{cover_regular_graph, cover_tournament, default_matching_cap, CoverReport};
pub use exact::{decompose_exact, greedy_extract, greedy_extract_seeded, GREEDY_RESTARTS};
pub use validate::{validate_cover, validate_decomposition};
pub use vizing::{split_matching, vizing_color};
pub use walecki::walecki;

/// Whether cycles are read as arcs of a digraph or as undirected edges of
/// a symmetric digraph (where a cycle and its reverse cover the same edges).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeMode {
    Arcs,
    Edges,
}

impl EdgeMode {
    /// Canonical key of the pair `(u, v)` under this mode.
    pub fn key(self, u: usize, v: usize) -> (usize, usize) {
        match self {
            EdgeMode::Arcs => (u, v),
            EdgeMode::Edges => (u.min(v), u.max(v)),
        }
    }
}

/// Pairwise disjoint Hamilton cycles whose union is every arc (or edge).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub mode: EdgeMode,
    pub cycles: Vec<HamiltonCycle>,
}

/// Hamilton cycles whose union is every arc (or edge); reuse allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub mode: EdgeMode,
    pub cycles: Vec<HamiltonCycle>,
}

impl Cover {
    /// How often each arc (or edge) is covered, in lexicographic order.
    pub fn multiplicity(&self) -> std::collections::BTreeMap<(usize, usize), usize> {
        let mut m = std::collections::BTreeMap::new();
        for h in &self.cycles {
            for (u, v) in h.arcs() {
                *m.entry(self.mode.key(u, v)).or_insert(0) += 1;
            }
        }
        m
    }
}

/// Proper edge colouring of an undirected graph: each class is a matching
/// whose pairs are stored with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub classes: Vec<Matching>,
}
