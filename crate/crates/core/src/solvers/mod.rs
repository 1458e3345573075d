//! Exact searches and counts. Every positive answer comes with a certificate
//! that re-validates against the host graph; every search is bounded by a
//! [`Budget`] of search nodes, and running out is an error distinct from a
//! negative answer.

mod count;
mod factor;
mod hamilton;
mod matching;
mod orientation;
mod rotation;
mod tree;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use count::{count_hamilton, count_hamilton_with_cap, CountReport, DEFAULT_COUNT_CAP};
pub use factor::{disjoint_cycle_factor, one_factor};
pub(crate) use hamilton::for_each_hamilton_path;
pub use hamilton::{
    find_cycle_of_length, find_hamilton_cycle, hamilton_cycle_through, is_kth_power, is_pancyclic, k_ordered_hamilton,
    kth_power_hamilton, min_cycle_length, Pancyclicity,
};
pub use matching::bipartite_perfect_matching;
pub use orientation::{oriented_hamilton, oriented_hamilton_path, OrientationPattern, PatternCycle, Sign};
pub use rotation::rotation_extension;
pub use tree::{embed_tree, is_oriented_tree};

/// Maximum number of search nodes a single call may expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT_NODES: u64 = 100_000_000;

    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    pub(crate) fn meter(self) -> Meter {
        Meter { used: 0, limit: self.0 }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(Self::DEFAULT_NODES)
    }
}

/// Per-call node counter.
#[derive(Debug, Clone)]
pub(crate) struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}
