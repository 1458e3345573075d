use serde::{Deserialize, Serialize};

use super::{bits, Digraph};
use crate::error::{Error, Result};

/// Default vertex cap for the exact independence search.
pub const DEFAULT_INDEPENDENCE_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceNumbers {
    /// Largest set spanning no arc.
    pub alpha0: usize,
    /// Largest set spanning no 2-cycle.
    pub alpha2: usize,
    pub alpha0_set: Vec<usize>,
    pub alpha2_set: Vec<usize>,
}

/// Exact `alpha_0` and `alpha_2`; errors when `n` exceeds `cap`.
pub fn independence_numbers(g: &Digraph, cap: usize) -> Result<IndependenceNumbers> {
    if g.n() > cap {
        return Err(Error::SizeCapExceeded { n: g.n(), cap });
    }
    let arc_conflicts: Vec<u64> = (0..g.n()).map(|v| g.adjacent_set(v)).collect();
    let double_conflicts: Vec<u64> = (0..g.n()).map(|v| g.double_set(v)).collect();
    let s0 = max_independent_set(&arc_conflicts, g.all());
    let s2 = max_independent_set(&double_conflicts, g.all());
    Ok(IndependenceNumbers {
        alpha0: s0.count_ones() as usize,
        alpha2: s2.count_ones() as usize,
        alpha0_set: bits(s0).collect(),
        alpha2_set: bits(s2).collect(),
    })
}

/// Maximum independent set of the symmetric conflict relation `adj`
/// restricted to `cand`. Lowest-index-first greedy seeds the bound.
pub fn max_independent_set(adj: &[u64], cand: u64) -> u64 {
    let mut best = greedy(adj, cand);
    branch(adj, 0, cand, &mut best);
    best
}

fn greedy(adj: &[u64], mut cand: u64) -> u64 {
    let mut set = 0u64;
    while cand != 0 {
        // pick a minimum-degree candidate
        let v = bits(cand).min_by_key(|&v| (adj[v] & cand).count_ones()).unwrap();
        set |= 1 << v;
        cand &= !(adj[v] | 1 << v);
    }
    set
}

fn branch(adj: &[u64], chosen: u64, mut cand: u64, best: &mut u64) {
    let mut chosen = chosen;
    // Vertices with at most one candidate neighbour can always be taken.
    loop {
        let free = bits(cand).find(|&v| (adj[v] & cand).count_ones() <= 1);
        match free {
            Some(v) => {
                chosen |= 1 << v;
                cand &= !(adj[v] | 1 << v);
            }
            None => break,
        }
    }
    if cand == 0 {
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        return;
    }
    if chosen.count_ones() + upper_bound(adj, cand) <= best.count_ones() {
        return;
    }
    let v = bits(cand).max_by_key(|&v| (adj[v] & cand).count_ones()).unwrap();
    branch(adj, chosen | 1 << v, cand & !(adj[v] | 1 << v), best);
    branch(adj, chosen, cand & !(1 << v), best);
}

// Clique cover bound: greedily partition candidates into cliques of the
// conflict graph; an independent set takes at most one vertex per clique.
fn upper_bound(adj: &[u64], mut cand: u64) -> u32 {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let mut clique_cand = adj[v] & cand;
        cand &= !(1 << v);
        while clique_cand != 0 {
            let w = clique_cand.trailing_zeros() as usize;
            cand &= !(1 << w);
            clique_cand &= adj[w];
        }
        cliques += 1;
    }
    cliques
}
