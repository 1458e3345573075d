use rand::Rng;

use super::{bits, full_mask, Digraph, HamiltonCycle, Matching};
use crate::error::{Error, Result};
use crate::rng::Seed;

/// Unordered pairs `{x, y}` (`x < y`) with a common in-neighbour.
pub fn dominated_pairs(g: &Digraph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut dom = vec![0u64; n];
    for w in 0..n {
        let out = g.out_set(w);
        for x in bits(out) {
            dom[x] |= out & !(1 << x);
        }
    }
    let mut pairs = Vec::new();
    for (x, &d) in dom.iter().enumerate() {
        for y in bits(d & !full_mask(x + 1)) {
            pairs.push((x, y));
        }
    }
    pairs
}

/// Result of contracting a matching: every arc `x -> y` of the matching
/// becomes one vertex whose in-neighbours are those of `x` and whose
/// out-neighbours are those of `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Digraph,
    /// Original vertices of each contracted vertex, as a directed path.
    pub groups: Vec<Vec<usize>>,
}

impl Contraction {
    /// Expands a Hamilton cycle of the contraction into one of the original
    /// digraph that traverses every contracted arc.
    pub fn lift(&self, h: &HamiltonCycle) -> HamiltonCycle {
        HamiltonCycle::new(h.order().iter().flat_map(|&c| self.groups[c].iter().copied()).collect())
    }
}

/// Contracts the arcs of `m`. Contracted vertices keep the position of the
/// arc's tail; loops created by contraction are dropped.
pub fn contract_matching(g: &Digraph, m: &Matching) -> Result<Contraction> {
    m.check_in(g)?;
    let n = g.n();
    let mut head_of = vec![usize::MAX; n];
    let mut is_head = 0u64;
    for &(x, y) in m.arcs() {
        head_of[x] = y;
        is_head |= 1 << y;
    }
    let mut groups = Vec::new();
    let mut group_of = vec![usize::MAX; n];
    for v in 0..n {
        if is_head >> v & 1 == 1 {
            continue;
        }
        let id = groups.len();
        group_of[v] = id;
        if head_of[v] != usize::MAX {
            group_of[head_of[v]] = id;
            groups.push(vec![v, head_of[v]]);
        } else {
            groups.push(vec![v]);
        }
    }
    let k = groups.len();
    let mut h = Digraph::empty(k)?;
    for a in 0..k {
        let end = *groups[a].last().unwrap();
        for (b, gb) in groups.iter().enumerate() {
            if a != b && g.has_arc(end, gb[0]) {
                h.insert_arc(a, b)?;
            }
        }
    }
    Ok(Contraction { graph: h, groups })
}

/// How the arcs between two blown-up parts are chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairRule {
    /// Every arc from the first part to the second.
    Complete,
    /// Each arc independently with probability `p`.
    Bernoulli { p: f64, seed: Seed },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUp {
    pub graph: Digraph,
    /// Vertices replacing each original vertex, contiguous and ascending.
    pub parts: Vec<Vec<usize>>,
}

/// Replaces vertex `v` by an independent set of `sizes[v]` vertices and each
/// arc `u -> v` by arcs from the `u`-part to the `v`-part.
pub fn blow_up(g: &Digraph, sizes: &[usize], rule: PairRule) -> Result<BlowUp> {
    if sizes.len() != g.n() {
        return Err(Error::BadParams("one size per vertex required".into()));
    }
    if sizes.contains(&0) {
        return Err(Error::BadParams("part sizes must be positive".into()));
    }
    let total: usize = sizes.iter().sum();
    let mut out = Digraph::empty(total)?;
    let mut parts = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for &s in sizes {
        parts.push((next..next + s).collect::<Vec<_>>());
        next += s;
    }
    let mut rng = match rule {
        PairRule::Bernoulli { seed, .. } => Some(seed.rng()),
        PairRule::Complete => None,
    };
    for (u, v) in g.arcs() {
        for &a in &parts[u] {
            for &b in &parts[v] {
                let keep = match (&rule, rng.as_mut()) {
                    (PairRule::Bernoulli { p, .. }, Some(r)) => r.gen_bool(*p),
                    _ => true,
                };
                if keep {
                    out.insert_arc(a, b)?;
                }
            }
        }
    }
    Ok(BlowUp { graph: out, parts })
}
