use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Digraph, HamiltonCycle, Matching};
use crate::solvers::{hamilton_cycle_through, Budget};

use super::exact::{decompose_exact, greedy_extract};
use super::vizing::{split_matching, vizing_color};
use super::{Cover, EdgeMode};

/// Exact extraction is attempted up to this order; larger inputs go greedy.
pub const EXACT_EXTRACTION_MAX_N: usize = 9;

/// Per-matching size cap `ceil(sqrt(n))`.
pub fn default_matching_cap(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 1 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r.max(1)
}

/// Output of a covering run with the intermediate sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub cover: Cover,
    /// Cycles taken by the extraction stage.
    pub extracted: usize,
    /// Whether extraction was an exact decomposition search.
    pub exact: bool,
    /// Edges of the leftover's underlying graph.
    pub leftover_edges: usize,
    /// Colour classes of the leftover.
    pub colors: usize,
    /// Matchings after splitting, in processing order (as arcs of the host).
    pub matchings: Vec<Matching>,
}

impl CoverReport {
    pub fn size(&self) -> usize {
        self.cover.cycles.len()
    }
}

fn extract(g: &Digraph, mode: EdgeMode, budget: Budget) -> Result<(Vec<HamiltonCycle>, Digraph, bool)> {
    if g.n() <= EXACT_EXTRACTION_MAX_N {
        match decompose_exact(g, mode, budget) {
            Ok(Some(d)) => return Ok((d.cycles, Digraph::empty(g.n())?, true)),
            Ok(None) | Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let (cycles, left) = greedy_extract(g, mode, budget)?;
    Ok((cycles, left, false))
}

/// Colours the leftover's underlying graph, orients each edge via `orient`
/// and splits the classes into pieces of at most `cap` arcs.
fn leftover_matchings(
    left: &Digraph,
    cap: usize,
    orient: impl Fn(usize, usize) -> (usize, usize),
) -> Result<(usize, usize, Vec<Matching>)> {
    let f = left.underlying();
    let coloring = vizing_color(&f)?;
    let mut pieces = Vec::new();
    for class in &coloring.classes {
        let arcs = class.arcs().iter().map(|&(u, v)| orient(u, v)).collect();
        pieces.extend(split_matching(&Matching::new(arcs)?, cap)?);
    }
    Ok((f.edges().count(), coloring.classes.len(), pieces))
}

/// Finds one Hamilton cycle per matching, in parallel; results keep the
/// matching order. The first failing matching (in that order) is reported.
fn cycles_through(
    host_for: impl Fn(&Matching) -> Digraph + Sync,
    pieces: &[Matching],
    budget: Budget,
) -> Result<Vec<HamiltonCycle>> {
    let found: Vec<Result<Option<HamiltonCycle>>> =
        pieces.par_iter().map(|m| hamilton_cycle_through(&host_for(m), m, budget)).collect();
    found
        .into_iter()
        .zip(pieces)
        .map(|(r, m)| r?.ok_or_else(|| Error::CoverFailure { matching: m.arcs().to_vec() }))
        .collect()
}

/// Covers a regular tournament by Hamilton cycles: extract edge-disjoint
/// Hamilton cycles, colour what is left, and route one Hamilton cycle of
/// `g` through each (capped) colour class.
pub fn cover_tournament(g: &Digraph, cap: usize, budget: Budget) -> Result<CoverReport> {
    let n = g.n();
    let regular = g.regular_degree().is_some() && (0..n).all(|v| g.in_degree(v) == g.out_degree(v));
    if !g.is_oriented() || g.arc_count() != n * n.saturating_sub(1) / 2 || !regular || n < 3 {
        return Err(Error::ClassMismatch {
            expected: "regular tournament".into(),
            found: format!("{:?}", crate::graph::GraphClass::classify(g)),
        });
    }
    let (mut cycles, left, exact) = extract(g, EdgeMode::Arcs, budget)?;
    let extracted = cycles.len();
    // each leftover edge keeps its direction in g
    let (leftover_edges, colors, pieces) =
        leftover_matchings(&left, cap, |u, v| if left.has_arc(u, v) { (u, v) } else { (v, u) })?;
    cycles.extend(cycles_through(|_| g.clone(), &pieces, budget)?);
    Ok(CoverReport {
        cover: Cover { mode: EdgeMode::Arcs, cycles },
        extracted,
        exact,
        leftover_edges,
        colors,
        matchings: pieces,
    })
}

/// Covers the edges of a regular undirected graph (a symmetric digraph) by
/// Hamilton cycles. Each leftover matching is oriented from its smaller
/// endpoint; every other edge stays two-way, so a Hamilton cycle through the
/// oriented matching projects to a Hamilton cycle of `g` using its edges.
pub fn cover_regular_graph(g: &Digraph, cap: usize, budget: Budget) -> Result<CoverReport> {
    if !g.is_symmetric() || g.regular_degree().is_none() || g.n() < 3 {
        return Err(Error::ClassMismatch {
            expected: "regular undirected graph".into(),
            found: format!("{:?}", crate::graph::GraphClass::classify(g)),
        });
    }
    let (mut cycles, left, exact) = extract(g, EdgeMode::Edges, budget)?;
    let extracted = cycles.len();
    let (leftover_edges, colors, pieces) = leftover_matchings(&left, cap, |u, v| (u.min(v), u.max(v)))?;
    let oriented = |m: &Matching| {
        let mut d = g.clone();
        for &(u, v) in m.arcs() {
            d.remove_arc(v, u);
        }
        d
    };
    cycles.extend(cycles_through(oriented, &pieces, budget)?);
    Ok(CoverReport {
        cover: Cover { mode: EdgeMode::Edges, cycles },
        extracted,
        exact,
        leftover_edges,
        colors,
        matchings: pieces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circulant, complete_graph, random_regular_graph, random_regular_tournament};
    use crate::decomp::validate_cover;
    use crate::rng::Seed;

    #[test]
    fn caps() {
        let caps: Vec<_> = [1, 2, 4, 5, 9, 10, 15, 16, 17].iter().map(|&n| default_matching_cap(n)).collect();
        assert_eq!(caps, vec![1, 2, 2, 3, 3, 4, 4, 4, 5]);
    }

    #[test]
    fn circulant_five_is_a_decomposition() {
        let g = circulant(5, &[]).unwrap();
        let r = cover_tournament(&g, default_matching_cap(5), Budget::default()).unwrap();
        assert!(r.exact);
        assert_eq!(r.size(), 2);
        assert!(r.matchings.is_empty());
        assert!(validate_cover(&r.cover, &g).holds);
    }

    #[test]
    fn circulant_tournaments_are_covered() {
        for n in (7..=15).step_by(2) {
            let g = circulant(n, &[]).unwrap();
            let r = cover_tournament(&g, default_matching_cap(n), Budget::default()).unwrap();
            assert!(validate_cover(&r.cover, &g).holds, "n={n}");
            assert!(r.size() <= (n - 1) / 2 + r.matchings.len());
        }
    }

    #[test]
    fn random_regular_tournament_cover() {
        let g = random_regular_tournament(11, Seed(4)).unwrap();
        let r = cover_tournament(&g, default_matching_cap(11), Budget::default()).unwrap();
        assert!(validate_cover(&r.cover, &g).holds);
    }

    #[test]
    fn rejects_non_tournaments() {
        assert!(cover_tournament(&complete_graph(5).unwrap(), 2, Budget::default()).is_err());
        assert!(cover_regular_graph(&circulant(5, &[]).unwrap(), 2, Budget::default()).is_err());
    }

    #[test]
    fn regular_graphs() {
        let k5 = complete_graph(5).unwrap();
        let r = cover_regular_graph(&k5, 3, Budget::default()).unwrap();
        assert_eq!(r.size(), 2);
        assert!(validate_cover(&r.cover, &k5).holds);

        let k4 = complete_graph(4).unwrap();
        let r = cover_regular_graph(&k4, 2, Budget::default()).unwrap();
        assert!(r.size() >= 2);
        assert!(validate_cover(&r.cover, &k4).holds);

        let g = random_regular_graph(12, 8, Seed(1)).unwrap();
        let r = cover_regular_graph(&g, default_matching_cap(12), Budget::default()).unwrap();
        assert!(validate_cover(&r.cover, &g).holds);
    }
}
