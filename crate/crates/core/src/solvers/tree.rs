use crate::error::{Error, Result};
use crate::graph::{bits, reachable_from, Digraph};

use super::{Budget, Meter};

/// An orientation of a tree: no 2-cycles, `n-1` arcs, connected underlying graph.
pub fn is_oriented_tree(t: &Digraph) -> bool {
    let n = t.n();
    n >= 1 && t.is_oriented() && t.arc_count() == n - 1 && reachable_from(&t.underlying(), 0, t.all()) == t.all()
}

/// Injective arc-preserving map of `tree` into `host`; `map[i]` is the image
/// of tree vertex `i`. Tree vertices are placed in breadth-first order from
/// vertex 0, so each new vertex is constrained only by its parent.
pub fn embed_tree(host: &Digraph, tree: &Digraph, budget: Budget) -> Result<Option<Vec<usize>>> {
    if !is_oriented_tree(tree) {
        return Err(Error::BadParams("pattern is not an oriented tree".into()));
    }
    if tree.n() > host.n() {
        return Ok(None);
    }
    let und = tree.underlying();
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; tree.n()];
    let mut placed = 1u64;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for w in bits(und.out_set(v) & !placed) {
            placed |= 1 << w;
            parent[w] = v;
            order.push(w);
        }
        i += 1;
    }
    let mut map = vec![usize::MAX; tree.n()];
    let mut meter = budget.meter();
    Ok(place(host, tree, &order, &parent, 0, &mut map, 0, &mut meter)?.then_some(map))
}

#[allow(clippy::too_many_arguments)]
fn place(
    host: &Digraph,
    tree: &Digraph,
    order: &[usize],
    parent: &[usize],
    idx: usize,
    map: &mut [usize],
    used: u64,
    meter: &mut Meter,
) -> Result<bool> {
    meter.tick()?;
    if idx == order.len() {
        return Ok(true);
    }
    let v = order[idx];
    let cand = match parent[v] {
        usize::MAX => host.all(),
        p if tree.has_arc(p, v) => host.out_set(map[p]),
        p => host.in_set(map[p]),
    } & !used;
    for x in bits(cand) {
        map[v] = x;
        if place(host, tree, order, parent, idx + 1, map, used | 1 << x, meter)? {
            return Ok(true);
        }
    }
    map[v] = usize::MAX;
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circulant, transitive_tournament};

    fn assert_embedding(host: &Digraph, tree: &Digraph, map: &[usize]) {
        crate::graph::check_distinct(map, host.n()).unwrap();
        for (u, v) in tree.arcs() {
            assert!(host.has_arc(map[u], map[v]));
        }
    }

    #[test]
    fn single_arc_and_stars() {
        let arc = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        let c3 = circulant(3, &[]).unwrap();
        let m = embed_tree(&c3, &arc, Budget::default()).unwrap().unwrap();
        assert_embedding(&c3, &arc, &m);
        let in_star = Digraph::from_arcs(5, [(1, 0), (2, 0), (3, 0), (4, 0)]).unwrap();
        let tt = transitive_tournament(5).unwrap();
        let m = embed_tree(&tt, &in_star, Budget::default()).unwrap().unwrap();
        assert_eq!(m[0], 4);
        assert_embedding(&tt, &in_star, &m);
        // regular tournaments on 5 vertices have out-degree 2 only
        let out_star = in_star.reverse();
        assert!(embed_tree(&circulant(5, &[]).unwrap(), &out_star, Budget::default()).unwrap().is_none());
    }

    #[test]
    fn rejects_non_trees() {
        let c3 = circulant(3, &[]).unwrap();
        assert!(!is_oriented_tree(&c3));
        assert!(embed_tree(&c3, &c3, Budget::default()).is_err());
        let two_cycle = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert!(!is_oriented_tree(&two_cycle));
    }
}
