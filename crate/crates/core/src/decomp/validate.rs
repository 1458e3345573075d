use std::collections::BTreeMap;

use crate::graph::{Digraph, HamiltonCycle};
use crate::verdict::{Verdict, Witness};

use super::{Cover, Decomposition, EdgeMode};

fn element_problem(h: &HamiltonCycle, g: &Digraph, mode: EdgeMode) -> Option<String> {
    if let Err(e) = h.check(g) {
        return Some(e.to_string());
    }
    if mode == EdgeMode::Edges && h.len() < 3 {
        return Some("an undirected Hamilton cycle needs at least 3 vertices".into());
    }
    None
}

/// Required pairs of `g` under `mode`, in lexicographic order.
fn required(g: &Digraph, mode: EdgeMode) -> Vec<(usize, usize)> {
    match mode {
        EdgeMode::Arcs => g.arcs().collect(),
        EdgeMode::Edges => g.edges().collect(),
    }
}

fn tally(cycles: &[HamiltonCycle], mode: EdgeMode) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for h in cycles {
        for (u, v) in h.arcs() {
            *m.entry(mode.key(u, v)).or_insert(0) += 1;
        }
    }
    m
}

fn check_elements(cycles: &[HamiltonCycle], g: &Digraph, mode: EdgeMode) -> Option<Witness> {
    if mode == EdgeMode::Edges && !g.is_symmetric() {
        return g.arcs().find(|&(u, v)| !g.has_arc(v, u)).map(|(u, v)| Witness::Arc {
            u,
            v,
            problem: "host is not undirected".into(),
        });
    }
    cycles
        .iter()
        .enumerate()
        .find_map(|(index, h)| element_problem(h, g, mode).map(|problem| Witness::Element { index, problem }))
}

fn first_uncovered(g: &Digraph, mode: EdgeMode, seen: &BTreeMap<(usize, usize), usize>) -> Option<Witness> {
    required(g, mode).into_iter().find(|p| !seen.contains_key(p)).map(|(u, v)| Witness::Arc {
        u,
        v,
        problem: "uncovered".into(),
    })
}

/// Checks that the cycles are Hamilton cycles of `g`, pairwise disjoint, and
/// together use every arc (edge) exactly once.
pub fn validate_decomposition(d: &Decomposition, g: &Digraph) -> Verdict {
    let rule = "decomposition";
    if let Some(w) = check_elements(&d.cycles, g, d.mode) {
        return Verdict::fails(rule, w);
    }
    let seen = tally(&d.cycles, d.mode);
    if let Some((&(u, v), &c)) = seen.iter().find(|(_, &c)| c > 1) {
        return Verdict::fails(rule, Witness::Arc { u, v, problem: format!("covered {c} times") });
    }
    if let Some(w) = first_uncovered(g, d.mode, &seen) {
        return Verdict::fails(rule, w);
    }
    let total = required(g, d.mode).len();
    let expected = if g.n() == 0 { 0 } else { total / g.n() };
    if d.cycles.len() != expected || expected * g.n() != total {
        return Verdict::fails(rule, Witness::Count { found: d.cycles.len(), expected });
    }
    Verdict::holds(rule)
}

/// Checks that every element is a Hamilton cycle of `g` and that every arc
/// (edge) is covered at least once.
pub fn validate_cover(c: &Cover, g: &Digraph) -> Verdict {
    let rule = "cover";
    if let Some(w) = check_elements(&c.cycles, g, c.mode) {
        return Verdict::fails(rule, w);
    }
    Verdict::from_check(rule, first_uncovered(g, c.mode, &tally(&c.cycles, c.mode)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circulant, complete_graph};
    use crate::decomp::{decompose_exact, walecki};
    use crate::solvers::Budget;

    #[test]
    fn walecki_validates() {
        for n in (3..=25).step_by(2) {
            let d = walecki(n).unwrap();
            assert!(validate_decomposition(&d, &complete_graph(n).unwrap()).holds, "n={n}");
        }
    }

    #[test]
    fn negatives() {
        let k7 = complete_graph(7).unwrap();
        let mut d = walecki(7).unwrap();
        let dropped = d.cycles.pop().unwrap();
        let v = validate_decomposition(&d, &k7);
        assert!(matches!(v.witness, Some(Witness::Arc { .. })));

        let c = Cover { mode: EdgeMode::Edges, cycles: d.cycles.clone() };
        // the least edge of the dropped cycle is the first uncovered one
        let (u, w) = dropped.arcs().map(|(a, b)| EdgeMode::Edges.key(a, b)).min().unwrap();
        let v = validate_cover(&c, &k7);
        assert_eq!(v.witness, Some(Witness::Arc { u, v: w, problem: "uncovered".into() }));

        let mut twice = walecki(7).unwrap();
        twice.cycles[1] = twice.cycles[0].clone();
        let v = validate_decomposition(&twice, &k7);
        assert!(matches!(v.witness, Some(Witness::Arc { ref problem, .. }) if problem == "covered 2 times"));

        let bad = Cover { mode: EdgeMode::Arcs, cycles: vec![HamiltonCycle::new(vec![0, 2, 1, 3, 4])] };
        let v = validate_cover(&bad, &circulant(5, &[]).unwrap());
        assert!(matches!(v.witness, Some(Witness::Element { index: 0, .. })));
    }

    #[test]
    fn exact_decomposition_validates() {
        let g = circulant(7, &[]).unwrap();
        let d = decompose_exact(&g, EdgeMode::Arcs, Budget::default()).unwrap().unwrap();
        assert!(validate_decomposition(&d, &g).holds);
        let cover = Cover { mode: d.mode, cycles: d.cycles };
        assert!(validate_cover(&cover, &g).holds);
    }
}
