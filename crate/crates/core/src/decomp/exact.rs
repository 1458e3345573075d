use rand::seq::SliceRandom;

use crate::error::Result;
use crate::graph::{Digraph, HamiltonCycle};
use crate::rng::Seed;
use crate::solvers::{find_hamilton_cycle, Budget, Meter};

use super::{Decomposition, EdgeMode};

/// Shuffled relabellings tried after the first greedy pass.
pub const GREEDY_RESTARTS: usize = 3;

fn remove_cycle(g: &mut Digraph, order: &[usize], mode: EdgeMode) {
    let k = order.len();
    for i in 0..k {
        let (u, v) = (order[i], order[(i + 1) % k]);
        g.remove_arc(u, v);
        if mode == EdgeMode::Edges {
            g.remove_arc(v, u);
        }
    }
}

/// Every vertex must meet each cycle once in and once out (arcs), or twice
/// (edges), so the residual must be regular with a degree each cycle reduces.
fn degree_admits(g: &Digraph, mode: EdgeMode) -> bool {
    let n = g.n();
    if n < 2 {
        return false;
    }
    match (g.regular_degree(), mode) {
        (Some(d), EdgeMode::Arcs) => d > 0 && (0..n).all(|v| g.in_degree(v) == d),
        (Some(d), EdgeMode::Edges) => d > 0 && d % 2 == 0 && g.is_symmetric(),
        (None, _) => false,
    }
}

/// Exhaustive search for a Hamilton decomposition. The lexicographically
/// lowest remaining arc (an edge `u < v` traversed `u -> v` in edge mode)
/// is covered by each Hamilton cycle through it in turn. `None` is a proof
/// that no decomposition exists.
pub fn decompose_exact(g: &Digraph, mode: EdgeMode, budget: Budget) -> Result<Option<Decomposition>> {
    if !degree_admits(g, mode) {
        return Ok(None);
    }
    let mut meter = budget.meter();
    let mut cycles = Vec::new();
    let found = decompose_dfs(g.clone(), mode, &mut cycles, &mut meter)?;
    Ok(found.then(|| Decomposition { mode, cycles: cycles.into_iter().map(HamiltonCycle::new).collect() }))
}

fn decompose_dfs(r: Digraph, mode: EdgeMode, cycles: &mut Vec<Vec<usize>>, meter: &mut Meter) -> Result<bool> {
    meter.tick()?;
    let Some((u, v)) = r.arcs().next() else { return Ok(true) };
    // Hamilton paths v ~> u close up through the arc u -> v.
    crate::solvers::for_each_hamilton_path(&r, v, u, meter, &mut |path, meter| {
        let mut order = vec![u];
        order.extend_from_slice(&path[..path.len() - 1]);
        let mut rest = r.clone();
        remove_cycle(&mut rest, &order, mode);
        cycles.push(order);
        if decompose_dfs(rest, mode, cycles, meter)? {
            return Ok(true);
        }
        cycles.pop();
        Ok(false)
    })
}

/// Greedy extraction with the default seed.
pub fn greedy_extract(g: &Digraph, mode: EdgeMode, budget: Budget) -> Result<(Vec<HamiltonCycle>, Digraph)> {
    greedy_extract_seeded(g, mode, Seed(0), budget)
}

/// Repeatedly removes a Hamilton cycle until none is left. The first pass
/// uses the given labelling; if it leaves arcs over, [`GREEDY_RESTARTS`]
/// seeded relabellings are tried and the pass with most cycles is kept.
pub fn greedy_extract_seeded(
    g: &Digraph,
    mode: EdgeMode,
    seed: Seed,
    budget: Budget,
) -> Result<(Vec<HamiltonCycle>, Digraph)> {
    let n = g.n();
    let mut best = greedy_pass(g, mode, budget)?;
    let mut rng = seed.rng();
    for _ in 0..GREEDY_RESTARTS {
        if best.1.arc_count() == 0 {
            break;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let relabelled = g.relabel(&perm)?;
        let (cycles, _) = greedy_pass(&relabelled, mode, budget)?;
        if cycles.len() > best.0.len() {
            let mut inverse = vec![0; n];
            for (old, &new) in perm.iter().enumerate() {
                inverse[new] = old;
            }
            let cycles: Vec<HamiltonCycle> =
                cycles.iter().map(|h| HamiltonCycle::new(h.order().iter().map(|&v| inverse[v]).collect())).collect();
            let mut left = g.clone();
            for h in &cycles {
                remove_cycle(&mut left, h.order(), mode);
            }
            best = (cycles, left);
        }
    }
    Ok(best)
}

fn greedy_pass(g: &Digraph, mode: EdgeMode, budget: Budget) -> Result<(Vec<HamiltonCycle>, Digraph)> {
    let mut left = g.clone();
    let mut cycles = Vec::new();
    while left.arc_count() > 0 {
        match find_hamilton_cycle(&left, budget)? {
            Some(h) => {
                if mode == EdgeMode::Edges && h.len() == 2 {
                    // a 2-cycle of a symmetric digraph is one edge walked twice
                    break;
                }
                remove_cycle(&mut left, h.order(), mode);
                cycles.push(h);
            }
            None => break,
        }
    }
    Ok((cycles, left))
}
