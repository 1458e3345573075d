use crate::error::{Error, Result};
use crate::graph::{bits, CycleFactor, Digraph};

use super::hamilton::min_cycle_length;
use super::matching::bipartite_perfect_matching;
use super::{Budget, Meter};

/// A 1-factor from a perfect matching between out-copies and in-copies of
/// the vertices; `None` when no perfect matching exists.
pub fn one_factor(g: &Digraph) -> Option<CycleFactor> {
    if g.n() == 0 {
        return None;
    }
    let rows: Vec<u64> = (0..g.n()).map(|v| g.out_set(v)).collect();
    bipartite_perfect_matching(&rows, g.n()).map(|succ| CycleFactor::from_successors(&succ))
}

/// Vertex-disjoint cycles with exactly the given lengths (as a multiset).
/// The lowest uncovered vertex always starts the next cycle, and each
/// distinct remaining length is tried for it.
pub fn disjoint_cycle_factor(g: &Digraph, lengths: &[usize], budget: Budget) -> Result<Option<CycleFactor>> {
    let n = g.n();
    if lengths.iter().sum::<usize>() != n {
        return Err(Error::BadParams(format!("cycle lengths {lengths:?} do not sum to {n}")));
    }
    let lmin = min_cycle_length(g);
    if let Some(&l) = lengths.iter().find(|&&l| l < lmin) {
        return Err(Error::BadParams(format!("cycle length {l} below the class minimum {lmin}")));
    }
    let mut remaining = lengths.to_vec();
    remaining.sort_unstable();
    let mut meter = budget.meter();
    let mut cycles = Vec::new();
    Ok(factor_dfs(g, g.all(), &mut remaining, &mut cycles, &mut meter)?.then(|| CycleFactor::new(cycles)))
}

fn factor_dfs(
    g: &Digraph,
    free: u64,
    remaining: &mut Vec<usize>,
    cycles: &mut Vec<Vec<usize>>,
    meter: &mut Meter,
) -> Result<bool> {
    meter.tick()?;
    if free == 0 {
        return Ok(remaining.is_empty());
    }
    let s = free.trailing_zeros() as usize;
    let mut tried = Vec::new();
    for idx in 0..remaining.len() {
        let len = remaining[idx];
        if tried.contains(&len) {
            continue;
        }
        tried.push(len);
        remaining.remove(idx);
        let mut path = vec![s];
        let found = cycles_through(g, s, free & !(1 << s), len, &mut path, meter, &mut |path, meter| {
            let used = crate::graph::mask_of(path.iter().copied());
            cycles.push(path.to_vec());
            if factor_dfs(g, free & !used, remaining, cycles, meter)? {
                return Ok(true);
            }
            cycles.pop();
            Ok(false)
        })?;
        remaining.insert(idx, len);
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

type Visit<'a> = dyn FnMut(&[usize], &mut Meter) -> Result<bool> + 'a;

/// Enumerates cycles of length `len` starting at `path[0]` through `avail`,
/// calling `visit` on each until it returns `true`.
fn cycles_through(
    g: &Digraph,
    s: usize,
    avail: u64,
    len: usize,
    path: &mut Vec<usize>,
    meter: &mut Meter,
    visit: &mut Visit<'_>,
) -> Result<bool> {
    meter.tick()?;
    let u = *path.last().unwrap();
    if path.len() == len {
        return if g.has_arc(u, s) { visit(path, meter) } else { Ok(false) };
    }
    for v in bits(g.out_set(u) & avail) {
        path.push(v);
        if cycles_through(g, s, avail & !(1 << v), len, path, meter, visit)? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circulant, complete_digraph, directed_cycle, fig3_haggkvist};

    #[test]
    fn one_factors() {
        let c3 = directed_cycle(3).unwrap();
        assert_eq!(one_factor(&c3).unwrap().cycles(), &[vec![0, 1, 2]]);
        let k4 = complete_digraph(4).unwrap();
        let f = one_factor(&k4).unwrap();
        f.check(&k4).unwrap();
        assert!(one_factor(&fig3_haggkvist(1).unwrap().graph).is_none());
    }

    #[test]
    fn prescribed_lengths() {
        let c9 = circulant(9, &[]).unwrap();
        let f = disjoint_cycle_factor(&c9, &[3, 3, 3], Budget::default()).unwrap().unwrap();
        f.check(&c9).unwrap();
        assert_eq!(f.lengths(), vec![3, 3, 3]);
        let f = disjoint_cycle_factor(&c9, &[4, 5], Budget::default()).unwrap().unwrap();
        let mut l = f.lengths();
        l.sort();
        assert_eq!(l, vec![4, 5]);
        let c6 = directed_cycle(6).unwrap();
        assert!(disjoint_cycle_factor(&c6, &[3, 3], Budget::default()).unwrap().is_none());
        assert!(disjoint_cycle_factor(&c6, &[6], Budget::default()).unwrap().is_some());
        assert!(disjoint_cycle_factor(&c6, &[3, 2], Budget::default()).is_err());
        assert!(disjoint_cycle_factor(&c9, &[2, 7], Budget::default()).is_err());
    }
}
