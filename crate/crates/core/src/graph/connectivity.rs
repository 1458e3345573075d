use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{bits, Digraph};

/// Vertices reachable from `s` along paths staying inside `within`.
/// `s` itself is always included.
pub fn reachable_from(g: &Digraph, s: usize, within: u64) -> u64 {
    let mut seen = 1u64 << s;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in bits(frontier) {
            next |= g.out_set(v);
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Vertices that reach `t` along paths inside `within`.
pub fn reaching_to(g: &Digraph, t: usize, within: u64) -> u64 {
    let mut seen = 1u64 << t;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in bits(frontier) {
            next |= g.in_set(v);
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// An ordered pair `(u, v)` with no `u -> v` path, if one exists.
/// Either `u` or `v` is vertex 0.
pub fn unreachable_pair(g: &Digraph) -> Option<(usize, usize)> {
    if g.n() <= 1 {
        return None;
    }
    let all = g.all();
    let fwd = reachable_from(g, 0, all);
    if fwd != all {
        return Some((0, (!fwd & all).trailing_zeros() as usize));
    }
    let bwd = reaching_to(g, 0, all);
    if bwd != all {
        return Some(((!bwd & all).trailing_zeros() as usize, 0));
    }
    None
}

/// Single vertices count as strongly connected.
pub fn is_strongly_connected(g: &Digraph) -> bool {
    g.n() >= 1 && unreachable_pair(g).is_none()
}

/// Vertex connectivity with a separator attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub kappa: usize,
    /// Deleting these vertices leaves a digraph that is not strongly
    /// connected or has a single vertex.
    pub separator: Vec<usize>,
}

struct SplitNetwork {
    size: usize,
    cap: Vec<i32>,
}

impl SplitNetwork {
    // v_in = 2v, v_out = 2v + 1
    fn new(g: &Digraph, s: usize, t: usize) -> Self {
        let size = 2 * g.n();
        let big = g.n() as i32 + 1;
        let mut cap = vec![0i32; size * size];
        for v in 0..g.n() {
            let c = if v == s || v == t { big } else { 1 };
            cap[(2 * v) * size + 2 * v + 1] = c;
        }
        for (u, v) in g.arcs() {
            cap[(2 * u + 1) * size + 2 * v] = big;
        }
        SplitNetwork { size, cap }
    }

    fn bfs(&self, src: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.size];
        parent[src] = src;
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            let row = &self.cap[x * self.size..(x + 1) * self.size];
            for (y, &c) in row.iter().enumerate() {
                if parent[y] == usize::MAX && c > 0 {
                    parent[y] = x;
                    q.push_back(y);
                }
            }
        }
        parent
    }

    /// Unit augmentations until no path remains or `limit` is reached.
    fn max_flow(&mut self, src: usize, sink: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let parent = self.bfs(src);
            if parent[sink] == usize::MAX {
                break;
            }
            let mut y = sink;
            while y != src {
                let x = parent[y];
                self.cap[x * self.size + y] -= 1;
                self.cap[y * self.size + x] += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally vertex-disjoint `s -> t` paths, for `s != t`
/// with no arc `s -> t`.
pub fn local_vertex_connectivity(g: &Digraph, s: usize, t: usize) -> usize {
    let mut net = SplitNetwork::new(g, s, t);
    net.max_flow(2 * s + 1, 2 * t, g.n())
}

fn min_separator(g: &Digraph, s: usize, t: usize, limit: usize) -> Option<(usize, Vec<usize>)> {
    let mut net = SplitNetwork::new(g, s, t);
    let src = 2 * s + 1;
    let flow = net.max_flow(src, 2 * t, limit);
    if flow >= limit {
        return None;
    }
    let parent = net.bfs(src);
    let sep: Vec<usize> = (0..g.n())
        .filter(|&v| v != s && v != t)
        .filter(|&v| parent[2 * v] != usize::MAX && parent[2 * v + 1] == usize::MAX)
        .collect();
    debug_assert_eq!(sep.len(), flow);
    Some((flow, sep))
}

/// Exact vertex connectivity: the least `|S|` such that `G - S` is not
/// strongly connected or is a single vertex. Requires `n >= 2`.
///
/// Checks ordered non-arc pairs `(v_i, w)` and `(w, v_i)` for `i` up to the
/// best bound found so far; one of the first `kappa + 1` vertices survives
/// any minimum separator, so this is exact.
pub fn vertex_connectivity(g: &Digraph) -> Connectivity {
    let n = g.n();
    assert!(n >= 2, "vertex connectivity needs at least two vertices");
    let mut best = n - 1;
    let mut separator: Vec<usize> = (0..n - 1).collect();
    let mut i = 0;
    while i < n && i <= best {
        for w in 0..n {
            if w == i {
                continue;
            }
            for (s, t) in [(i, w), (w, i)] {
                if g.has_arc(s, t) {
                    continue;
                }
                if let Some((k, sep)) = min_separator(g, s, t, best) {
                    best = k;
                    separator = sep;
                }
            }
        }
        i += 1;
    }
    Connectivity { kappa: best, separator }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::full_mask;

    fn cycle(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))).unwrap()
    }

    fn separates(g: &Digraph, sep: &[usize]) -> bool {
        let removed = sep.iter().fold(0u64, |m, &v| m | 1 << v);
        let (h, _) = g.induced(full_mask(g.n()) & !removed);
        h.n() == 1 || !is_strongly_connected(&h)
    }

    #[test]
    fn strong_connectivity_basics() {
        assert!(is_strongly_connected(&cycle(3)));
        let tt = Digraph::from_arcs(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!is_strongly_connected(&tt));
        assert_eq!(unreachable_pair(&tt), Some((1, 0)));
        assert!(is_strongly_connected(&Digraph::empty(1).unwrap()));
        assert!(!is_strongly_connected(&Digraph::empty(2).unwrap()));
    }

    #[test]
    fn connectivity_of_cycles_and_complete() {
        let c = vertex_connectivity(&complete(4));
        assert_eq!(c.kappa, 3);
        assert!(separates(&complete(4), &c.separator));
        for n in 3..9 {
            let c = vertex_connectivity(&cycle(n));
            assert_eq!(c.kappa, 1);
            assert!(separates(&cycle(n), &c.separator));
        }
        let tt = Digraph::from_arcs(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(vertex_connectivity(&tt).kappa, 0);
    }
}
