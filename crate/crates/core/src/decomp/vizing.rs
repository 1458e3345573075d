use crate::error::{Error, Result};
use crate::graph::{bits, Digraph, Matching};

use super::EdgeColoring;

const NONE: u8 = u8::MAX;

/// Misra-Gries state: `color[u][v]` for each edge, `used[v]` the colours at `v`.
struct Coloring {
    n: usize,
    color: Vec<u8>,
    used: Vec<u64>,
}

impl Coloring {
    fn get(&self, u: usize, v: usize) -> u8 {
        self.color[u * self.n + v]
    }

    fn set(&mut self, u: usize, v: usize, c: u8) {
        let old = self.get(u, v);
        if old != NONE {
            self.used[u] &= !(1 << old);
            self.used[v] &= !(1 << old);
        }
        self.color[u * self.n + v] = c;
        self.color[v * self.n + u] = c;
        if c != NONE {
            self.used[u] |= 1 << c;
            self.used[v] |= 1 << c;
        }
    }

    fn is_free(&self, v: usize, c: u8) -> bool {
        self.used[v] >> c & 1 == 0
    }

    fn free(&self, v: usize) -> u8 {
        (!self.used[v]).trailing_zeros() as u8
    }

    /// Neighbour of `x` along an edge coloured `c`.
    fn along(&self, g: &Digraph, x: usize, c: u8) -> Option<usize> {
        bits(g.out_set(x)).find(|&y| self.get(x, y) == c)
    }
}

/// Proper edge colouring with at most `Delta + 1` colours (Misra-Gries fan
/// rotation), edges processed in lexicographic order.
pub fn vizing_color(f: &Digraph) -> Result<EdgeColoring> {
    if !f.is_symmetric() {
        return Err(Error::ClassMismatch { expected: "undirected".into(), found: "digraph".into() });
    }
    let n = f.n();
    let mut st = Coloring { n, color: vec![NONE; n * n], used: vec![0; n] };
    for (u, v) in f.edges() {
        color_edge(f, &mut st, u, v);
    }
    let max = f.edges().map(|(u, v)| st.get(u, v)).max();
    let classes = match max {
        None => Vec::new(),
        Some(max) => (0..=max)
            .map(|c| {
                Matching::new(f.edges().filter(|&(u, v)| st.get(u, v) == c).collect())
                    .expect("colour classes are matchings")
            })
            .filter(|m| !m.is_empty())
            .collect(),
    };
    Ok(EdgeColoring { classes })
}

fn color_edge(g: &Digraph, st: &mut Coloring, u: usize, v: usize) {
    // maximal fan at u starting with v
    let mut fan = vec![v];
    let mut in_fan = 1u64 << v;
    loop {
        let last = *fan.last().unwrap();
        let next = bits(g.out_set(u) & !in_fan).find(|&w| {
            let c = st.get(u, w);
            c != NONE && st.is_free(last, c)
        });
        match next {
            Some(w) => {
                fan.push(w);
                in_fan |= 1 << w;
            }
            None => break,
        }
    }
    let c = st.free(u);
    let d = st.free(*fan.last().unwrap());
    invert_path(g, st, u, c, d);
    // first fan vertex with d free whose prefix is still a fan
    let mut w_idx = 0;
    for i in 0..fan.len() {
        if i > 0 {
            let col = st.get(u, fan[i]);
            if col == NONE || !st.is_free(fan[i - 1], col) {
                break;
            }
        }
        if st.is_free(fan[i], d) {
            w_idx = i;
            break;
        }
    }
    for i in 0..w_idx {
        let next = st.get(u, fan[i + 1]);
        st.set(u, fan[i + 1], NONE);
        st.set(u, fan[i], next);
    }
    st.set(u, fan[w_idx], d);
}

/// Swaps colours `c` and `d` along the alternating path from `u` (on which
/// `c` is free), which starts with a `d` edge.
fn invert_path(g: &Digraph, st: &mut Coloring, u: usize, c: u8, d: u8) {
    if c == d {
        return;
    }
    let mut path = Vec::new();
    let mut x = u;
    let mut col = d;
    let mut visited = 1u64 << u;
    while let Some(y) = st.along(g, x, col) {
        path.push((x, y, col));
        if visited >> y & 1 == 1 {
            break;
        }
        visited |= 1 << y;
        x = y;
        col = if col == d { c } else { d };
    }
    for &(x, y, _) in &path {
        st.set(x, y, NONE);
    }
    for &(x, y, col) in &path {
        st.set(x, y, if col == d { c } else { d });
    }
}

/// Splits `m` into consecutive pieces of at most `cap` arcs.
pub fn split_matching(m: &Matching, cap: usize) -> Result<Vec<Matching>> {
    if cap == 0 {
        return Err(Error::BadParams("matching cap must be positive".into()));
    }
    Ok(m.arcs().chunks(cap).map(|c| Matching::new(c.to_vec()).expect("sub-matching")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;
    use rand::Rng;

    fn assert_proper(f: &Digraph, col: &EdgeColoring) {
        let delta = (0..f.n()).map(|v| f.out_degree(v)).max().unwrap_or(0);
        assert!(col.classes.len() <= delta + 1);
        let mut covered = 0;
        for m in &col.classes {
            for &(u, v) in m.arcs() {
                assert!(f.has_arc(u, v));
                covered += 1;
            }
        }
        assert_eq!(covered, f.arc_count() / 2);
    }

    #[test]
    fn small_graphs() {
        let c5 = Digraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let col = vizing_color(&c5).unwrap();
        assert_eq!(col.classes.len(), 3);
        assert_proper(&c5, &col);
        let pm = Digraph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(vizing_color(&pm).unwrap().classes.len(), 1);
        assert!(vizing_color(&Digraph::from_arcs(2, [(0, 1)]).unwrap()).is_err());
        assert!(vizing_color(&Digraph::empty(3).unwrap()).unwrap().classes.is_empty());
    }

    #[test]
    fn random_graphs_stay_within_delta_plus_one() {
        let mut rng = Seed(21).rng();
        for _ in 0..300 {
            let n = rng.gen_range(2..=40);
            let p = rng.gen_range(0.05..0.9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let f = Digraph::from_edges(n, edges).unwrap();
            assert_proper(&f, &vizing_color(&f).unwrap());
        }
    }

    #[test]
    fn splitting() {
        let m = Matching::new(vec![(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)]).unwrap();
        let sizes: Vec<_> = split_matching(&m, 2).unwrap().iter().map(Matching::len).collect();
        assert_eq!(sizes, vec![2, 2, 1]);
        assert_eq!(split_matching(&m, 9).unwrap(), vec![m.clone()]);
        assert!(split_matching(&Matching::default(), 3).unwrap().is_empty());
        assert!(split_matching(&m, 0).is_err());
    }
}
