//! Generators for the extremal examples, tournaments and classic graphs
//! used as the test corpus. Every generator is deterministic given its
//! parameters (and seed, for the random kinds) and reports a part map.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Digraph, GraphClass, MAX_VERTICES};
use crate::rng::Seed;

/// Named vertex classes of a generated graph.
pub type Parts = Vec<(String, Vec<usize>)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub graph: Digraph,
    pub parts: Parts,
    /// Class the generator promises.
    pub class: GraphClass,
}

impl Generated {
    pub fn part(&self, name: &str) -> Option<&[usize]> {
        self.parts.iter().find(|(p, _)| p == name).map(|(_, v)| v.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ExtremalFamily {
    /// `(3s-1)`-regular 2-connected non-Hamiltonian graph on `9s+2` vertices.
    Fig1 { s: usize },
    /// Complete digraph on `n-3` vertices plus `x, y, z`.
    Fig2 { n: usize },
    /// Oriented graph on `4m+3` vertices (m odd) without a 1-factor.
    Fig3Haggkvist { m: usize },
    /// Oriented graph on `6m` vertices (m even) without a squared Hamilton cycle.
    Fig4Square { m: usize },
    /// Strongly connected non-Hamiltonian digraph with a near-extremal
    /// degree sequence.
    NwExtremal { n: usize, k: usize },
    /// Complete bipartite digraph with class sizes as equal as possible.
    PancyclicBipartite { n: usize },
    /// Two disjoint regular tournaments on `2d+1` vertices each.
    TwoRegularTournaments { d: usize },
    /// Blow-up of the directed `k`-cycle with the given part sizes.
    CycleBlowup { k: usize, sizes: Vec<usize> },
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices { n })
    } else {
        Ok(())
    }
}

/// Allocates consecutive vertex ranges for named parts.
struct Layout {
    next: usize,
    parts: Parts,
}

impl Layout {
    fn new() -> Self {
        Layout { next: 0, parts: Vec::new() }
    }

    fn add(&mut self, name: &str, size: usize) -> Vec<usize> {
        let vs: Vec<usize> = (self.next..self.next + size).collect();
        self.next += size;
        self.parts.push((name.to_string(), vs.clone()));
        vs
    }
}

fn all_arcs(g: &mut Digraph, from: &[usize], to: &[usize]) -> Result<()> {
    for &a in from {
        for &b in to {
            g.insert_arc(a, b)?;
        }
    }
    Ok(())
}

fn clique(g: &mut Digraph, vs: &[usize]) -> Result<()> {
    for &a in vs {
        for &b in vs {
            if a != b {
                g.insert_arc(a, b)?;
            }
        }
    }
    Ok(())
}

/// Regular tournament on an odd-sized vertex list: `v_i -> v_{i+s}` for
/// `1 <= s <= (t-1)/2`.
fn circulant_on(g: &mut Digraph, vs: &[usize]) -> Result<()> {
    let t = vs.len();
    debug_assert!(t % 2 == 1);
    for i in 0..t {
        for s in 1..=t / 2 {
            g.insert_arc(vs[i], vs[(i + s) % t])?;
        }
    }
    Ok(())
}

/// Orients the complete bipartite graph between `xs` and `ys`: `x_i -> y_j`
/// iff `i + j` is even. Every vertex has in- and out-degree within one.
fn balanced_bipartite(g: &mut Digraph, xs: &[usize], ys: &[usize]) -> Result<()> {
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            if (i + j) % 2 == 0 {
                g.insert_arc(x, y)?;
            } else {
                g.insert_arc(y, x)?;
            }
        }
    }
    Ok(())
}

pub fn generate_extremal(family: &ExtremalFamily) -> Result<Generated> {
    match *family {
        ExtremalFamily::Fig1 { s } => fig1(s),
        ExtremalFamily::Fig2 { n } => fig2(n),
        ExtremalFamily::Fig3Haggkvist { m } => fig3_haggkvist(m),
        ExtremalFamily::Fig4Square { m } => fig4_square(m),
        ExtremalFamily::NwExtremal { n, k } => nw_extremal(n, k),
        ExtremalFamily::PancyclicBipartite { n } => {
            if n < 2 {
                return Err(bad("bipartite example needs n >= 2"));
            }
            let g = complete_bipartite_digraph(n / 2, n - n / 2)?;
            Ok(Generated {
                parts: vec![("X".into(), (0..n / 2).collect()), ("Y".into(), (n / 2..n).collect())],
                graph: g,
                class: GraphClass::Undirected,
            })
        }
        ExtremalFamily::TwoRegularTournaments { d } => two_regular_tournaments(d),
        ExtremalFamily::CycleBlowup { k, ref sizes } => cycle_blowup(k, sizes),
    }
}

/// Three cliques on `3s` vertices; in clique `i` the first `|A_i|` vertices
/// form `A_i` and the next `|A_i|` form `B_i`, with `|A_1| = |A_2| = s` and
/// `|A_3| = s-1`. The matching `A_i[j] B_i[j]` is removed; `a` joins every
/// `A_i` and `b` every `B_i`.
pub fn fig1(s: usize) -> Result<Generated> {
    if s < 2 {
        return Err(bad("fig1 needs s >= 2"));
    }
    let n = 9 * s + 2;
    check_n(n)?;
    let mut lay = Layout::new();
    let mut g = Digraph::empty(n)?;
    let mut a_all = Vec::new();
    let mut b_all = Vec::new();
    let mut cliques = Vec::new();
    for i in 0..3 {
        cliques.push(lay.add(&format!("Q{}", i + 1), 3 * s));
    }
    let a = lay.add("a", 1)[0];
    let b = lay.add("b", 1)[0];
    for (i, q) in cliques.iter().enumerate() {
        clique(&mut g, q)?;
        let size = if i == 2 { s - 1 } else { s };
        let ai = &q[..size];
        let bi = &q[size..2 * size];
        for j in 0..size {
            g.remove_arc(ai[j], bi[j]);
            g.remove_arc(bi[j], ai[j]);
        }
        lay.parts.push((format!("A{}", i + 1), ai.to_vec()));
        lay.parts.push((format!("B{}", i + 1), bi.to_vec()));
        a_all.extend_from_slice(ai);
        b_all.extend_from_slice(bi);
    }
    for &v in &a_all {
        g.insert_arc(a, v)?;
        g.insert_arc(v, a)?;
    }
    for &v in &b_all {
        g.insert_arc(b, v)?;
        g.insert_arc(v, b)?;
    }
    Ok(Generated { graph: g, parts: lay.parts, class: GraphClass::Undirected })
}

/// `K` on vertices `0..n-3`, then `x = n-3`, `y = n-2`, `z = n-1`.
pub fn fig2(n: usize) -> Result<Generated> {
    if n < 4 {
        return Err(bad("fig2 needs n >= 4"));
    }
    check_n(n)?;
    let mut lay = Layout::new();
    let k = lay.add("K", n - 3);
    let (x, y, z) = (lay.add("x", 1)[0], lay.add("y", 1)[0], lay.add("z", 1)[0]);
    let mut g = Digraph::empty(n)?;
    clique(&mut g, &k)?;
    clique(&mut g, &[x, y, z])?;
    g.remove_arc(x, z);
    all_arcs(&mut g, &[x], &k)?;
    all_arcs(&mut g, &k, &[x])?;
    all_arcs(&mut g, &[y], &k)?;
    Ok(Generated { graph: g, parts: lay.parts, class: GraphClass::Digraph })
}

/// Parts `A, B, C, D` of sizes `m, m+1, m, m+2`.
pub fn fig3_haggkvist(m: usize) -> Result<Generated> {
    if m == 0 || m % 2 == 0 {
        return Err(bad("fig3 needs odd m >= 1"));
    }
    let n = 4 * m + 3;
    check_n(n)?;
    let mut lay = Layout::new();
    let a = lay.add("A", m);
    let b = lay.add("B", m + 1);
    let c = lay.add("C", m);
    let d = lay.add("D", m + 2);
    let mut g = Digraph::empty(n)?;
    circulant_on(&mut g, &a)?;
    circulant_on(&mut g, &c)?;
    balanced_bipartite(&mut g, &b, &d)?;
    all_arcs(&mut g, &a, &b)?;
    all_arcs(&mut g, &b, &c)?;
    all_arcs(&mut g, &c, &d)?;
    all_arcs(&mut g, &d, &a)?;
    Ok(Generated { graph: g, parts: lay.parts, class: GraphClass::Oriented })
}

/// Parts `A, B, C, D, E` of sizes `m, m-1, 2m+1, m-1, m+1`.
///
/// Single arcs: `A->C, B->C, C->D, C->E, E->A, E->D, D->A, D->B`; balanced
/// orientations between `A, B` and between `B, E`; regular tournaments in
/// `B, C, D`.
pub fn fig4_square(m: usize) -> Result<Generated> {
    if m < 2 || m % 2 == 1 {
        return Err(bad("fig4 needs even m >= 2"));
    }
    let n = 6 * m;
    check_n(n)?;
    let mut lay = Layout::new();
    let a = lay.add("A", m);
    let b = lay.add("B", m - 1);
    let c = lay.add("C", 2 * m + 1);
    let d = lay.add("D", m - 1);
    let e = lay.add("E", m + 1);
    let mut g = Digraph::empty(n)?;
    for part in [&b, &c, &d] {
        circulant_on(&mut g, part)?;
    }
    for (from, to) in [(&a, &c), (&b, &c), (&c, &d), (&c, &e), (&e, &a), (&e, &d), (&d, &a), (&d, &b)] {
        all_arcs(&mut g, from, to)?;
    }
    balanced_bipartite(&mut g, &a, &b)?;
    balanced_bipartite(&mut g, &b, &e)?;
    Ok(Generated { graph: g, parts: lay.parts, class: GraphClass::Oriented })
}

/// `K` complete on `n-k` vertices with `X` its first `k` vertices, and an
/// independent set `I` of size `k` joined both ways to `X`.
pub fn nw_extremal(n: usize, k: usize) -> Result<Generated> {
    if n < 3 || k == 0 || 2 * k >= n {
        return Err(bad("nw_extremal needs n >= 3 and 1 <= k < n/2"));
    }
    check_n(n)?;
    let mut lay = Layout::new();
    let kk = lay.add("K", n - k);
    let i = lay.add("I", k);
    let x = kk[..k].to_vec();
    lay.parts.push(("X".into(), x.clone()));
    let mut g = Digraph::empty(n)?;
    clique(&mut g, &kk)?;
    all_arcs(&mut g, &i, &x)?;
    all_arcs(&mut g, &x, &i)?;
    Ok(Generated { graph: g, parts: lay.parts, class: GraphClass::Digraph })
}

pub fn two_regular_tournaments(d: usize) -> Result<Generated> {
    if d == 0 {
        return Err(bad("degree must be positive"));
    }
    let t = 2 * d + 1;
    check_n(2 * t)?;
    let mut lay = Layout::new();
    let p = lay.add("T1", t);
    let q = lay.add("T2", t);
    let mut g = Digraph::empty(2 * t)?;
    circulant_on(&mut g, &p)?;
    circulant_on(&mut g, &q)?;
    Ok(Generated { graph: g, parts: lay.parts, class: GraphClass::Oriented })
}

pub fn cycle_blowup(k: usize, sizes: &[usize]) -> Result<Generated> {
    if k < 2 || sizes.len() != k {
        return Err(bad("cycle blow-up needs k >= 2 and k part sizes"));
    }
    check_n(sizes.iter().sum())?;
    let b = crate::graph::blow_up(&directed_cycle(k)?, sizes, crate::graph::PairRule::Complete)?;
    let parts = b.parts.into_iter().enumerate().map(|(i, p)| (format!("V{i}"), p)).collect();
    let class = if k == 2 { GraphClass::Digraph } else { GraphClass::Oriented };
    Ok(Generated { graph: b.graph, parts, class })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TournamentKind {
    /// `i -> i+s (mod n)` for each shift `s`; empty means `1..=(n-1)/2`.
    Circulant {
        shifts: Vec<usize>,
    },
    Random {
        seed: Seed,
    },
    RandomRegular {
        seed: Seed,
    },
    Transitive,
}

pub fn gen_tournament(n: usize, kind: &TournamentKind) -> Result<Digraph> {
    check_n(n)?;
    match kind {
        TournamentKind::Circulant { shifts } => circulant(n, shifts),
        TournamentKind::Random { seed } => Ok(random_tournament(n, *seed)),
        TournamentKind::RandomRegular { seed } => random_regular_tournament(n, *seed),
        TournamentKind::Transitive => transitive_tournament(n),
    }
}

/// Circulant tournament; `shifts` must contain exactly one of `s, n-s` for
/// every `1 <= s < n`.
pub fn circulant(n: usize, shifts: &[usize]) -> Result<Digraph> {
    check_n(n)?;
    if n % 2 == 0 {
        return Err(bad(format!("circulant tournaments need odd n, got {n}")));
    }
    let default: Vec<usize> = (1..=n / 2).collect();
    let shifts = if shifts.is_empty() { &default[..] } else { shifts };
    let mut seen = vec![false; n];
    for &s in shifts {
        if s == 0 || s >= n || seen[s] || seen[n - s] {
            return Err(bad(format!("shift set {shifts:?} does not define a tournament")));
        }
        seen[s] = true;
    }
    if shifts.len() != n / 2 {
        return Err(bad(format!("need {} shifts, got {}", n / 2, shifts.len())));
    }
    Digraph::from_arcs(n, (0..n).flat_map(|i| shifts.iter().map(move |&s| (i, (i + s) % n))))
}

/// Each pair oriented by a fair coin, pairs in lexicographic order.
pub fn random_tournament(n: usize, seed: Seed) -> Digraph {
    let mut rng = seed.rng();
    let mut g = Digraph::empty(n).expect("checked size");
    for i in 0..n {
        for j in i + 1..n {
            let (u, v) = if rng.gen::<bool>() { (i, j) } else { (j, i) };
            g.insert_arc(u, v).expect("fresh pair");
        }
    }
    g
}

/// Circulant start followed by `50 n^2` seeded attempts to reverse a
/// cyclic triangle; reversals keep every semidegree fixed.
pub fn random_regular_tournament(n: usize, seed: Seed) -> Result<Digraph> {
    let mut g = circulant(n, &[])?;
    if n < 3 {
        return Ok(g);
    }
    let mut rng = seed.rng();
    for _ in 0..50 * n * n {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let c = rng.gen_range(0..n);
        if a == b || b == c || a == c {
            continue;
        }
        if g.has_arc(a, b) && g.has_arc(b, c) && g.has_arc(c, a) {
            for (u, v) in [(a, b), (b, c), (c, a)] {
                g.remove_arc(u, v);
                g.insert_arc(v, u)?;
            }
        }
    }
    Ok(g)
}

pub fn transitive_tournament(n: usize) -> Result<Digraph> {
    Digraph::from_arcs(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn complete_digraph(n: usize) -> Result<Digraph> {
    Digraph::from_arcs(n, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))))
}

/// The complete graph as a symmetric digraph (identical arcs to
/// [`complete_digraph`]).
pub fn complete_graph(n: usize) -> Result<Digraph> {
    complete_digraph(n)
}

pub fn complete_bipartite_digraph(a: usize, b: usize) -> Result<Digraph> {
    Digraph::from_edges(a + b, (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))))
}

pub fn directed_cycle(n: usize) -> Result<Digraph> {
    if n < 2 {
        return Err(bad("a directed cycle needs n >= 2"));
    }
    Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Seeded random `d`-regular simple graph: a circulant start (`i ~ i +- s`
/// for `s <= d/2`, plus antipodes when `d` is odd) randomised by `10 m`
/// attempted double-edge swaps.
pub fn random_regular_graph(n: usize, d: usize, seed: Seed) -> Result<Digraph> {
    check_n(n)?;
    if d >= n || (n * d) % 2 == 1 {
        return Err(bad(format!("no {d}-regular graph on {n} vertices")));
    }
    let mut g = Digraph::empty(n)?;
    for i in 0..n {
        for s in 1..=d / 2 {
            let j = (i + s) % n;
            g.insert_arc(i, j)?;
            g.insert_arc(j, i)?;
        }
        if d % 2 == 1 {
            g.insert_arc(i, (i + n / 2) % n)?;
        }
    }
    let mut rng = seed.rng();
    let swaps = 10 * n * d / 2;
    for _ in 0..swaps {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        let (mut c, mut e) = edges[rng.gen_range(0..edges.len())];
        if rng.gen::<bool>() {
            std::mem::swap(&mut c, &mut e);
        }
        if a == c || a == e || b == c || b == e || g.has_arc(a, e) || g.has_arc(c, b) {
            continue;
        }
        for (u, v) in [(a, b), (c, e)] {
            g.remove_arc(u, v);
            g.remove_arc(v, u);
        }
        for (u, v) in [(a, e), (c, b)] {
            g.insert_arc(u, v)?;
            g.insert_arc(v, u)?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_strongly_connected, vertex_connectivity};

    #[test]
    fn fig1_shape() {
        let f = fig1(2).unwrap();
        assert_eq!(f.graph.n(), 20);
        assert!(f.graph.is_symmetric());
        assert!((0..20).all(|v| f.graph.out_degree(v) == 5));
        assert_eq!(vertex_connectivity(&f.graph).kappa, 2);
        assert!(fig1(1).is_err());
    }

    #[test]
    fn fig2_shape() {
        let f = fig2(7).unwrap();
        assert!(is_strongly_connected(&f.graph));
        let (x, z) = (4, 6);
        assert!(!f.graph.has_arc(x, z) && f.graph.has_arc(z, x));
        assert_eq!(f.part("K").unwrap(), &[0, 1, 2, 3]);
    }

    #[test]
    fn fig3_degrees_match_lower_bound() {
        for m in [1usize, 3] {
            let f = fig3_haggkvist(m).unwrap();
            let n = 4 * m + 3;
            assert!(GraphClass::Oriented.admits(&f.graph));
            let bound = (3 * n - 4).div_ceil(8) - 1;
            assert_eq!(f.graph.semidegrees().min(), bound, "m={m}");
            assert_eq!(f.part("B").unwrap().len() + 1, f.part("D").unwrap().len());
        }
        assert!(fig3_haggkvist(2).is_err());
    }

    #[test]
    fn fig4_sizes_and_class() {
        let f = fig4_square(2).unwrap();
        let sizes: Vec<_> = f.parts.iter().map(|(_, v)| v.len()).collect();
        assert_eq!(sizes, vec![2, 1, 5, 1, 3]);
        assert!(GraphClass::Oriented.admits(&f.graph));
        assert!(is_strongly_connected(&f.graph));
        assert!(fig4_square(3).is_err());
    }

    #[test]
    fn nw_extremal_sequences() {
        let f = nw_extremal(7, 2).unwrap();
        let ds = f.graph.degree_sequences();
        assert_eq!(ds.out_seq, vec![2, 2, 4, 4, 4, 6, 6]);
        assert_eq!(ds.in_seq, ds.out_seq);
        assert!(is_strongly_connected(&f.graph));
    }

    #[test]
    fn tournaments() {
        let c5 = circulant(5, &[]).unwrap();
        assert!(c5.has_arc(0, 1) && c5.has_arc(0, 2) && c5.has_arc(3, 0));
        assert_eq!(c5.regular_degree(), Some(2));
        assert!(circulant(5, &[1, 4]).is_err());
        assert!(circulant(6, &[]).is_err());
        let t = transitive_tournament(4).unwrap();
        assert_eq!(t.degree_sequences().out_seq, vec![0, 1, 2, 3]);
        let r = random_regular_tournament(9, Seed(3)).unwrap();
        assert!(GraphClass::Tournament.admits(&r));
        assert!((0..9).all(|v| r.out_degree(v) == 4 && r.in_degree(v) == 4));
        assert_ne!(r, circulant(9, &[]).unwrap());
        assert_eq!(random_tournament(8, Seed(1)), random_tournament(8, Seed(1)));
    }

    #[test]
    fn classic_graphs() {
        assert_eq!(complete_digraph(4).unwrap().arc_count(), 12);
        let kb = complete_bipartite_digraph(3, 3).unwrap();
        assert_eq!(kb.semidegrees().min(), 3);
        assert_eq!(directed_cycle(6).unwrap().semidegrees().min(), 1);
    }

    #[test]
    fn random_regular_graphs() {
        for d in [7, 8] {
            let g = random_regular_graph(12, d, Seed(5)).unwrap();
            assert!(g.is_symmetric());
            assert!((0..12).all(|v| g.out_degree(v) == d));
            assert_eq!(g, random_regular_graph(12, d, Seed(5)).unwrap());
        }
        assert!(random_regular_graph(5, 3, Seed(0)).is_err());
    }

    #[test]
    fn blowup_families() {
        let f = cycle_blowup(4, &[2, 2, 2, 2]).unwrap();
        assert_eq!(f.graph.n(), 8);
        assert!(GraphClass::Oriented.admits(&f.graph));
        let t = two_regular_tournaments(2).unwrap();
        assert_eq!(t.graph.regular_degree(), Some(2));
        assert!(!is_strongly_connected(&t.graph));
    }
}
