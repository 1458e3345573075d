use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::solvers::one_factor;

/// Cluster-level digraph: one vertex per cluster of `m` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedDigraph {
    pub graph: Digraph,
    pub m: usize,
}

impl ReducedDigraph {
    pub fn new(graph: Digraph, m: usize) -> Result<Self> {
        if m == 0 || graph.n() == 0 {
            return Err(Error::BadParams("a reduced digraph needs clusters of positive size".into()));
        }
        Ok(ReducedDigraph { graph, m })
    }

    pub fn k(&self) -> usize {
        self.graph.n()
    }

    fn check_cluster(&self, x: usize) -> Result<()> {
        if x >= self.k() {
            return Err(Error::VertexOutOfRange { v: x, n: self.k() });
        }
        Ok(())
    }
}

/// A 1-factor of the reduced digraph. Cycles start at their least cluster
/// and are sorted by it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneFactorF {
    cycles: Vec<Vec<usize>>,
}

impl OneFactorF {
    pub fn new(r: &ReducedDigraph, cycles: Vec<Vec<usize>>) -> Result<Self> {
        let factor = crate::graph::CycleFactor::new(cycles);
        factor.check(&r.graph)?;
        Ok(OneFactorF { cycles: factor.cycles().to_vec() })
    }

    /// Any 1-factor of `r`, if one exists.
    pub fn find(r: &ReducedDigraph) -> Option<Self> {
        one_factor(&r.graph).map(|f| OneFactorF { cycles: f.cycles().to_vec() })
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    fn locate(&self, x: usize) -> (usize, usize) {
        for (ci, c) in self.cycles.iter().enumerate() {
            if let Some(p) = c.iter().position(|&y| y == x) {
                return (ci, p);
            }
        }
        panic!("cluster {x} is not on the factor")
    }

    /// Index of the cycle through `x`.
    pub fn cycle_of(&self, x: usize) -> usize {
        self.locate(x).0
    }

    pub fn succ(&self, x: usize) -> usize {
        let (ci, p) = self.locate(x);
        let c = &self.cycles[ci];
        c[(p + 1) % c.len()]
    }

    pub fn pred(&self, x: usize) -> usize {
        let (ci, p) = self.locate(x);
        let c = &self.cycles[ci];
        c[(p + c.len() - 1) % c.len()]
    }
}

/// `X_1 C_1 X_1^- X_2 ... X_t C_t X_t^- X_{t+1}`, stored as the clusters
/// `X_1, ..., X_{t+1}`: from each `X_i` the walk winds once around its
/// factor cycle to the predecessor `X_i^-`, then takes the reduced arc
/// `X_i^- -> X_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedWalk {
    pub xs: Vec<usize>,
}

impl ShiftedWalk {
    /// Number of cycles traversed.
    pub fn t(&self) -> usize {
        self.xs.len() - 1
    }

    pub fn entries(&self) -> &[usize] {
        &self.xs[1..]
    }

    pub fn exits(&self, f: &OneFactorF) -> Vec<usize> {
        self.xs[..self.t()].iter().map(|&x| f.pred(x)).collect()
    }

    /// Cluster sequence of the walk, endpoints included.
    pub fn clusters(&self, f: &OneFactorF) -> Vec<usize> {
        let mut out = Vec::new();
        for &x in &self.xs[..self.t()] {
            out.extend(wind(f, x, f.pred(x)));
        }
        out.push(*self.xs.last().unwrap());
        out
    }

    pub fn check(&self, r: &ReducedDigraph, f: &OneFactorF) -> Result<()> {
        if self.xs.is_empty() {
            return Err(Error::BadParams("a shifted walk has at least one cluster".into()));
        }
        for &x in &self.xs {
            r.check_cluster(x)?;
        }
        for w in self.xs.windows(2) {
            let exit = f.pred(w[0]);
            if !r.graph.has_arc(exit, w[1]) {
                return Err(Error::ArcMissing(exit, w[1]));
            }
        }
        Ok(())
    }

    /// `self` followed by `next`, which must start where `self` ends.
    pub fn then(mut self, next: &ShiftedWalk) -> ShiftedWalk {
        debug_assert_eq!(self.xs.last(), next.xs.first());
        self.xs.extend_from_slice(&next.xs[1..]);
        self
    }
}

/// Clusters from `from` along the factor cycle up to and including `to`.
fn wind(f: &OneFactorF, from: usize, to: usize) -> Vec<usize> {
    let mut out = vec![from];
    let mut x = from;
    while x != to {
        x = f.succ(x);
        out.push(x);
    }
    out
}

/// Shifted walk from `a` to `b` traversing as few cycles as possible
/// (breadth-first over the entry clusters); `None` if `b` is unreachable.
pub fn shifted_walk(r: &ReducedDigraph, f: &OneFactorF, a: usize, b: usize) -> Result<Option<ShiftedWalk>> {
    r.check_cluster(a)?;
    r.check_cluster(b)?;
    let k = r.k();
    let mut parent = vec![usize::MAX; k];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut xs = vec![b];
            let mut y = b;
            while y != a {
                y = parent[y];
                xs.push(y);
            }
            xs.reverse();
            return Ok(Some(ShiftedWalk { xs }));
        }
        for y in crate::graph::bits(r.graph.out_set(f.pred(x))) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    Ok(None)
}

fn route(r: &ReducedDigraph, f: &OneFactorF, waypoints: &[usize]) -> Result<ShiftedWalk> {
    let mut walk = ShiftedWalk { xs: vec![waypoints[0]] };
    for w in waypoints.windows(2) {
        let leg = shifted_walk(r, f, w[0], w[1])?.ok_or(Error::Disconnected { from: w[0], to: w[1] })?;
        walk = walk.then(&leg);
    }
    Ok(walk)
}

/// An exceptional vertex's entry cluster `T` (holding outneighbours of the
/// vertex) and exit cluster `U` (holding inneighbours).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Demand {
    pub entry: usize,
    pub exit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum WalkNode {
    Cluster(usize),
    /// Index into the demand list (and the exceptional set).
    Exceptional(usize),
}

/// How the walk moves from one node to the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hop {
    /// Along an arc of a factor cycle.
    Wind,
    /// From an exit cluster to an entry cluster along a reduced arc.
    Jump,
    ToExceptional,
    FromExceptional,
}

/// Closed walk on clusters and exceptional vertices: `hops[i]` leads from
/// `nodes[i]` to `nodes[i + 1]`, the last hop back to `nodes[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedWalk {
    pub nodes: Vec<WalkNode>,
    pub hops: Vec<Hop>,
}

/// Per-cluster tallies of a closed walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkStats {
    pub visits: Vec<usize>,
    pub entries: Vec<usize>,
    pub exits: Vec<usize>,
}

impl WalkStats {
    pub fn load(&self, x: usize) -> usize {
        self.entries[x] + self.exits[x]
    }
}

impl ClosedWalk {
    fn push(&mut self, hop_in: Hop, node: WalkNode) {
        if !self.nodes.is_empty() {
            self.hops.push(hop_in);
        }
        self.nodes.push(node);
    }

    fn push_clusters(&mut self, hop_in: Hop, xs: impl IntoIterator<Item = usize>) {
        for x in xs {
            self.push(hop_in, WalkNode::Cluster(x));
        }
    }

    /// Appends a shifted walk whose first cluster is already the last node.
    fn push_route(&mut self, f: &OneFactorF, walk: &ShiftedWalk) {
        for (i, &x) in walk.xs[..walk.t()].iter().enumerate() {
            if i > 0 {
                self.push(Hop::Jump, WalkNode::Cluster(x));
            }
            self.push_clusters(Hop::Wind, wind(f, x, f.pred(x)).into_iter().skip(1));
        }
        if walk.t() > 0 {
            self.push(Hop::Jump, WalkNode::Cluster(*walk.xs.last().unwrap()));
        }
    }

    fn hop_target(&self, i: usize) -> WalkNode {
        self.nodes[(i + 1) % self.nodes.len()]
    }

    pub fn stats(&self, k: usize) -> WalkStats {
        let mut s = WalkStats { visits: vec![0; k], entries: vec![0; k], exits: vec![0; k] };
        for (i, (&node, &hop)) in self.nodes.iter().zip(&self.hops).enumerate() {
            if let WalkNode::Cluster(x) = node {
                s.visits[x] += 1;
                if matches!(hop, Hop::Jump | Hop::ToExceptional) {
                    s.exits[x] += 1;
                }
            }
            if let (WalkNode::Cluster(y), Hop::Jump | Hop::FromExceptional) = (self.hop_target(i), hop) {
                s.entries[y] += 1;
            }
        }
        s
    }

    /// Checks every hop and properties (a) every cluster and exceptional
    /// vertex visited, each exceptional vertex once; (b) clusters of each
    /// factor cycle visited equally often; (c) entries plus exits of each
    /// cluster at most `cap`.
    pub fn check(&self, r: &ReducedDigraph, f: &OneFactorF, demands: &[Demand], cap: usize) -> Result<WalkStats> {
        let bad = |msg: String| Err(Error::BadParams(msg));
        if self.nodes.is_empty() || self.nodes.len() != self.hops.len() {
            return bad("walk needs one hop per node".into());
        }
        let mut seen_exc = vec![0usize; demands.len()];
        for (i, (&node, &hop)) in self.nodes.iter().zip(&self.hops).enumerate() {
            let next = self.hop_target(i);
            let ok = match (node, hop, next) {
                (WalkNode::Cluster(x), Hop::Wind, WalkNode::Cluster(y)) => x < r.k() && y < r.k() && f.succ(x) == y,
                (WalkNode::Cluster(x), Hop::Jump, WalkNode::Cluster(y)) => {
                    x < r.k() && y < r.k() && r.graph.has_arc(x, y) && f.succ(x) != y
                }
                (WalkNode::Cluster(x), Hop::ToExceptional, WalkNode::Exceptional(e)) => {
                    e < demands.len() && demands[e].exit == x
                }
                (WalkNode::Exceptional(e), Hop::FromExceptional, WalkNode::Cluster(y)) => {
                    e < demands.len() && demands[e].entry == y
                }
                _ => false,
            };
            if !ok {
                return bad(format!("hop {i} ({node:?} {hop:?} {next:?}) is not allowed"));
            }
            if let WalkNode::Exceptional(e) = node {
                seen_exc[e] += 1;
            }
        }
        if let Some(e) = seen_exc.iter().position(|&c| c != 1) {
            return bad(format!("exceptional vertex {e} visited {} times", seen_exc[e]));
        }
        let s = self.stats(r.k());
        if let Some(x) = (0..r.k()).find(|&x| s.visits[x] == 0) {
            return bad(format!("cluster {x} is never visited"));
        }
        for c in f.cycles() {
            if c.iter().any(|&x| s.visits[x] != s.visits[c[0]]) {
                return bad(format!("clusters of factor cycle {c:?} are visited unequally"));
            }
        }
        if let Some(x) = (0..r.k()).find(|&x| s.load(x) > cap) {
            return Err(Error::DemandOverload { cluster: x, count: s.load(x), cap });
        }
        Ok(s)
    }

    /// Clusters of the walk in order, exceptional nodes skipped.
    pub fn cluster_sequence(&self) -> Vec<usize> {
        self.nodes.iter().filter_map(|n| if let WalkNode::Cluster(x) = n { Some(*x) } else { None }).collect()
    }
}

/// The verbatim cap on entry/exit appearances per cluster: `m / 10`.
pub fn default_demand_cap(m: usize) -> usize {
    m / 10
}

/// Closed walk through every exceptional vertex (in demand order) and every
/// cluster. Vertex `a_i` is followed by its entry cluster `T_i`, a shifted
/// walk to `U_{i+1}^+`, and a full winding to `U_{i+1}`, from which the walk
/// moves to `a_{i+1}`. Without demands the walk winds around each factor
/// cycle once, linked by shifted walks. Factor cycles the walk would miss
/// are added as waypoints of the first shifted walk.
pub fn build_closed_walk(r: &ReducedDigraph, f: &OneFactorF, demands: &[Demand], cap: usize) -> Result<ClosedWalk> {
    for d in demands {
        r.check_cluster(d.entry)?;
        r.check_cluster(d.exit)?;
    }
    let k = r.k();
    let mut demand_load = vec![0usize; k];
    for d in demands {
        demand_load[d.entry] += 1;
        demand_load[d.exit] += 1;
    }
    if let Some(x) = (0..k).find(|&x| demand_load[x] > cap) {
        return Err(Error::DemandOverload { cluster: x, count: demand_load[x], cap });
    }
    let reps: Vec<usize> = f.cycles().iter().map(|c| c[0]).collect();
    let assemble = |detours: &[usize]| -> Result<ClosedWalk> {
        let mut w = ClosedWalk { nodes: Vec::new(), hops: Vec::new() };
        if demands.is_empty() {
            let x0 = reps[0];
            let mut points = vec![x0];
            points.extend_from_slice(detours);
            points.push(x0);
            w.push(Hop::Wind, WalkNode::Cluster(x0));
            w.push_route(f, &route(r, f, &points)?);
            w.push_clusters(Hop::Wind, wind(f, x0, f.pred(x0)).into_iter().skip(1));
            w.hops.push(Hop::Wind);
            return Ok(w);
        }
        let l = demands.len();
        for (i, d) in demands.iter().enumerate() {
            let target = demands[(i + 1) % l].exit;
            let mut points = vec![d.entry];
            if i == 0 {
                points.extend_from_slice(detours);
            }
            points.push(f.succ(target));
            w.push(Hop::ToExceptional, WalkNode::Exceptional(i));
            w.push(Hop::FromExceptional, WalkNode::Cluster(d.entry));
            w.push_route(f, &route(r, f, &points)?);
            w.push_clusters(Hop::Wind, wind(f, f.succ(target), target).into_iter().skip(1));
        }
        w.hops.push(Hop::ToExceptional);
        Ok(w)
    };
    let mut walk = assemble(&[])?;
    let visits = walk.stats(k).visits;
    let missing: Vec<usize> = reps.iter().copied().filter(|&x| visits[x] == 0).collect();
    if !missing.is_empty() {
        walk = assemble(&missing)?;
    }
    walk.check(r, f, demands, cap)?;
    Ok(walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::complete_digraph;

    fn reduced(k: usize, arcs: &[(usize, usize)]) -> ReducedDigraph {
        ReducedDigraph::new(Digraph::from_arcs(k, arcs.iter().copied()).unwrap(), 10).unwrap()
    }

    fn triangle() -> (ReducedDigraph, OneFactorF) {
        let r = ReducedDigraph::new(complete_digraph(3).unwrap(), 10).unwrap();
        let f = OneFactorF::new(&r, vec![vec![0, 1, 2]]).unwrap();
        (r, f)
    }

    #[test]
    fn shifted_walks() {
        let (r, f) = triangle();
        let w = shifted_walk(&r, &f, 1, 1).unwrap().unwrap();
        assert_eq!((w.xs.clone(), w.t()), (vec![1], 0));
        let w = shifted_walk(&r, &f, 0, 1).unwrap().unwrap();
        assert_eq!(w.t(), 1);
        assert_eq!(w.clusters(&f), vec![0, 1, 2, 1]);
        assert_eq!(w.entries(), &[1]);
        assert_eq!(w.exits(&f), vec![2]);
        w.check(&r, &f).unwrap();

        // two factor cycles joined by the single arc 1 -> 2, plus a chord 4 -> 3
        let r = reduced(5, &[(0, 1), (1, 0), (2, 3), (3, 4), (4, 2), (1, 2), (4, 3)]);
        let f = OneFactorF::new(&r, vec![vec![0, 1], vec![2, 3, 4]]).unwrap();
        let w = shifted_walk(&r, &f, 0, 3).unwrap().unwrap();
        assert_eq!(w.xs, vec![0, 2, 3]);
        assert_eq!(w.t(), 2);
        w.check(&r, &f).unwrap();
        assert_eq!(shifted_walk(&r, &f, 2, 0).unwrap(), None);
    }

    #[test]
    fn closed_walk_without_demands() {
        let r = reduced(3, &[(0, 1), (1, 2), (2, 0)]);
        let f = OneFactorF::new(&r, vec![vec![0, 1, 2]]).unwrap();
        let w = build_closed_walk(&r, &f, &[], 0).unwrap();
        assert_eq!(w.cluster_sequence(), vec![0, 1, 2]);
        assert!(w.hops.iter().all(|&h| h == Hop::Wind));

        let r = reduced(5, &[(0, 1), (1, 0), (2, 3), (3, 4), (4, 2), (1, 2), (4, 3), (4, 0)]);
        let f = OneFactorF::new(&r, vec![vec![0, 1], vec![2, 3, 4]]).unwrap();
        let w = build_closed_walk(&r, &f, &[], 5).unwrap();
        let s = w.check(&r, &f, &[], 5).unwrap();
        assert!(s.visits.iter().all(|&v| v > 0));
    }

    #[test]
    fn closed_walk_with_demands() {
        let (r, f) = triangle();
        let demands = [Demand { entry: 0, exit: 1 }];
        let w = build_closed_walk(&r, &f, &demands, 3).unwrap();
        let s = w.check(&r, &f, &demands, 3).unwrap();
        assert!(s.visits.iter().all(|&v| v == s.visits[0] && v > 0));
        assert_eq!(w.nodes[0], WalkNode::Exceptional(0));

        let many = vec![Demand { entry: 0, exit: 0 }; 2];
        assert!(matches!(
            build_closed_walk(&r, &f, &many, 3),
            Err(Error::DemandOverload { cluster: 0, count: 4, cap: 3 })
        ));
        assert!(matches!(
            build_closed_walk(&r, &f, &demands, default_demand_cap(10)),
            Err(Error::DemandOverload { .. })
        ));
    }

    #[test]
    fn unreachable_waypoints() {
        let r = reduced(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        let f = OneFactorF::new(&r, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(build_closed_walk(&r, &f, &[], 5), Err(Error::Disconnected { .. })));
    }
}
