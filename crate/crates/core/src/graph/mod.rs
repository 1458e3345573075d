//! Digraphs stored as fixed-width bit rows, plus the certificate objects
//! (matchings, Hamilton cycles, cycle factors) every solver hands back.
//!
//! Vertices are dense `0..n` indices with `n <= 64`, so a vertex set is a
//! single `u64` and neighbourhood intersections are one machine instruction.
//! Undirected graphs are symmetric digraphs; tournaments and oriented graphs
//! are digraphs that happen to satisfy the corresponding [`GraphClass`].

mod connectivity;
mod independence;
mod transform;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use connectivity::{
    is_strongly_connected, local_vertex_connectivity, reachable_from, reaching_to, unreachable_pair,
    vertex_connectivity, Connectivity,
};
pub use independence::{independence_numbers, max_independent_set, IndependenceNumbers, DEFAULT_INDEPENDENCE_CAP};
pub use transform::{blow_up, contract_matching, dominated_pairs, BlowUp, Contraction, PairRule};

/// Largest vertex count the bit-row representation supports.
pub const MAX_VERTICES: usize = 64;

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub fn bits(mask: u64) -> Bits {
    Bits(mask)
}

/// Builds a mask from vertex indices. Indices must be below 64.
pub fn mask_of<I: IntoIterator<Item = usize>>(vs: I) -> u64 {
    vs.into_iter().fold(0u64, |m, v| m | (1u64 << v))
}

/// Serialized as `{"n": .., "arcs": [[u, v], ..]}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ArcList", try_from = "ArcList")]
pub struct Digraph {
    n: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct ArcList {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl From<Digraph> for ArcList {
    fn from(g: Digraph) -> Self {
        ArcList { n: g.n, arcs: g.arcs().collect() }
    }
}

impl TryFrom<ArcList> for Digraph {
    type Error = Error;

    fn try_from(a: ArcList) -> Result<Self> {
        Digraph::from_arcs(a.n, a.arcs)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph").field("n", &self.n).field("arcs", &self.arcs().collect::<Vec<_>>()).finish()
    }
}

impl Digraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n });
        }
        Ok(Digraph { n, out: vec![0; n], inn: vec![0; n] })
    }

    /// Builds a digraph from an arc list, rejecting loops and repeated arcs.
    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(n: usize, arcs: I) -> Result<Self> {
        let mut g = Digraph::empty(n)?;
        for (u, v) in arcs {
            if !g.insert_arc(u, v)? {
                return Err(Error::DuplicateArc(u, v));
            }
        }
        Ok(g)
    }

    /// Symmetric digraph with both arcs for every listed edge.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Digraph::empty(n)?;
        for (u, v) in edges {
            let a = g.insert_arc(u, v)?;
            let b = g.insert_arc(v, u)?;
            if !a || !b {
                return Err(Error::DuplicateArc(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Inserts `u -> v`; returns `false` if it was already present.
    pub fn insert_arc(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let present = self.has_arc(u, v);
        self.out[u] |= 1 << v;
        self.inn[v] |= 1 << u;
        Ok(!present)
    }

    /// Removes `u -> v`; returns whether it was present.
    pub fn remove_arc(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || !self.has_arc(u, v) {
            return false;
        }
        self.out[u] &= !(1 << v);
        self.inn[v] &= !(1 << u);
        true
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn all(&self) -> u64 {
        full_mask(self.n)
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    /// Out-neighbourhood of `v` as a mask.
    #[inline]
    pub fn out_set(&self, v: usize) -> u64 {
        self.out[v]
    }

    /// In-neighbourhood of `v` as a mask.
    #[inline]
    pub fn in_set(&self, v: usize) -> u64 {
        self.inn[v]
    }

    /// Vertices joined to `v` by an arc in either direction.
    #[inline]
    pub fn adjacent_set(&self, v: usize) -> u64 {
        self.out[v] | self.inn[v]
    }

    /// Vertices forming a 2-cycle with `v`.
    #[inline]
    pub fn double_set(&self, v: usize) -> u64 {
        self.out[v] & self.inn[v]
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones() as usize
    }

    /// Total degree `d(v) = d+(v) + d-(v)`.
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// All arcs in ascending lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.out[u]).map(move |v| (u, v)))
    }

    /// Unordered adjacent pairs `{u, v}` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let higher = !full_mask(u + 1);
            bits(self.adjacent_set(u) & higher).map(move |v| (u, v))
        })
    }

    pub fn reverse(&self) -> Digraph {
        Digraph { n: self.n, out: self.inn.clone(), inn: self.out.clone() }
    }

    /// Symmetric closure: every arc gets its reverse.
    pub fn underlying(&self) -> Digraph {
        let rows: Vec<u64> = (0..self.n).map(|v| self.adjacent_set(v)).collect();
        Digraph { n: self.n, out: rows.clone(), inn: rows }
    }

    pub fn is_symmetric(&self) -> bool {
        self.out == self.inn
    }

    pub fn is_oriented(&self) -> bool {
        (0..self.n).all(|v| self.double_set(v) == 0)
    }

    /// `Some(r)` when every vertex has in- and out-degree `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let r = self.out_degree(0);
        (0..self.n).all(|v| self.out_degree(v) == r && self.in_degree(v) == r).then_some(r)
    }

    /// Sub-digraph induced on `keep`, with the new-to-old vertex map.
    pub fn induced(&self, keep: u64) -> (Digraph, Vec<usize>) {
        let keep = keep & self.all();
        let old: Vec<usize> = bits(keep).collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut g = Digraph { n: old.len(), out: vec![0; old.len()], inn: vec![0; old.len()] };
        for (i, &u) in old.iter().enumerate() {
            for v in bits(self.out[u] & keep) {
                let j = new_of[v];
                g.out[i] |= 1 << j;
                g.inn[j] |= 1 << i;
            }
        }
        (g, old)
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Digraph> {
        if perm.len() != self.n {
            return Err(Error::BadParams("permutation length differs from n".into()));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::BadParams("not a permutation".into()));
            }
            seen |= 1 << p;
        }
        Digraph::from_arcs(self.n, self.arcs().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Digraph) -> Result<Digraph> {
        let shift = self.n;
        Digraph::from_arcs(self.n + other.n, self.arcs().chain(other.arcs().map(|(u, v)| (u + shift, v + shift))))
    }

    pub fn semidegrees(&self) -> Semidegrees {
        semidegrees(self)
    }

    pub fn degree_sequences(&self) -> DegreeSequencePair {
        degree_sequences(self)
    }
}

/// Minimum out-degree, minimum in-degree and the vertices attaining them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semidegrees {
    pub min_out: usize,
    pub min_in: usize,
    /// Lowest-index vertex attaining `min_out`.
    pub min_out_vertex: usize,
    /// Lowest-index vertex attaining `min_in`.
    pub min_in_vertex: usize,
}

impl Semidegrees {
    /// Minimum semidegree `min(min_out, min_in)`.
    pub fn min(&self) -> usize {
        self.min_out.min(self.min_in)
    }
}

pub fn semidegrees(g: &Digraph) -> Semidegrees {
    let mut s = Semidegrees { min_out: 0, min_in: 0, min_out_vertex: 0, min_in_vertex: 0 };
    if g.n() == 0 {
        return s;
    }
    s.min_out = usize::MAX;
    s.min_in = usize::MAX;
    for v in 0..g.n() {
        if g.out_degree(v) < s.min_out {
            s.min_out = g.out_degree(v);
            s.min_out_vertex = v;
        }
        if g.in_degree(v) < s.min_in {
            s.min_in = g.in_degree(v);
            s.min_in_vertex = v;
        }
    }
    s
}

/// Out- and in-degree sequences, each sorted ascending independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequencePair {
    pub out_seq: Vec<usize>,
    pub in_seq: Vec<usize>,
}

impl DegreeSequencePair {
    pub fn n(&self) -> usize {
        self.out_seq.len()
    }

    /// `d+_i` with 1-based `i`.
    pub fn out_at(&self, i: usize) -> usize {
        self.out_seq[i - 1]
    }

    /// `d-_i` with 1-based `i`.
    pub fn in_at(&self, i: usize) -> usize {
        self.in_seq[i - 1]
    }
}

pub fn degree_sequences(g: &Digraph) -> DegreeSequencePair {
    let mut out_seq: Vec<usize> = (0..g.n()).map(|v| g.out_degree(v)).collect();
    let mut in_seq: Vec<usize> = (0..g.n()).map(|v| g.in_degree(v)).collect();
    out_seq.sort_unstable();
    in_seq.sort_unstable();
    DegreeSequencePair { out_seq, in_seq }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    Digraph,
    Oriented,
    Tournament,
    Undirected,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Digraph => "digraph",
            GraphClass::Oriented => "oriented",
            GraphClass::Tournament => "tournament",
            GraphClass::Undirected => "undirected",
        })
    }
}

/// A pair of vertices violating a class constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassViolation {
    pub u: usize,
    pub v: usize,
}

impl GraphClass {
    /// Checks `g` against the class; reports the first offending pair in
    /// lexicographic order.
    pub fn validate(self, g: &Digraph) -> std::result::Result<(), ClassViolation> {
        let n = g.n();
        for u in 0..n {
            let higher = !full_mask(u + 1) & g.all();
            let offending = match self {
                GraphClass::Digraph => 0,
                GraphClass::Oriented => g.double_set(u) & higher,
                GraphClass::Tournament => (g.double_set(u) | !g.adjacent_set(u)) & higher,
                GraphClass::Undirected => (g.out_set(u) ^ g.in_set(u)) & higher,
            };
            if offending != 0 {
                let v = offending.trailing_zeros() as usize;
                return Err(ClassViolation { u, v });
            }
        }
        Ok(())
    }

    pub fn admits(self, g: &Digraph) -> bool {
        self.validate(g).is_ok()
    }

    /// Most specific class of `g`: tournament, then oriented, then undirected.
    pub fn classify(g: &Digraph) -> GraphClass {
        if GraphClass::Tournament.admits(g) {
            GraphClass::Tournament
        } else if g.is_oriented() {
            GraphClass::Oriented
        } else if g.is_symmetric() {
            GraphClass::Undirected
        } else {
            GraphClass::Digraph
        }
    }
}

/// A set of vertex-disjoint arcs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    arcs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(arcs: Vec<(usize, usize)>) -> Result<Self> {
        let mut used = 0u64;
        for &(u, v) in &arcs {
            if u >= MAX_VERTICES || v >= MAX_VERTICES {
                return Err(Error::VertexOutOfRange { v: u.max(v), n: MAX_VERTICES });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if used >> w & 1 == 1 {
                    return Err(Error::NotAMatching { vertex: w });
                }
                used |= 1 << w;
            }
        }
        Ok(Matching { arcs })
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Every arc must be present in `g`.
    pub fn check_in(&self, g: &Digraph) -> Result<()> {
        for &(u, v) in &self.arcs {
            if u >= g.n() || v >= g.n() {
                return Err(Error::VertexOutOfRange { v: u.max(v), n: g.n() });
            }
            if !g.has_arc(u, v) {
                return Err(Error::ArcMissing(u, v));
            }
        }
        Ok(())
    }
}

/// A directed Hamilton cycle, stored rotated so the lowest vertex comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HamiltonCycle {
    order: Vec<usize>,
}

impl HamiltonCycle {
    /// Wraps a cyclic vertex order; the graph-level check is [`Self::check`].
    pub fn new(mut order: Vec<usize>) -> Self {
        if let Some(pos) = order.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(i, _)| i) {
            order.rotate_left(pos);
        }
        HamiltonCycle { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Consecutive pairs including the wrap-around arc.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.order.len();
        (0..k).map(move |i| (self.order[i], self.order[(i + 1) % k]))
    }

    pub fn contains_arc(&self, u: usize, v: usize) -> bool {
        self.arcs().any(|a| a == (u, v))
    }

    /// Successor map: `succ[v]` is the vertex after `v`.
    pub fn successors(&self) -> Vec<usize> {
        let mut succ = vec![usize::MAX; self.order.len()];
        for (u, v) in self.arcs() {
            succ[u] = v;
        }
        succ
    }

    /// Validates the certificate against its host digraph.
    pub fn check(&self, g: &Digraph) -> Result<()> {
        if g.n() < 2 {
            return Err(Error::BadParams("Hamilton cycles need at least 2 vertices".into()));
        }
        if self.order.len() != g.n() {
            return Err(Error::BadParams(format!("cycle has {} vertices, graph has {}", self.order.len(), g.n())));
        }
        check_distinct(&self.order, g.n())?;
        for (u, v) in self.arcs() {
            if !g.has_arc(u, v) {
                return Err(Error::ArcMissing(u, v));
            }
        }
        Ok(())
    }

    pub fn is_valid_in(&self, g: &Digraph) -> bool {
        self.check(g).is_ok()
    }

    /// Whether `seq` occurs along the cycle in this cyclic order.
    pub fn visits_in_cyclic_order(&self, seq: &[usize]) -> bool {
        let mut pos = vec![usize::MAX; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            if v < pos.len() {
                pos[v] = i;
            }
        }
        if seq.iter().any(|&s| s >= pos.len() || pos[s] == usize::MAX) {
            return false;
        }
        let k = self.order.len();
        let Some(&first) = seq.first() else { return true };
        let base = pos[first];
        let rel: Vec<usize> = seq.iter().map(|&s| (pos[s] + k - base) % k).collect();
        rel.windows(2).all(|w| w[0] < w[1])
    }
}

pub(crate) fn check_distinct(vs: &[usize], n: usize) -> Result<()> {
    let mut seen = 0u64;
    for &v in vs {
        if v >= n {
            return Err(Error::VertexOutOfRange { v, n });
        }
        if seen >> v & 1 == 1 {
            return Err(Error::BadParams(format!("vertex {v} repeated")));
        }
        seen |= 1 << v;
    }
    Ok(())
}

/// Vertex-disjoint directed cycles covering every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleFactor {
    cycles: Vec<Vec<usize>>,
}

impl CycleFactor {
    /// Each cycle is rotated to start at its minimum; cycles are then sorted
    /// by that minimum.
    pub fn new(cycles: Vec<Vec<usize>>) -> Self {
        let mut cycles: Vec<Vec<usize>> = cycles.into_iter().map(|c| HamiltonCycle::new(c).order).collect();
        cycles.sort_by_key(|c| c.first().copied().unwrap_or(usize::MAX));
        CycleFactor { cycles }
    }

    /// Builds the factor from a successor permutation.
    pub fn from_successors(succ: &[usize]) -> Self {
        let n = succ.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                c.push(v);
                v = succ[v];
            }
            cycles.push(c);
        }
        CycleFactor::new(cycles)
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn check(&self, g: &Digraph) -> Result<()> {
        let all: Vec<usize> = self.cycles.iter().flatten().copied().collect();
        check_distinct(&all, g.n())?;
        if all.len() != g.n() {
            return Err(Error::BadParams("factor does not cover every vertex".into()));
        }
        for c in &self.cycles {
            if c.len() < 2 {
                return Err(Error::BadParams("cycle shorter than 2".into()));
            }
            for i in 0..c.len() {
                let (u, v) = (c[i], c[(i + 1) % c.len()]);
                if !g.has_arc(u, v) {
                    return Err(Error::ArcMissing(u, v));
                }
            }
        }
        Ok(())
    }
}
