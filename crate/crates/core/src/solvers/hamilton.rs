use crate::error::{Error, Result};
use crate::graph::{
    bits, contract_matching, full_mask, mask_of, reachable_from, reaching_to, Digraph, HamiltonCycle, Matching,
};
use crate::verdict::{Verdict, Witness};

use super::{Budget, Meter};

/// Backtracking over paths from a fixed start vertex. Optionally the cycle
/// must meet `seq` in that cyclic order, with `seq[0]` the start.
struct CycleSearch<'a> {
    g: &'a Digraph,
    start: usize,
    seq: &'a [usize],
    meter: Meter,
    path: Vec<usize>,
}

impl CycleSearch<'_> {
    fn run(&mut self) -> Result<Option<HamiltonCycle>> {
        self.path.push(self.start);
        let next = usize::from(self.seq.first() == Some(&self.start));
        if self.dfs(self.start, 1 << self.start, next)? {
            Ok(Some(HamiltonCycle::new(std::mem::take(&mut self.path))))
        } else {
            Ok(None)
        }
    }

    fn dfs(&mut self, u: usize, visited: u64, next_seq: usize) -> Result<bool> {
        self.meter.tick()?;
        let g = self.g;
        let rest = g.all() & !visited;
        if rest == 0 {
            return Ok(g.has_arc(u, self.start));
        }
        let src = rest | 1 << u;
        let dst = rest | 1 << self.start;
        let mut forced = None;
        let mut last_only = 0u32;
        for w in bits(rest) {
            let ins = g.in_set(w) & src;
            let outs = g.out_set(w) & dst;
            if ins == 0 || outs == 0 {
                return Ok(false);
            }
            if ins == 1 << u {
                if forced.is_some() {
                    return Ok(false);
                }
                forced = Some(w);
            }
            if outs == 1 << self.start {
                last_only += 1;
            }
        }
        if last_only > 1 {
            return Ok(false);
        }
        if reachable_from(g, u, src) & rest != rest || reaching_to(g, self.start, dst) & rest != rest {
            return Ok(false);
        }
        let mut cand = g.out_set(u) & rest;
        if let Some(&due) = self.seq.get(next_seq) {
            let pending = mask_of(self.seq[next_seq..].iter().copied());
            cand &= !pending | 1 << due;
        }
        if let Some(w) = forced {
            cand &= 1 << w;
        }
        for v in bits(cand) {
            self.path.push(v);
            let step = usize::from(self.seq.get(next_seq) == Some(&v));
            if self.dfs(v, visited | 1 << v, next_seq + step)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// Calls `visit` on every Hamilton path from `start` to `end` (distinct
/// vertices) until it returns `true`; the result says whether it did.
pub(crate) fn for_each_hamilton_path(
    g: &Digraph,
    start: usize,
    end: usize,
    meter: &mut Meter,
    visit: &mut dyn FnMut(&[usize], &mut Meter) -> Result<bool>,
) -> Result<bool> {
    let mut path = Vec::with_capacity(g.n());
    path.push(start);
    paths_dfs(g, end, 1 << start, &mut path, meter, visit)
}

fn paths_dfs(
    g: &Digraph,
    end: usize,
    visited: u64,
    path: &mut Vec<usize>,
    meter: &mut Meter,
    visit: &mut dyn FnMut(&[usize], &mut Meter) -> Result<bool>,
) -> Result<bool> {
    meter.tick()?;
    let u = *path.last().unwrap();
    let rest = g.all() & !visited;
    if rest == 0 {
        return if u == end { visit(path, meter) } else { Ok(false) };
    }
    if rest == 1 << end {
        if !g.has_arc(u, end) {
            return Ok(false);
        }
        path.push(end);
        let r = visit(path, meter);
        path.pop();
        return r;
    }
    let src = rest | 1 << u;
    let mut forced = None;
    for w in bits(rest) {
        let ins = g.in_set(w) & src;
        if ins == 0 || (w != end && g.out_set(w) & rest == 0) {
            return Ok(false);
        }
        if ins == 1 << u && w != end {
            if forced.is_some() {
                return Ok(false);
            }
            forced = Some(w);
        }
    }
    if reachable_from(g, u, src) & rest != rest {
        return Ok(false);
    }
    let mut cand = g.out_set(u) & rest & !(1 << end);
    if let Some(w) = forced {
        cand &= 1 << w;
    }
    for v in bits(cand) {
        path.push(v);
        let done = paths_dfs(g, end, visited | 1 << v, path, meter, visit)?;
        path.pop();
        if done {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exact Hamilton cycle search from vertex 0, neighbours in ascending order.
pub fn find_hamilton_cycle(g: &Digraph, budget: Budget) -> Result<Option<HamiltonCycle>> {
    if g.n() < 2 {
        return Ok(None);
    }
    CycleSearch { g, start: 0, seq: &[], meter: budget.meter(), path: Vec::with_capacity(g.n()) }.run()
}

/// Hamilton cycle meeting `seq` in the given cyclic order.
pub fn k_ordered_hamilton(g: &Digraph, seq: &[usize], budget: Budget) -> Result<Option<HamiltonCycle>> {
    crate::graph::check_distinct(seq, g.n())?;
    if g.n() < 2 {
        return Ok(None);
    }
    let start = seq.first().copied().unwrap_or(0);
    CycleSearch { g, start, seq, meter: budget.meter(), path: Vec::with_capacity(g.n()) }.run()
}

/// Hamilton cycle containing every arc of `m`: contract, solve, lift.
pub fn hamilton_cycle_through(g: &Digraph, m: &Matching, budget: Budget) -> Result<Option<HamiltonCycle>> {
    let c = contract_matching(g, m)?;
    if c.graph.n() == 1 {
        let group = &c.groups[0];
        let closes = group.len() >= 2 && g.has_arc(*group.last().unwrap(), group[0]);
        return Ok(closes.then(|| HamiltonCycle::new(group.clone())));
    }
    Ok(find_hamilton_cycle(&c.graph, budget)?.map(|h| c.lift(&h)))
}

/// Shortest cycle length the class admits: 3 without 2-cycles, else 2.
pub fn min_cycle_length(g: &Digraph) -> usize {
    if g.is_oriented() {
        3
    } else {
        2
    }
}

/// Whether `target` is reachable from `from` in at most `steps` arcs
/// through `within`.
fn within_steps(g: &Digraph, from: usize, target: usize, within: u64, steps: usize) -> bool {
    let mut seen = 1u64 << from;
    let mut frontier = seen;
    for _ in 0..steps {
        let mut next = 0;
        for v in bits(frontier) {
            next |= g.out_set(v);
        }
        if next >> target & 1 == 1 {
            return true;
        }
        next &= within & !seen;
        if next == 0 {
            return false;
        }
        seen |= next;
        frontier = next;
    }
    false
}

/// A directed cycle of exactly `len` vertices, listed from its lowest vertex.
pub fn find_cycle_of_length(g: &Digraph, len: usize, budget: Budget) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if len < 2 || len > n {
        return Ok(None);
    }
    let mut meter = budget.meter();
    for s in 0..n {
        let avail = g.all() & !full_mask(s + 1);
        if (avail.count_ones() as usize) < len - 1 {
            break;
        }
        let mut path = vec![s];
        if cycle_dfs(g, s, avail, len, &mut path, 1 << s, &mut meter)? {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

fn cycle_dfs(
    g: &Digraph,
    s: usize,
    avail: u64,
    len: usize,
    path: &mut Vec<usize>,
    visited: u64,
    meter: &mut Meter,
) -> Result<bool> {
    meter.tick()?;
    let u = *path.last().unwrap();
    if path.len() == len {
        return Ok(g.has_arc(u, s));
    }
    let free = avail & !visited;
    if !within_steps(g, u, s, free, len - path.len() + 1) {
        return Ok(false);
    }
    for v in bits(g.out_set(u) & free) {
        path.push(v);
        if cycle_dfs(g, s, avail, len, path, visited | 1 << v, meter)? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

/// Outcome of a pancyclicity check with one cycle per length found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pancyclicity {
    pub verdict: Verdict,
    pub min_length: usize,
    /// `(length, cycle)` for every length checked successfully.
    pub cycles: Vec<(usize, Vec<usize>)>,
}

/// Cycles of every length from [`min_cycle_length`] to `n`; stops at the
/// first missing length.
pub fn is_pancyclic(g: &Digraph, budget: Budget) -> Result<Pancyclicity> {
    let n = g.n();
    let lmin = min_cycle_length(g);
    let mut cycles = Vec::new();
    if n < lmin {
        let verdict = Verdict::fails("pancyclic", Witness::TooFewVertices { n, needed: lmin });
        return Ok(Pancyclicity { verdict, min_length: lmin, cycles });
    }
    for len in lmin..=n {
        match find_cycle_of_length(g, len, budget)? {
            Some(c) => cycles.push((len, c)),
            None => {
                let verdict = Verdict::fails("pancyclic", Witness::MissingLength { length: len });
                return Ok(Pancyclicity { verdict, min_length: lmin, cycles });
            }
        }
    }
    Ok(Pancyclicity { verdict: Verdict::holds("pancyclic"), min_length: lmin, cycles })
}

/// Whether `order` is a Hamilton cycle whose every vertex sends arcs to the
/// next `k` vertices.
pub fn is_kth_power(g: &Digraph, order: &[usize], k: usize) -> bool {
    let n = g.n();
    order.len() == n
        && crate::graph::check_distinct(order, n).is_ok()
        && k < n
        && (0..n).all(|i| (1..=k).all(|j| g.has_arc(order[i], order[(i + j) % n])))
}

/// The `k`th power of a Hamilton cycle, as the underlying cyclic order.
pub fn kth_power_hamilton(g: &Digraph, k: usize, budget: Budget) -> Result<Option<HamiltonCycle>> {
    let n = g.n();
    if k == 0 || (n >= 2 && k >= n) {
        return Err(Error::BadParams(format!("need 1 <= k < n, got k={k}, n={n}")));
    }
    if k == 1 {
        return find_hamilton_cycle(g, budget);
    }
    let mut meter = budget.meter();
    let mut order = vec![0];
    Ok(power_dfs(g, k, &mut order, 1, &mut meter)?.then(|| HamiltonCycle::new(order)))
}

fn power_dfs(g: &Digraph, k: usize, order: &mut Vec<usize>, visited: u64, meter: &mut Meter) -> Result<bool> {
    meter.tick()?;
    let n = g.n();
    let p = order.len();
    if p == n {
        return Ok(true);
    }
    let mut cand = g.all() & !visited;
    for j in 1..=k.min(p) {
        cand &= g.out_set(order[p - j]);
    }
    if p + k >= n {
        for &t in &order[..=(p + k - n)] {
            cand &= g.in_set(t);
        }
    }
    for v in bits(cand) {
        order.push(v);
        if power_dfs(g, k, order, visited | 1 << v, meter)? {
            return Ok(true);
        }
        order.pop();
    }
    Ok(false)
}
