use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Digraph};

use super::{Budget, Meter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    /// Edge `i` runs from position `i` to position `i+1`.
    Forward,
    /// Edge `i` runs from position `i+1` to position `i`.
    Backward,
}

/// Cyclic sequence of edge directions for a Hamilton cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientationPattern {
    signs: Vec<Sign>,
}

impl OrientationPattern {
    pub fn new(signs: Vec<Sign>) -> Self {
        OrientationPattern { signs }
    }

    pub fn all_forward(n: usize) -> Self {
        OrientationPattern { signs: vec![Sign::Forward; n] }
    }

    /// Consecutive edges alternate direction; only even lengths close up.
    pub fn antidirected(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::InvalidPattern(format!("an antidirected cycle needs even length, got {n}")));
        }
        Ok(OrientationPattern {
            signs: (0..n).map(|i| if i % 2 == 0 { Sign::Forward } else { Sign::Backward }).collect(),
        })
    }

    /// Bit `i` of `mask` set means edge `i` is backward.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        OrientationPattern {
            signs: (0..len).map(|i| if mask >> i & 1 == 1 { Sign::Backward } else { Sign::Forward }).collect(),
        }
    }

    /// Parses a string over `{F, B}` (also `>`/`<`).
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'F' | 'f' | '>' => Ok(Sign::Forward),
                'B' | 'b' | '<' => Ok(Sign::Backward),
                _ => Err(Error::InvalidPattern(format!("unexpected {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(OrientationPattern::new)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }
}

impl fmt::Display for OrientationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(if *s == Sign::Forward { "F" } else { "B" })?;
        }
        Ok(())
    }
}

fn edge_ok(g: &Digraph, sign: Sign, a: usize, b: usize) -> bool {
    match sign {
        Sign::Forward => g.has_arc(a, b),
        Sign::Backward => g.has_arc(b, a),
    }
}

/// A Hamilton cycle realising a pattern: `order[i]` sits at position `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCycle {
    pub order: Vec<usize>,
}

impl PatternCycle {
    pub fn check(&self, g: &Digraph, pattern: &OrientationPattern) -> Result<()> {
        let n = g.n();
        if self.order.len() != n || pattern.len() != n {
            return Err(Error::BadParams("pattern, order and graph sizes differ".into()));
        }
        crate::graph::check_distinct(&self.order, n)?;
        for (i, &s) in pattern.signs().iter().enumerate() {
            let (a, b) = (self.order[i], self.order[(i + 1) % n]);
            if !edge_ok(g, s, a, b) {
                let (u, v) = if s == Sign::Forward { (a, b) } else { (b, a) };
                return Err(Error::ArcMissing(u, v));
            }
        }
        Ok(())
    }
}

fn extend(g: &Digraph, signs: &[Sign], order: &mut Vec<usize>, visited: u64, meter: &mut Meter) -> Result<bool> {
    meter.tick()?;
    let p = order.len();
    let n = g.n();
    if p == n {
        return Ok(true);
    }
    let prev = order[p - 1];
    let mut cand = match signs[p - 1] {
        Sign::Forward => g.out_set(prev),
        Sign::Backward => g.in_set(prev),
    } & g.all()
        & !visited;
    for w in bits(g.all() & !visited) {
        // every unplaced vertex still needs some neighbour
        if g.adjacent_set(w) & (g.all() & !visited | 1 << prev) == 0 {
            return Ok(false);
        }
    }
    if p == n - 1 && signs.len() == n {
        let first = order[0];
        cand &= match signs[n - 1] {
            Sign::Forward => g.in_set(first),
            Sign::Backward => g.out_set(first),
        };
    }
    for v in bits(cand) {
        order.push(v);
        if extend(g, signs, order, visited | 1 << v, meter)? {
            return Ok(true);
        }
        order.pop();
    }
    Ok(false)
}

/// Hamilton cycle with the prescribed orientation pattern. Vertex 0 is
/// tried at every distinct rotation of the pattern.
pub fn oriented_hamilton(g: &Digraph, pattern: &OrientationPattern, budget: Budget) -> Result<Option<PatternCycle>> {
    let n = g.n();
    if pattern.len() != n {
        return Err(Error::InvalidPattern(format!("pattern length {} for {n} vertices", pattern.len())));
    }
    if n < 2 {
        return Ok(None);
    }
    let mut meter = budget.meter();
    let mut seen_rotations = Vec::new();
    for r in 0..n {
        let mut signs = pattern.signs().to_vec();
        signs.rotate_left(r);
        if seen_rotations.contains(&signs) {
            continue;
        }
        let mut order = vec![0];
        if extend(g, &signs, &mut order, 1, &mut meter)? {
            let mut placed = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                placed[(i + r) % n] = v;
            }
            return Ok(Some(PatternCycle { order: placed }));
        }
        seen_rotations.push(signs);
    }
    Ok(None)
}

/// Hamilton path `v_0 .. v_{n-1}` where edge `i` has direction `signs[i]`.
pub fn oriented_hamilton_path(g: &Digraph, signs: &[Sign], budget: Budget) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n == 0 || signs.len() + 1 != n {
        return Err(Error::InvalidPattern(format!("path pattern of length {} for {n} vertices", signs.len())));
    }
    let mut meter = budget.meter();
    for s in 0..n {
        let mut order = vec![s];
        if extend(g, signs, &mut order, 1 << s, &mut meter)? {
            return Ok(Some(order));
        }
    }
    Ok(None)
}
