//! Hypothesis checkers for sufficient conditions for Hamiltonicity.
//!
//! A checker evaluates the premise of a theorem or conjecture, never its
//! conclusion: a Hamiltonian graph can fail every rule here. All fractional
//! thresholds are compared exactly through [`Q`]. On failure the verdict
//! carries the first violation in canonical (lowest-index) order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    bits, dominated_pairs, full_mask, independence_numbers, unreachable_pair, vertex_connectivity, Digraph, GraphClass,
};
use crate::verdict::{q, qi, ClauseFailure, Term, Verdict, Witness, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ConditionRule {
    /// Strongly connected and `delta+ + delta- >= n`.
    GhouilaHouri,
    /// Strongly connected, `n >= 2`, `d+(x) + d-(y) >= n` whenever `x -> y` is missing.
    Woodall,
    /// Strongly connected, `n >= 2`, `d(x) + d(y) >= 2n - 1` for non-adjacent pairs.
    Meyniel,
    /// As Meyniel, restricted to dominated non-adjacent pairs.
    Bgl,
    /// Oriented; `d+(x) + d-(y) >= (3/4 + alpha) n` whenever `x -> y` is missing.
    OreOriented { alpha: Q },
    /// Oriented; `delta + delta+ + delta- > (3n - 3)/2`.
    HaggkvistStar,
    /// Oriented; `delta0 >= (3n - 4)/8`.
    OrientedSemidegree,
    /// `delta0 >= n/2`.
    DigraphSemidegree,
    /// `delta0 >= ceil((n + k)/2) - 1`.
    KOrderedSemidegree { k: usize },
    /// Tournament; `delta0 >= n/4 + eps n`.
    PowerTournament { eps: Q },
    /// Oriented; `delta0 >= floor(n/k) + 1` with `k` the least integer above
    /// 2 not dividing `ell`.
    ShortCycle { ell: usize },
}

impl ConditionRule {
    pub fn name(&self) -> &'static str {
        match self {
            ConditionRule::GhouilaHouri => "ghouila_houri",
            ConditionRule::Woodall => "woodall",
            ConditionRule::Meyniel => "meyniel",
            ConditionRule::Bgl => "bgl",
            ConditionRule::OreOriented { .. } => "ore_oriented",
            ConditionRule::HaggkvistStar => "haggkvist_star",
            ConditionRule::OrientedSemidegree => "oriented_semidegree",
            ConditionRule::DigraphSemidegree => "digraph_semidegree",
            ConditionRule::KOrderedSemidegree { .. } => "kordered_semidegree",
            ConditionRule::PowerTournament { .. } => "power_tournament",
            ConditionRule::ShortCycle { .. } => "short_cycle",
        }
    }

    fn required_class(&self) -> Option<GraphClass> {
        match self {
            ConditionRule::OreOriented { .. }
            | ConditionRule::HaggkvistStar
            | ConditionRule::OrientedSemidegree
            | ConditionRule::ShortCycle { .. } => Some(GraphClass::Oriented),
            ConditionRule::PowerTournament { .. } => Some(GraphClass::Tournament),
            _ => None,
        }
    }

    fn validate_params(&self) -> Result<()> {
        let unit = |x: Q, what: &str| {
            if x < q(0, 1) || x > q(1, 1) {
                Err(Error::BadParams(format!("{what} must lie in [0,1], got {x}")))
            } else {
                Ok(())
            }
        };
        match *self {
            ConditionRule::OreOriented { alpha } => unit(alpha, "alpha"),
            ConditionRule::PowerTournament { eps } => unit(eps, "eps"),
            ConditionRule::ShortCycle { ell } if ell < 4 => {
                Err(Error::BadParams(format!("cycle length must be at least 4, got {ell}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ConditionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Least integer `k > 2` not dividing `ell`.
pub fn short_cycle_modulus(ell: usize) -> usize {
    (3..).find(|k| ell % k != 0).unwrap()
}

fn class_gate(g: &Digraph, class: GraphClass) -> Result<()> {
    if class.admits(g) {
        Ok(())
    } else {
        Err(Error::ClassMismatch { expected: class.to_string(), found: GraphClass::classify(g).to_string() })
    }
}

fn strong_gate(g: &Digraph) -> Option<Witness> {
    if g.n() == 0 {
        return Some(Witness::TooFewVertices { n: 0, needed: 1 });
    }
    unreachable_pair(g).map(|(from, to)| Witness::NotStronglyConnected { from, to })
}

fn min_semidegree_witness(g: &Digraph, threshold: Q) -> Option<Witness> {
    let s = g.semidegrees();
    (qi(s.min()) < threshold).then(|| Witness::Semidegree {
        vertex: if s.min_out <= s.min_in { s.min_out_vertex } else { s.min_in_vertex },
        value: s.min(),
        threshold,
        strict: false,
    })
}

/// First ordered pair `x != y` without arc `x -> y` whose `d+(x) + d-(y)`
/// falls below `threshold`.
fn ore_pair_witness(g: &Digraph, threshold: Q) -> Option<Witness> {
    let n = g.n();
    for x in 0..n {
        for y in 0..n {
            if x != y && !g.has_arc(x, y) {
                let value = g.out_degree(x) + g.in_degree(y);
                if qi(value) < threshold {
                    return Some(Witness::Pair { x, y, value, threshold });
                }
            }
        }
    }
    None
}

fn total_degree_pair_witness(g: &Digraph, dominated_only: bool) -> Option<Witness> {
    let n = g.n();
    let threshold = qi(2 * n - 1);
    let nonadjacent = |x: usize, y: usize| g.adjacent_set(x) >> y & 1 == 0;
    let check = |x: usize, y: usize| {
        let value = g.degree(x) + g.degree(y);
        (qi(value) < threshold).then_some(Witness::Pair { x, y, value, threshold })
    };
    if dominated_only {
        dominated_pairs(g).into_iter().filter(|&(x, y)| nonadjacent(x, y)).find_map(|(x, y)| check(x, y))
    } else {
        (0..n)
            .flat_map(|x| bits(!g.adjacent_set(x) & g.all() & !full_mask(x + 1)).map(move |y| (x, y)))
            .find_map(|(x, y)| check(x, y))
    }
}

/// Evaluates the premise of `rule` on `g`.
pub fn check_degree_condition(g: &Digraph, rule: ConditionRule) -> Result<Verdict> {
    rule.validate_params()?;
    if let Some(class) = rule.required_class() {
        class_gate(g, class)?;
    }
    let n = g.n();
    let nq = qi(n);
    let witness = match rule {
        ConditionRule::GhouilaHouri => strong_gate(g).or_else(|| {
            let s = g.semidegrees();
            let value = s.min_out + s.min_in;
            (value < n).then_some(Witness::SemidegreeSum {
                out_vertex: s.min_out_vertex,
                in_vertex: s.min_in_vertex,
                value,
                threshold: nq,
            })
        }),
        ConditionRule::Woodall => two_vertices(n).or_else(|| strong_gate(g)).or_else(|| ore_pair_witness(g, nq)),
        ConditionRule::Meyniel => {
            two_vertices(n).or_else(|| strong_gate(g)).or_else(|| total_degree_pair_witness(g, false))
        }
        ConditionRule::Bgl => two_vertices(n).or_else(|| strong_gate(g)).or_else(|| total_degree_pair_witness(g, true)),
        ConditionRule::OreOriented { alpha } => ore_pair_witness(g, (q(3, 4) + alpha) * nq),
        ConditionRule::HaggkvistStar => {
            let s = g.semidegrees();
            let (dv, d) = (0..n).map(|v| (v, g.degree(v))).min_by_key(|&(v, d)| (d, v)).unwrap_or((0, 0));
            let value = d + s.min_out + s.min_in;
            let threshold = q(3 * n as i64 - 3, 2);
            (qi(value) <= threshold).then_some(Witness::DeltaStar {
                min_degree_vertex: dv,
                min_out_vertex: s.min_out_vertex,
                min_in_vertex: s.min_in_vertex,
                value,
                threshold,
            })
        }
        ConditionRule::OrientedSemidegree => min_semidegree_witness(g, q(3 * n as i64 - 4, 8)),
        ConditionRule::DigraphSemidegree => min_semidegree_witness(g, q(n as i64, 2)),
        ConditionRule::KOrderedSemidegree { k } => min_semidegree_witness(g, qi((n + k).div_ceil(2)) - 1),
        ConditionRule::PowerTournament { eps } => min_semidegree_witness(g, nq / 4 + eps * nq),
        ConditionRule::ShortCycle { ell } => min_semidegree_witness(g, qi(n / short_cycle_modulus(ell) + 1)),
    };
    Ok(Verdict::from_check(rule.name(), witness))
}

fn two_vertices(n: usize) -> Option<Witness> {
    (n < 2).then_some(Witness::TooFewVertices { n, needed: 2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum SequenceRule {
    /// Strongly connected, `n >= 3`; for all `i < n/2`:
    /// (i) `d+_i >= i+1` or `d-_{n-i} >= n-i`; (ii) `d-_i >= i+1` or `d+_{n-i} >= n-i`.
    NashWilliams,
    /// `n >= 3`; `d+_i, d-_i >= i+1` for `i < (n-1)/2`, and for odd `n`
    /// `d+_c, d-_c >= c` with `c = ceil(n/2)`.
    PosaDigraph,
    /// For all `i < n/2`: (i) `d+_i >= min(i + beta n, n/2)` or
    /// `d-_{n-i-beta n} >= n-i`; (ii) symmetrically.
    Ckko { beta: Q },
}

impl SequenceRule {
    pub fn name(&self) -> &'static str {
        match self {
            SequenceRule::NashWilliams => "nash_williams",
            SequenceRule::PosaDigraph => "posa_digraph",
            SequenceRule::Ckko { .. } => "ckko",
        }
    }
}

struct Seqs {
    out_seq: Vec<usize>,
    in_seq: Vec<usize>,
}

impl Seqs {
    fn seq(&self, which: &str) -> &[usize] {
        if which == "out" {
            &self.out_seq
        } else {
            &self.in_seq
        }
    }

    /// The term `d^which_index >= bound`; `None` when it holds.
    fn failing_term(&self, which: &str, index: i64, bound: Q) -> Option<Term> {
        let seq = self.seq(which);
        let value = (index >= 1 && index as usize <= seq.len()).then(|| seq[index as usize - 1]);
        match value {
            Some(v) if qi(v) >= bound => None,
            _ => Some(Term { sequence: which.to_string(), index, value, bound }),
        }
    }

    /// A disjunction of terms; `Some` with all terms when every term fails.
    fn clause(&self, name: &str, terms: &[(&str, i64, Q)]) -> Option<ClauseFailure> {
        let mut failed = Vec::new();
        for &(which, index, bound) in terms {
            failed.push(self.failing_term(which, index, bound)?);
        }
        Some(ClauseFailure { clause: name.to_string(), terms: failed })
    }
}

/// Evaluates a degree-sequence condition. The witness reports the least
/// failing index and every failed clause at that index.
pub fn check_sequence_condition(g: &Digraph, rule: SequenceRule) -> Result<Verdict> {
    let n = g.n();
    let ds = g.degree_sequences();
    let seqs = Seqs { out_seq: ds.out_seq, in_seq: ds.in_seq };
    let ni = n as i64;
    let nq = qi(n);
    let witness = match rule {
        SequenceRule::NashWilliams => {
            if n < 3 {
                Some(Witness::TooFewVertices { n, needed: 3 })
            } else {
                strong_gate(g).or_else(|| {
                    first_failure(n, |i| {
                        let ii = i as i64;
                        [
                            seqs.clause("i", &[("out", ii, qi(i + 1)), ("in", ni - ii, qi(n - i))]),
                            seqs.clause("ii", &[("in", ii, qi(i + 1)), ("out", ni - ii, qi(n - i))]),
                        ]
                    })
                })
            }
        }
        SequenceRule::PosaDigraph => {
            if n < 3 {
                Some(Witness::TooFewVertices { n, needed: 3 })
            } else {
                let mut found = None;
                // i < (n-1)/2  <=>  2i < n-1
                for i in (1..).take_while(|&i| 2 * i < n - 1) {
                    let ii = i as i64;
                    let failures: Vec<_> =
                        [seqs.clause("out", &[("out", ii, qi(i + 1))]), seqs.clause("in", &[("in", ii, qi(i + 1))])]
                            .into_iter()
                            .flatten()
                            .collect();
                    if !failures.is_empty() {
                        found = Some(Witness::SequenceIndex { index: i, failures });
                        break;
                    }
                }
                if found.is_none() && n % 2 == 1 {
                    let c = n.div_ceil(2);
                    let failures: Vec<_> = [
                        seqs.clause("odd_out", &[("out", c as i64, qi(c))]),
                        seqs.clause("odd_in", &[("in", c as i64, qi(c))]),
                    ]
                    .into_iter()
                    .flatten()
                    .collect();
                    if !failures.is_empty() {
                        found = Some(Witness::SequenceIndex { index: c, failures });
                    }
                }
                found
            }
        }
        SequenceRule::Ckko { beta } => {
            if beta <= q(0, 1) || beta >= q(1, 1) {
                return Err(Error::BadParams(format!("beta must lie in (0,1), got {beta}")));
            }
            first_failure(n, |i| {
                let ii = i as i64;
                let low = (qi(i) + beta * nq).min(nq / 2);
                let j = (qi(n - i) - beta * nq).floor().to_integer();
                [
                    seqs.clause("i", &[("out", ii, low), ("in", j, qi(n - i))]),
                    seqs.clause("ii", &[("in", ii, low), ("out", j, qi(n - i))]),
                ]
            })
        }
    };
    Ok(Verdict::from_check(rule.name(), witness))
}

/// Scans `1 <= i` with `2i < n` and returns the first index with a failed clause.
fn first_failure<F>(n: usize, mut clauses: F) -> Option<Witness>
where
    F: FnMut(usize) -> [Option<ClauseFailure>; 2],
{
    (1..).take_while(|&i| 2 * i < n).find_map(|i| {
        let failures: Vec<_> = clauses(i).into_iter().flatten().collect();
        (!failures.is_empty()).then_some(Witness::SequenceIndex { index: i, failures })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectivityRule {
    /// `kappa >= 2^alpha2 (alpha2 + 2)!`.
    JacksonFactorial,
    /// `kappa >= alpha2 + 1`.
    JacksonOrdaz,
}

impl ConnectivityRule {
    pub fn name(&self) -> &'static str {
        match self {
            ConnectivityRule::JacksonFactorial => "jackson_factorial",
            ConnectivityRule::JacksonOrdaz => "jackson_ordaz",
        }
    }

    /// Required connectivity for a given `alpha2`, saturating at `u128::MAX`.
    pub fn threshold(&self, alpha2: usize) -> u128 {
        match self {
            ConnectivityRule::JacksonOrdaz => alpha2 as u128 + 1,
            ConnectivityRule::JacksonFactorial => {
                let mut t: u128 = 1u128.checked_shl(alpha2 as u32).unwrap_or(u128::MAX);
                for f in 2..=(alpha2 as u128 + 2) {
                    t = t.saturating_mul(f);
                }
                t
            }
        }
    }
}

/// Compares exact `kappa(G)` with a function of exact `alpha_2(G)`;
/// `alpha_cap` bounds the vertex count of the independence search.
pub fn check_connectivity_condition(g: &Digraph, rule: ConnectivityRule, alpha_cap: usize) -> Result<Verdict> {
    if g.n() < 2 {
        return Err(Error::BadParams("connectivity needs at least two vertices".into()));
    }
    let ind = independence_numbers(g, alpha_cap)?;
    let conn = vertex_connectivity(g);
    let threshold = rule.threshold(ind.alpha2);
    let witness = ((conn.kappa as u128) < threshold).then(|| Witness::Connectivity {
        kappa: conn.kappa,
        alpha2: ind.alpha2,
        threshold,
        separator: conn.separator.clone(),
        independent_set: ind.alpha2_set.clone(),
    });
    Ok(Verdict::from_check(rule.name(), witness))
}
