use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, check_distinct, Digraph};
use crate::solvers::Budget;
use crate::verdict::{qi, Verdict, Witness, Q};

use super::expansion::{ceil_times, ScanMode};

/// Largest side the exhaustive regularity scan accepts.
pub const EXACT_PAIR_MAX_SIDE: usize = 14;

/// Regularity verdict together with the exact density `e(A, B) / (|A||B|)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub verdict: Verdict,
    #[serde(with = "crate::verdict::ratio_str")]
    pub density: Q,
}

/// Arcs from `a` to `b` as column masks: bit `i` of `cols[j]` is set iff
/// `a[i] -> b[j]`.
fn column_masks(g: &Digraph, a: &[usize], b: &[usize]) -> Vec<u64> {
    b.iter().map(|&y| a.iter().enumerate().filter(|&(_, &x)| g.has_arc(x, y)).fold(0, |m, (i, _)| m | 1 << i)).collect()
}

fn check_sides(g: &Digraph, a: &[usize], b: &[usize], eps: Q) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::BadParams("both sides of a pair must be non-empty".into()));
    }
    if eps <= qi(0) || eps >= qi(1) {
        return Err(Error::BadParams(format!("eps = {eps} is not in (0, 1)")));
    }
    let both: Vec<usize> = a.iter().chain(b).copied().collect();
    check_distinct(&both, g.n())
}

fn pair_witness(a: &[usize], b: &[usize], x: u64, y: &[usize], e: usize, d: Q) -> Witness {
    let xs = x.count_ones() as usize;
    Witness::SubPair {
        x: bits(x).map(|i| a[i]).collect(),
        y: y.iter().map(|&j| b[j]).collect(),
        density: Q::new(e as i64, (xs * y.len()) as i64),
        pair_density: d,
    }
}

/// For a fixed `X`, the sub-pair `(X, Y)` with `|Y| >= min_y` whose density
/// deviates by at least `eps` from `d`, if any: for each size the extreme
/// edge counts come from the `|Y|` columns of largest or smallest degree.
fn scan_x(cols: &[u64], x: u64, min_y: usize, d: Q, eps: Q) -> Option<(Vec<usize>, usize)> {
    let xs = x.count_ones() as usize;
    let mut order: Vec<(usize, usize)> =
        cols.iter().enumerate().map(|(j, &c)| ((c & x).count_ones() as usize, j)).collect();
    order.sort_by(|p, q| q.0.cmp(&p.0).then(p.1.cmp(&q.1)));
    let nb = cols.len();
    let mut top = 0;
    let mut prefix = Vec::with_capacity(nb + 1);
    prefix.push(0);
    for &(deg, _) in &order {
        top += deg;
        prefix.push(top);
    }
    // larger Y first, so a whole side is reported when it already deviates
    for s in (min_y..=nb).rev() {
        let hi = prefix[s];
        let lo = top - prefix[nb - s];
        let cells = qi(xs * s);
        if qi(hi) >= (d + eps) * cells {
            let mut y: Vec<usize> = order[..s].iter().map(|p| p.1).collect();
            y.sort_unstable();
            return Some((y, hi));
        }
        if qi(lo) <= (d - eps) * cells {
            let mut y: Vec<usize> = order[nb - s..].iter().map(|p| p.1).collect();
            y.sort_unstable();
            return Some((y, lo));
        }
    }
    None
}

/// Whether the arcs from `a` to `b` form an `eps`-regular pair: every
/// `X ⊆ A`, `Y ⊆ B` with `|X| >= eps|A|`, `|Y| >= eps|B|` has
/// `|d(X, Y) - d(A, B)| < eps`. The exact scan visits every `X` (least
/// bitmask first) and settles all `Y` at once from sorted column degrees.
pub fn epsilon_regular_pair(
    g: &Digraph,
    a: &[usize],
    b: &[usize],
    eps: Q,
    mode: ScanMode,
    budget: Budget,
) -> Result<PairReport> {
    check_sides(g, a, b, eps)?;
    let cols = column_masks(g, a, b);
    let edges: usize = cols.iter().map(|c| c.count_ones() as usize).sum();
    let d = Q::new(edges as i64, (a.len() * b.len()) as i64);
    let min_x = ceil_times(eps, a.len()).max(1);
    let min_y = ceil_times(eps, b.len()).max(1);
    let verdict = match mode {
        ScanMode::Exact => {
            let side = a.len().max(b.len());
            if side > EXACT_PAIR_MAX_SIDE {
                return Err(Error::SizeCapExceeded { n: side, cap: EXACT_PAIR_MAX_SIDE });
            }
            let total = 1u64 << a.len();
            if total > budget.0 {
                return Err(Error::BudgetExceeded { budget: budget.0 });
            }
            let w = (1..total)
                .into_par_iter()
                .filter(|x| x.count_ones() as usize >= min_x)
                .find_map_first(|x| scan_x(&cols, x, min_y, d, eps).map(|(y, e)| pair_witness(a, b, x, &y, e, d)));
            Verdict::from_check("epsilon_regular", w)
        }
        ScanMode::Sampled { trials, seed } => {
            let mut rng = seed.rng();
            let mut w = None;
            for _ in 0..trials {
                let xs = rng.gen_range(min_x..=a.len());
                let ys = rng.gen_range(min_y..=b.len());
                let x = sample(&mut rng, a.len(), xs).into_iter().fold(0u64, |m, i| m | 1 << i);
                let mut y: Vec<usize> = sample(&mut rng, b.len(), ys).into_vec();
                y.sort_unstable();
                let e: usize = y.iter().map(|&j| (cols[j] & x).count_ones() as usize).sum();
                let dev = Q::new(e as i64, (xs * ys) as i64) - d;
                if dev >= eps || -dev >= eps {
                    w = Some(pair_witness(a, b, x, &y, e, d));
                    break;
                }
            }
            Verdict::from_check("epsilon_regular_sampled", w)
        }
    };
    Ok(PairReport { verdict, density: d })
}

/// `(eps, d)`-super-regularity: every vertex of `a` has at least `d|B|`
/// outneighbours in `b`, every vertex of `b` at least `d|A|` inneighbours
/// in `a`, and the pair is `eps`-regular.
pub fn super_regular_pair(
    g: &Digraph,
    a: &[usize],
    b: &[usize],
    eps: Q,
    d: Q,
    mode: ScanMode,
    budget: Budget,
) -> Result<PairReport> {
    check_sides(g, a, b, eps)?;
    let need_out = ceil_times(d, b.len());
    let need_in = ceil_times(d, a.len());
    let low = a
        .iter()
        .map(|&x| (x, "out", b.iter().filter(|&&y| g.has_arc(x, y)).count(), need_out, b.len()))
        .chain(b.iter().map(|&y| (y, "in", a.iter().filter(|&&x| g.has_arc(x, y)).count(), need_in, a.len())))
        .find(|&(_, _, deg, need, _)| deg < need);
    let mut report = epsilon_regular_pair(g, a, b, eps, mode, budget)?;
    let rule = if matches!(mode, ScanMode::Exact) { "super_regular" } else { "super_regular_sampled" };
    report.verdict = match low {
        Some((vertex, side, degree, _, other)) => {
            Verdict::fails(rule, Witness::LowDegree { vertex, side: side.into(), degree, required: d * qi(other) })
        }
        None => Verdict { rule: rule.into(), ..report.verdict },
    };
    Ok(report)
}
