use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, mask_of, Digraph};
use crate::rng::Seed;
use crate::solvers::Budget;
use crate::verdict::{ceil_q, q, qi, Verdict, Witness, Q};

/// Largest order the exhaustive expansion scan accepts.
pub const EXACT_EXPANSION_MAX_N: usize = 20;
/// Subset draws in sampled mode unless told otherwise.
pub const DEFAULT_SAMPLES: u64 = 10_000;

/// How a subset-quantified property is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ScanMode {
    /// Every qualifying subset.
    Exact,
    /// Random subsets; a pass only means no violation was drawn.
    Sampled { trials: u64, seed: Seed },
}

/// Parameters of the expansion and regularity checks. All fractions lie in
/// `(0, 1)` and `nu <= tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpanderParams {
    #[serde(with = "crate::verdict::ratio_str")]
    pub nu: Q,
    #[serde(with = "crate::verdict::ratio_str")]
    pub tau: Q,
    #[serde(with = "crate::verdict::ratio_str")]
    pub eps: Q,
    #[serde(with = "crate::verdict::ratio_str")]
    pub d: Q,
    #[serde(with = "crate::verdict::ratio_str")]
    pub eta: Q,
}

impl Default for ExpanderParams {
    fn default() -> Self {
        ExpanderParams { nu: q(1, 20), tau: q(1, 5), eps: q(1, 10), d: q(1, 4), eta: q(3, 10) }
    }
}

impl ExpanderParams {
    pub fn validate(&self) -> Result<()> {
        for (name, x) in [("nu", self.nu), ("tau", self.tau), ("eps", self.eps), ("d", self.d), ("eta", self.eta)] {
            if x <= qi(0) || x >= qi(1) {
                return Err(Error::BadParams(format!("{name} = {x} is not in (0, 1)")));
            }
        }
        if self.nu > self.tau {
            return Err(Error::BadParams(format!("nu = {} exceeds tau = {}", self.nu, self.tau)));
        }
        Ok(())
    }
}

/// `ceil(x * n)` for a fraction `x >= 0`.
pub(crate) fn ceil_times(x: Q, n: usize) -> usize {
    ceil_q(x * qi(n)).max(0) as usize
}

/// Vertices with at least `ceil(nu * n)` in-neighbours in `s`.
pub fn robust_out_nbhd(g: &Digraph, s: u64, nu: Q) -> u64 {
    let t = ceil_times(nu, g.n()) as u32;
    let s = s & g.all();
    bits(g.all()).filter(|&x| (g.in_set(x) & s).count_ones() >= t).fold(0, |m, x| m | 1 << x)
}

fn expansion_witness(g: &Digraph, s: u64, nu: Q, need: usize) -> Option<Witness> {
    let size = s.count_ones() as usize;
    let rn = robust_out_nbhd(g, s, nu).count_ones() as usize;
    (rn < size + need).then(|| Witness::Subset {
        set: bits(s).collect(),
        robust_size: rn,
        required: qi(size) + nu * qi(g.n()),
    })
}

/// Whether `|RN(S)| >= |S| + nu n` for every `S` with `tau n < |S| < (1 - tau) n`.
/// The exact scan reports the qualifying violator with the least bitmask.
pub fn is_robust_outexpander(g: &Digraph, nu: Q, tau: Q, mode: ScanMode, budget: Budget) -> Result<Verdict> {
    if nu < qi(0) || tau < qi(0) || tau > qi(1) {
        return Err(Error::BadParams("nu and tau must be fractions".into()));
    }
    let n = g.n();
    let need = ceil_times(nu, n);
    let qualifies = |size: usize| tau * qi(n) < qi(size) && qi(size) < (qi(1) - tau) * qi(n);
    match mode {
        ScanMode::Exact => {
            if n > EXACT_EXPANSION_MAX_N {
                return Err(Error::SizeCapExceeded { n, cap: EXACT_EXPANSION_MAX_N });
            }
            let total = 1u64 << n;
            if total > budget.0 {
                return Err(Error::BudgetExceeded { budget: budget.0 });
            }
            let w = (0..total)
                .into_par_iter()
                .filter(|&s| qualifies(s.count_ones() as usize))
                .find_map_first(|s| expansion_witness(g, s, nu, need));
            Ok(Verdict::from_check("robust_outexpander", w))
        }
        ScanMode::Sampled { trials, seed } => {
            let sizes: Vec<usize> = (1..n).filter(|&s| qualifies(s)).collect();
            let mut rng = seed.rng();
            let mut w = None;
            if !sizes.is_empty() {
                for _ in 0..trials {
                    let size = sizes[rng.gen_range(0..sizes.len())];
                    let s = mask_of(sample(&mut rng, n, size));
                    w = expansion_witness(g, s, nu, need);
                    if w.is_some() {
                        break;
                    }
                }
            }
            Ok(Verdict::from_check("robust_outexpander_sampled", w))
        }
    }
}
