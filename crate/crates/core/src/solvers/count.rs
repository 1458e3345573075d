use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Digraph};

/// Largest `n` counted by default; the path table has `2^n * n` entries.
pub const DEFAULT_COUNT_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    /// Directed Hamilton paths (ordered vertex sequences).
    pub hamilton_paths: u64,
    /// Directed Hamilton cycles, each counted once as an arc set.
    pub hamilton_cycles: u64,
}

impl CountReport {
    /// `n! / 2^(n-1)`: expected Hamilton paths of a random tournament.
    pub fn f(&self) -> Ratio<i128> {
        let n = self.n as i128;
        if n == 0 {
            return Ratio::from_integer(0);
        }
        Ratio::new(factorial(n), 1i128 << (n - 1))
    }

    /// `(n-1)! / 2^n`: expected Hamilton cycles of a random tournament.
    pub fn g(&self) -> Ratio<i128> {
        let n = self.n as i128;
        if n == 0 {
            return Ratio::from_integer(0);
        }
        Ratio::new(factorial(n - 1), 1i128 << n)
    }
}

fn factorial(n: i128) -> i128 {
    (2..=n).product()
}

pub fn count_hamilton(g: &Digraph) -> Result<CountReport> {
    count_hamilton_with_cap(g, DEFAULT_COUNT_CAP)
}

/// Subset dynamic programme over `(visited set, endpoint)`. Cycles are
/// counted from paths anchored at vertex 0 closed by an arc back to 0.
pub fn count_hamilton_with_cap(g: &Digraph, cap: usize) -> Result<CountReport> {
    let n = g.n();
    if n > cap {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    if n == 0 {
        return Ok(CountReport { n, hamilton_paths: 0, hamilton_cycles: 0 });
    }
    let size = 1usize << n;
    let mut dp = vec![0u64; size * n];
    for v in 0..n {
        dp[(1 << v) * n + v] = 1;
    }
    let paths = run_dp(g, &mut dp, n)?;

    // Anchored at 0: only masks containing vertex 0 are reachable.
    dp.iter_mut().for_each(|x| *x = 0);
    dp[n] = 1;
    run_dp(g, &mut dp, n)?;
    let full = size - 1;
    let mut cycles: u64 = 0;
    if n >= 2 {
        for end in bits(g.in_set(0)) {
            cycles = cycles.checked_add(dp[full * n + end]).ok_or(Error::CountOverflow)?;
        }
    }
    Ok(CountReport { n, hamilton_paths: paths, hamilton_cycles: cycles })
}

/// Extends every table entry forward; returns the total over full masks.
fn run_dp(g: &Digraph, dp: &mut [u64], n: usize) -> Result<u64> {
    let size = 1usize << n;
    for mask in 1..size {
        for end in bits(mask as u64) {
            let c = dp[mask * n + end];
            if c == 0 {
                continue;
            }
            for next in bits(g.out_set(end) & !(mask as u64)) {
                let slot = &mut dp[(mask | 1 << next) * n + next];
                *slot = slot.checked_add(c).ok_or(Error::CountOverflow)?;
            }
        }
    }
    let full = size - 1;
    dp[full * n..].iter().try_fold(0u64, |acc, &x| acc.checked_add(x).ok_or(Error::CountOverflow))
}
