use crate::error::{Error, Result};
use crate::graph::HamiltonCycle;

use super::{Decomposition, EdgeMode};

/// Walecki's decomposition of `K_n`, `n` odd: vertex `n-1` is the hub and
/// the zigzag path `0, 1, m-1, 2, m-2, ..` on `m = n-1` rim vertices is
/// rotated by `0 .. m/2`.
pub fn walecki(n: usize) -> Result<Decomposition> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::BadParams(format!("Walecki needs odd n >= 3, got {n}")));
    }
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices { n });
    }
    let m = n - 1;
    let hub = n - 1;
    let zigzag: Vec<usize> = (0..m)
        .map(|k| {
            if k == 0 {
                0
            } else if k % 2 == 1 {
                k.div_ceil(2)
            } else {
                m - k / 2
            }
        })
        .collect();
    let cycles = (0..m / 2)
        .map(|r| {
            let mut order = vec![hub];
            order.extend(zigzag.iter().map(|&z| (z + r) % m));
            HamiltonCycle::new(order)
        })
        .collect();
    Ok(Decomposition { mode: EdgeMode::Edges, cycles })
}
