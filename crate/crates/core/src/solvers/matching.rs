use crate::graph::bits;

/// Perfect matching of a bipartite graph given by `rows[i]`, the set of
/// right vertices adjacent to left vertex `i`, with `cols` right vertices.
/// Returns `mate[i]` for every left vertex, or `None` if no perfect matching
/// exists. Augmenting paths, left vertices and neighbours in ascending order.
pub fn bipartite_perfect_matching(rows: &[u64], cols: usize) -> Option<Vec<usize>> {
    if rows.len() != cols {
        return None;
    }
    let mut owner = vec![usize::MAX; cols];
    for i in 0..rows.len() {
        let mut seen = 0u64;
        if !augment(rows, i, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut mate = vec![usize::MAX; rows.len()];
    for (c, &l) in owner.iter().enumerate() {
        mate[l] = c;
    }
    Some(mate)
}

fn augment(rows: &[u64], i: usize, owner: &mut [usize], seen: &mut u64) -> bool {
    for c in bits(rows[i] & !*seen) {
        *seen |= 1 << c;
        if owner[c] == usize::MAX || augment(rows, owner[c], owner, seen) {
            owner[c] = i;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_and_rejects() {
        assert_eq!(bipartite_perfect_matching(&[0b11, 0b01], 2), Some(vec![1, 0]));
        assert_eq!(bipartite_perfect_matching(&[0b01, 0b01], 2), None);
        assert_eq!(bipartite_perfect_matching(&[], 0), Some(vec![]));
    }
}
