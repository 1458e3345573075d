use std::collections::HashSet;

use crate::graph::{bits, mask_of, CycleFactor, Digraph, HamiltonCycle};

use super::factor::one_factor;

/// Rotation-extension heuristic. Starts from a 1-factor, opens its longest
/// cycle into a path and repeatedly
///
/// 1. closes the path when it spans `V` (directly or by a three-arc exchange),
/// 2. extends an endpoint by absorbing a whole cycle of the factor,
/// 3. inserts a whole cycle between two consecutive path vertices,
/// 4. otherwise rotates an endpoint to a position not seen before.
///
/// Gives up after `n^2` moves. `None` does not prove non-Hamiltonicity.
pub fn rotation_extension(g: &Digraph, start: Option<&CycleFactor>) -> Option<HamiltonCycle> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let factor = match start {
        Some(f) if f.check(g).is_ok() => f.clone(),
        Some(_) => return None,
        None => one_factor(g)?,
    };
    let mut others: Vec<Vec<usize>> = factor.cycles().to_vec();
    let longest = (0..others.len()).max_by_key(|&i| (others[i].len(), usize::MAX - i)).unwrap();
    let mut path = others.swap_remove(longest);
    if path.len() == n {
        return Some(HamiltonCycle::new(path));
    }
    let mut seen = HashSet::new();
    for _ in 0..n * n {
        let inside = mask_of(path.iter().copied());
        if path.len() == n {
            if let Some(h) = close(g, &path) {
                return Some(h);
            }
        } else if extend(g, &mut path, &mut others, inside) || insert(g, &mut path, &mut others) {
            continue;
        }
        seen.insert((path[0], *path.last().unwrap()));
        path = rotate(g, &path, &others, &seen)?;
    }
    None
}

fn cycle_index(others: &[Vec<usize>], w: usize) -> (usize, usize) {
    for (ci, c) in others.iter().enumerate() {
        if let Some(p) = c.iter().position(|&x| x == w) {
            return (ci, p);
        }
    }
    unreachable!("vertex {w} is neither on the path nor on a cycle")
}

/// Cycle `c` read starting at position `p`.
fn from_pos(c: &[usize], p: usize) -> impl Iterator<Item = usize> + '_ {
    c[p..].iter().chain(&c[..p]).copied()
}

fn extend(g: &Digraph, path: &mut Vec<usize>, others: &mut Vec<Vec<usize>>, inside: u64) -> bool {
    let outside = g.all() & !inside;
    let end = *path.last().unwrap();
    if let Some(w) = bits(g.out_set(end) & outside).next() {
        let (ci, p) = cycle_index(others, w);
        let c = others.swap_remove(ci);
        path.extend(from_pos(&c, p));
        return true;
    }
    if let Some(w) = bits(g.in_set(path[0]) & outside).next() {
        let (ci, p) = cycle_index(others, w);
        let c = others.swap_remove(ci);
        // the cycle read so that it ends at w
        let mut prefix: Vec<usize> = from_pos(&c, (p + 1) % c.len()).collect();
        prefix.append(path);
        *path = prefix;
        return true;
    }
    false
}

/// Inserts a whole outside cycle between `p_i` and `p_{i+1}`.
fn insert(g: &Digraph, path: &mut Vec<usize>, others: &mut Vec<Vec<usize>>) -> bool {
    for i in 0..path.len() - 1 {
        let (a, b) = (path[i], path[i + 1]);
        for ci in 0..others.len() {
            let c = &others[ci];
            for p in 0..c.len() {
                let pred = c[(p + c.len() - 1) % c.len()];
                if g.has_arc(a, c[p]) && g.has_arc(pred, b) {
                    let c = others.swap_remove(ci);
                    let seg: Vec<usize> = from_pos(&c, p).collect();
                    path.splice(i + 1..i + 1, seg);
                    return true;
                }
            }
        }
    }
    false
}

fn close(g: &Digraph, p: &[usize]) -> Option<HamiltonCycle> {
    let l = p.len() - 1;
    if g.has_arc(p[l], p[0]) {
        return Some(HamiltonCycle::new(p.to_vec()));
    }
    // p_0..p_i, p_{j+1}..p_l, p_{i+1}..p_j
    for i in 0..l {
        if !g.has_arc(p[l], p[i + 1]) {
            continue;
        }
        for j in i + 1..l {
            if g.has_arc(p[i], p[j + 1]) && g.has_arc(p[j], p[0]) {
                let mut order = p[..=i].to_vec();
                order.extend_from_slice(&p[j + 1..]);
                order.extend_from_slice(&p[i + 1..=j]);
                return Some(HamiltonCycle::new(order));
            }
        }
    }
    None
}

/// Candidate rotations; prefers one whose new endpoint can be extended,
/// otherwise the first with an unseen endpoint pair.
fn rotate(g: &Digraph, p: &[usize], others: &[Vec<usize>], seen: &HashSet<(usize, usize)>) -> Option<Vec<usize>> {
    let l = p.len() - 1;
    let outside = g.all() & !mask_of(p.iter().copied());
    let mut fallback = None;
    let consider = |q: Vec<usize>, fallback: &mut Option<Vec<usize>>| -> Option<Vec<usize>> {
        let ends = (q[0], q[l]);
        if seen.contains(&ends) {
            return None;
        }
        let extendable = g.out_set(q[l]) & outside != 0 || g.in_set(q[0]) & outside != 0;
        if extendable || (others.is_empty() && g.has_arc(q[l], q[0])) {
            return Some(q);
        }
        if fallback.is_none() {
            *fallback = Some(q);
        }
        None
    };
    // start rotations: p_i -> p_0 and p_k -> p_{i+1}, k < i
    for i in 1..l {
        if !g.has_arc(p[i], p[0]) {
            continue;
        }
        for k in 0..i {
            if g.has_arc(p[k], p[i + 1]) {
                let mut q = p[k + 1..=i].to_vec();
                q.extend_from_slice(&p[..=k]);
                q.extend_from_slice(&p[i + 1..]);
                if let Some(q) = consider(q, &mut fallback) {
                    return Some(q);
                }
            }
        }
    }
    // end rotations: p_l -> p_j and p_{j-1} -> p_k, j < k
    for j in 1..l {
        if !g.has_arc(p[l], p[j]) {
            continue;
        }
        for k in j + 1..=l {
            if g.has_arc(p[j - 1], p[k]) {
                let mut q = p[..j].to_vec();
                q.extend_from_slice(&p[k..]);
                q.extend_from_slice(&p[j..k]);
                if let Some(q) = consider(q, &mut fallback) {
                    return Some(q);
                }
            }
        }
    }
    fallback
}
