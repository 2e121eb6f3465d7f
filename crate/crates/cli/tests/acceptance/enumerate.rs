//! Every connected graph on up to seven nodes, one per isomorphism class.
//!
//! Level `n` extends each level `n - 1` class by a new node joined to a
//! non-empty subset of the old ones. Every connected graph has a node
//! whose removal leaves it connected, so this reaches every class; the
//! canonical form removes duplicates.

use std::collections::BTreeSet;

use super::brute::Bits;

fn pair_bit(n: usize, a: usize, b: usize) -> u32 {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    // row-major index of (i, j) in the strict upper triangle
    let idx = i * n - i * (i + 1) / 2 + (j - i - 1);
    1 << idx
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Smallest upper-triangle bitmask over node orders that list nodes by
/// nondecreasing degree. Isomorphic graphs share the same set of images.
fn canonical(g: &Bits) -> u32 {
    let n = g.n();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| g.deg(v));
    let mut orders: Vec<Vec<usize>> = vec![Vec::new()];
    for block in by_degree.chunk_by(|&a, &b| g.deg(a) == g.deg(b)) {
        let perms = permutations(block);
        orders = orders
            .iter()
            .flat_map(|o| perms.iter().map(move |p| [o.as_slice(), p].concat()))
            .collect();
    }
    let edges = g.edges();
    let mut position = vec![0usize; n];
    let mut best = u32::MAX;
    for order in orders {
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let mask = edges.iter().fold(0u32, |acc, &(u, v)| {
            acc | pair_bit(n, position[u], position[v])
        });
        best = best.min(mask);
    }
    best
}

fn from_mask(n: usize, mask: u32) -> Bits {
    let mut adj = vec![0u32; n];
    for i in 0..n {
        for j in i + 1..n {
            if mask & pair_bit(n, i, j) != 0 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    Bits { adj }
}

/// `levels[n - 1]` holds the connected classes on `n` nodes.
pub fn connected_graphs(max_n: usize) -> Vec<Vec<Bits>> {
    let mut levels = vec![vec![Bits { adj: vec![0] }]];
    for n in 2..=max_n {
        let mut seen = BTreeSet::new();
        let mut level = Vec::new();
        for base in &levels[n - 2] {
            for subset in 1u32..(1 << (n - 1)) {
                let mut adj = base.adj.clone();
                adj.push(subset);
                for (v, a) in adj.iter_mut().enumerate().take(n - 1) {
                    if subset >> v & 1 == 1 {
                        *a |= 1 << (n - 1);
                    }
                }
                let g = Bits { adj };
                let c = canonical(&g);
                if seen.insert(c) {
                    level.push(from_mask(n, c));
                }
            }
        }
        levels.push(level);
    }
    levels
}
