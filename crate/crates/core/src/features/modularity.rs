//! Greedy agglomerative modularity maximization (Clauset, Newman and Moore).
//!
//! Gains are compared as exact integers: for communities `i`, `j` joined by
//! `c` edges with degree sums `di`, `dj`, merging changes `Q` by
//! `(2m c - di dj) / (2 m^2)`, so the numerator alone orders candidates.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use crate::graph::{Graph, NodePartition};

/// Modularity of `partition` on `g`. Zero for an edgeless graph.
pub fn modularity(g: &Graph, partition: &NodePartition) -> f64 {
    let m = g.n_edges() as i128;
    if m == 0 {
        return 0.0;
    }
    let k = partition.n_communities();
    let mut internal = vec![0i128; k];
    let mut degree = vec![0i128; k];
    for v in 0..g.n_nodes() {
        degree[partition.community_of(v)] += g.degree(v) as i128;
    }
    for (u, v) in g.edges() {
        if partition.community_of(u) == partition.community_of(v) {
            internal[partition.community_of(u)] += 1;
        }
    }
    q_from_counts(m, internal.into_iter().zip(degree))
}

/// `sum_c (4 m l_c - d_c^2) / (4 m^2)` with a single final rounding.
fn q_from_counts(m: i128, communities: impl Iterator<Item = (i128, i128)>) -> f64 {
    let num: i128 = communities.map(|(l, d)| 4 * m * l - d * d).sum();
    num as f64 / (4 * m * m) as f64
}

/// Runs greedy merging from singletons while some merge strictly increases
/// modularity. Ties pick the lexicographically smallest community pair.
/// Returns the final modularity and partition; an edgeless graph gives
/// `(0, singletons)`.
pub fn max_modularity_cnm(g: &Graph) -> (f64, NodePartition) {
    let n = g.n_nodes();
    let m = g.n_edges() as i128;
    if m == 0 {
        return (0.0, NodePartition::singletons(n));
    }

    // links[i][j] = edges between communities i and j (i != j)
    let mut links: Vec<BTreeMap<usize, i128>> = (0..n)
        .map(|u| g.neighbors(u).iter().map(|&v| (v, 1)).collect())
        .collect();
    let mut internal = vec![0i128; n];
    let mut degree: Vec<i128> = (0..n).map(|u| g.degree(u) as i128).collect();
    let mut version = vec![0u64; n];
    let mut alive = vec![true; n];
    let mut label: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|u| vec![u]).collect();

    let gain = |c: i128, di: i128, dj: i128| 2 * m * c - di * dj;

    let mut heap = BinaryHeap::new();
    for (u, v) in g.edges() {
        heap.push((
            gain(1, degree[u], degree[v]),
            Reverse(u),
            Reverse(v),
            0u64,
            0u64,
        ));
    }

    while let Some((delta, Reverse(i), Reverse(j), vi, vj)) = heap.pop() {
        if !alive[i] || !alive[j] || version[i] != vi || version[j] != vj {
            continue;
        }
        if delta <= 0 {
            break;
        }
        // merge j into i (i < j)
        let absorbed = std::mem::take(&mut links[j]);
        let between = links[i].remove(&j).unwrap_or(0);
        internal[i] += internal[j] + between;
        degree[i] += degree[j];
        alive[j] = false;
        for (k, c) in absorbed {
            if k == i {
                continue;
            }
            links[k].remove(&j);
            *links[k].entry(i).or_insert(0) += c;
            *links[i].entry(k).or_insert(0) += c;
        }
        let moved = std::mem::take(&mut members[j]);
        for &v in &moved {
            label[v] = i;
        }
        members[i].extend(moved);
        version[i] += 1;
        for (&k, &c) in &links[i] {
            let (a, b) = if i < k { (i, k) } else { (k, i) };
            heap.push((
                gain(c, degree[i], degree[k]),
                Reverse(a),
                Reverse(b),
                version[a],
                version[b],
            ));
        }
    }

    let q = q_from_counts(
        m,
        (0..n)
            .filter(|&c| alive[c])
            .map(|c| (internal[c], degree[c])),
    );
    (q, NodePartition::from_labels(&label))
}
