//! k-core and k-brace peeling.

use std::collections::VecDeque;

use crate::graph::Graph;

/// Node mask of the maximal subgraph where every node has degree >= k.
pub fn k_core_nodes(g: &Graph, k: usize) -> Vec<bool> {
    let n = g.n_nodes();
    let mut degree = g.degrees();
    let mut alive = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] < k).collect();
    for &v in &queue {
        alive[v] = false;
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if alive[v] {
                degree[v] -= 1;
                if degree[v] < k {
                    alive[v] = false;
                    queue.push_back(v);
                }
            }
        }
    }
    alive
}

/// Edge mask (aligned with [`Graph::edges`] order) of the maximal subgraph in
/// which every edge closes at least `k` triangles.
pub fn k_brace_edges(g: &Graph, k: usize) -> Vec<bool> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    // edge id for each adjacency slot
    let mut slot_id: Vec<Vec<usize>> = (0..g.n_nodes()).map(|u| vec![0; g.degree(u)]).collect();
    for (id, &(u, v)) in edges.iter().enumerate() {
        let iu = g.neighbors(u).binary_search(&v).expect("symmetric");
        let iv = g.neighbors(v).binary_search(&u).expect("symmetric");
        slot_id[u][iu] = id;
        slot_id[v][iv] = id;
    }
    let edge_id = |a: usize, b: usize| -> Option<usize> {
        g.neighbors(a).binary_search(&b).ok().map(|i| slot_id[a][i])
    };

    let mut support: Vec<usize> = edges
        .iter()
        .map(|&(u, v)| common_count(g.neighbors(u), g.neighbors(v)))
        .collect();
    let mut alive = vec![true; edges.len()];
    let mut queued = vec![false; edges.len()];
    let mut queue = VecDeque::new();
    for (id, &s) in support.iter().enumerate() {
        if s < k {
            queued[id] = true;
            queue.push_back(id);
        }
    }
    while let Some(id) = queue.pop_front() {
        alive[id] = false;
        let (u, v) = edges[id];
        for (slot, &w) in g.neighbors(u).iter().enumerate() {
            let uw = slot_id[u][slot];
            if !alive[uw] {
                continue;
            }
            let Some(vw) = edge_id(v, w) else { continue };
            if !alive[vw] {
                continue;
            }
            for e in [uw, vw] {
                support[e] -= 1;
                if support[e] < k && !queued[e] {
                    queued[e] = true;
                    queue.push_back(e);
                }
            }
        }
    }
    alive
}

fn common_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Connected components of the subgraph made of `edge_mask` edges plus the
/// nodes in `node_mask`.
fn count_components(g: &Graph, node_mask: &[bool], edge_mask: Option<&[bool]>) -> usize {
    let n = g.n_nodes();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (id, (u, v)) in g.edges().enumerate() {
        let keep = match edge_mask {
            Some(mask) => mask[id],
            None => node_mask[u] && node_mask[v],
        };
        if keep {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n)
        .filter(|&v| node_mask[v] && find(&mut parent, v) == v)
        .count()
}

/// How k-core / k-brace results are summarized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecompositionCount {
    #[default]
    Components,
    Nodes,
}

pub fn k_core_count(g: &Graph, k: usize, mode: DecompositionCount) -> usize {
    let mask = k_core_nodes(g, k);
    match mode {
        DecompositionCount::Nodes => mask.iter().filter(|&&b| b).count(),
        DecompositionCount::Components => count_components(g, &mask, None),
    }
}

pub fn k_brace_count(g: &Graph, k: usize, mode: DecompositionCount) -> usize {
    let edges = k_brace_edges(g, k);
    let mut touched = vec![false; g.n_nodes()];
    for (id, (u, v)) in g.edges().enumerate() {
        if edges[id] {
            touched[u] = true;
            touched[v] = true;
        }
    }
    match mode {
        DecompositionCount::Nodes => touched.iter().filter(|&&b| b).count(),
        DecompositionCount::Components => count_components(g, &touched, Some(&edges)),
    }
}

/// Connected components of the maximal k-core; 0 when it is empty.
pub fn k_core_components(g: &Graph, k: usize) -> usize {
    k_core_count(g, k, DecompositionCount::Components)
}

/// Connected components of the k-brace after dropping isolated nodes.
pub fn k_brace_components(g: &Graph, k: usize) -> usize {
    k_brace_count(g, k, DecompositionCount::Components)
}
