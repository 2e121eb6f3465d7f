//! Degree moments, clustering and assortativity.

use crate::graph::Graph;

/// Population mean and variance of the degree sequence; `(0, 0)` when empty.
pub fn degree_moments(g: &Graph) -> (f64, f64) {
    let n = g.n_nodes();
    if n == 0 {
        return (0.0, 0.0);
    }
    let degrees = g.degrees();
    let mean = (2 * g.n_edges()) as f64 / n as f64;
    let var = degrees
        .iter()
        .map(|&d| {
            let dev = d as f64 - mean;
            dev * dev
        })
        .sum::<f64>()
        / n as f64;
    (mean, var)
}

/// `2m / (n (n - 1))`, zero below two nodes.
pub fn density(g: &Graph) -> f64 {
    let n = g.n_nodes();
    if n < 2 {
        return 0.0;
    }
    (2 * g.n_edges()) as f64 / (n as f64 * (n - 1) as f64)
}

/// Triangles through each node.
pub fn triangles_per_node(g: &Graph) -> Vec<usize> {
    let n = g.n_nodes();
    let mut mark = vec![false; n];
    let mut out = vec![0usize; n];
    for (u, slot) in out.iter_mut().enumerate() {
        let ns = g.neighbors(u);
        for &v in ns {
            mark[v] = true;
        }
        let mut twice = 0;
        for &v in ns {
            twice += g.neighbors(v).iter().filter(|&&w| mark[w]).count();
        }
        for &v in ns {
            mark[v] = false;
        }
        *slot = twice / 2;
    }
    out
}

/// Mean local clustering coefficient over all nodes. Nodes of degree below
/// two count as zero.
pub fn avg_clustering(g: &Graph) -> f64 {
    let n = g.n_nodes();
    if n == 0 {
        return 0.0;
    }
    let tri = triangles_per_node(g);
    let total: f64 = (0..n)
        .map(|u| {
            let d = g.degree(u);
            if d < 2 {
                0.0
            } else {
                tri[u] as f64 / (d * (d - 1) / 2) as f64
            }
        })
        .sum();
    total / n as f64
}

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge. Returns 0 without edges or when the degree marginal is constant.
pub fn degree_assortativity(g: &Graph) -> f64 {
    let m = g.n_edges();
    if m == 0 {
        return 0.0;
    }
    // both orientations make the two marginals identical
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut sum_prod = 0.0;
    for (u, v) in g.edges() {
        let (du, dv) = (g.degree(u) as f64, g.degree(v) as f64);
        sum += du + dv;
        sum_sq += du * du + dv * dv;
        sum_prod += 2.0 * du * dv;
    }
    let pairs = (2 * m) as f64;
    let mean = sum / pairs;
    let var = sum_sq / pairs - mean * mean;
    if var <= 1e-12 * sum_sq / pairs {
        return 0.0;
    }
    let cov = sum_prod / pairs - mean * mean;
    (cov / var).clamp(-1.0, 1.0)
}
