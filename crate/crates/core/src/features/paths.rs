use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::Graph;

/// Uniform source sampling for very large components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathSampling {
    /// Sampling only kicks in above this many component nodes.
    pub threshold: usize,
    pub sources: usize,
    pub seed: u64,
}

impl Default for PathSampling {
    fn default() -> Self {
        PathSampling {
            threshold: 20_000,
            sources: 1_000,
            seed: 0,
        }
    }
}

fn distance_sum(g: &Graph, source: usize) -> u64 {
    g.bfs_from(source)
        .into_iter()
        .map(|d| d.unwrap_or(0) as u64)
        .sum()
}

/// Mean shortest-path length over unordered node pairs of the largest
/// component; 0 when that component has fewer than two nodes.
pub fn avg_path_length_lcc(g: &Graph, sampling: Option<PathSampling>) -> f64 {
    let lcc = g.largest_connected_component();
    let n = lcc.n_nodes();
    if n < 2 {
        return 0.0;
    }
    let sources: Vec<usize> = match sampling {
        Some(s) if n > s.threshold && s.sources < n => {
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            let mut picked = sample(&mut rng, n, s.sources.max(1)).into_vec();
            picked.sort_unstable();
            picked
        }
        _ => (0..n).collect(),
    };
    let total: u64 = sources.par_iter().map(|&s| distance_sum(&lcc, s)).sum();
    total as f64 / (sources.len() as f64 * (n - 1) as f64)
}
