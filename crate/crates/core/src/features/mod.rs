//! Topological fingerprint of a single graph.
//!
//! The default vector has 18 entries: ten scalar measurements followed by
//! k-core and k-brace component counts for `k` in `{2, 4, 8, 16}`.

mod csv_io;
pub mod decompose;
pub mod local;
pub mod modularity;
pub mod paths;
pub mod spectral;

use thiserror::Error;

use crate::graph::Graph;

pub use csv_io::{read_feature_csv, write_feature_csv, FeatureTable};
pub use decompose::{k_brace_components, k_core_components, DecompositionCount};
pub use local::{avg_clustering, degree_assortativity};
pub use modularity::{max_modularity_cnm, modularity};
pub use paths::{avg_path_length_lcc, PathSampling};
pub use spectral::{algebraic_connectivity, SpectralError, SpectralOptions, SpectralScope};

pub const DEFAULT_K_SET: [usize; 4] = [2, 4, 8, 16];

/// Names of the ten scalar measurements, in vector order.
pub const SCALAR_NAMES: [&str; 10] = [
    "n_nodes",
    "n_edges",
    "density",
    "avg_degree",
    "degree_variance",
    "avg_clustering",
    "degree_assortativity",
    "avg_path_length_lcc",
    "algebraic_connectivity",
    "max_modularity",
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FeatureError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("invalid k value {0}; k must be >= 1")]
    InvalidK(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureConfig {
    pub k_set: Vec<usize>,
    pub count_mode: DecompositionCount,
    pub spectral_scope: SpectralScope,
    pub spectral: SpectralOptions,
    pub path_sampling: Option<PathSampling>,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            k_set: DEFAULT_K_SET.to_vec(),
            count_mode: DecompositionCount::Components,
            spectral_scope: SpectralScope::LargestComponent,
            spectral: SpectralOptions::default(),
            path_sampling: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub density: f64,
    pub avg_degree: f64,
    pub degree_variance: f64,
    pub avg_clustering: f64,
    pub degree_assortativity: f64,
    pub avg_path_length_lcc: f64,
    pub algebraic_connectivity: f64,
    pub max_modularity: f64,
    pub k_set: Vec<usize>,
    pub kcore_components: Vec<usize>,
    pub kbrace_components: Vec<usize>,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        SCALAR_NAMES.len() + 2 * self.k_set.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flattened values in canonical order.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut out = vec![
            self.n_nodes as f64,
            self.n_edges as f64,
            self.density,
            self.avg_degree,
            self.degree_variance,
            self.avg_clustering,
            self.degree_assortativity,
            self.avg_path_length_lcc,
            self.algebraic_connectivity,
            self.max_modularity,
        ];
        out.extend(self.kcore_components.iter().map(|&c| c as f64));
        out.extend(self.kbrace_components.iter().map(|&c| c as f64));
        out
    }

    pub fn names(&self) -> Vec<String> {
        feature_names(&self.k_set)
    }
}

/// Column names for a given k set.
pub fn feature_names(k_set: &[usize]) -> Vec<String> {
    let mut names: Vec<String> = SCALAR_NAMES.iter().map(|s| s.to_string()).collect();
    names.extend(k_set.iter().map(|k| format!("kcore_{k}")));
    names.extend(k_set.iter().map(|k| format!("kbrace_{k}")));
    names
}

/// Computes every measurement for `g`. Degenerate graphs map to zeros.
pub fn compute_features(g: &Graph, cfg: &FeatureConfig) -> Result<FeatureVector, FeatureError> {
    if let Some(&k) = cfg.k_set.iter().find(|&&k| k == 0) {
        return Err(FeatureError::InvalidK(k));
    }
    let (avg_degree, degree_variance) = local::degree_moments(g);
    let max_modularity = if g.n_edges() == 0 {
        0.0
    } else {
        max_modularity_cnm(g).0
    };
    Ok(FeatureVector {
        n_nodes: g.n_nodes(),
        n_edges: g.n_edges(),
        density: local::density(g),
        avg_degree,
        degree_variance,
        avg_clustering: avg_clustering(g),
        degree_assortativity: degree_assortativity(g),
        avg_path_length_lcc: avg_path_length_lcc(g, cfg.path_sampling),
        algebraic_connectivity: algebraic_connectivity(g, cfg.spectral_scope, &cfg.spectral)?,
        max_modularity,
        k_set: cfg.k_set.clone(),
        kcore_components: cfg
            .k_set
            .iter()
            .map(|&k| decompose::k_core_count(g, k, cfg.count_mode))
            .collect(),
        kbrace_components: cfg
            .k_set
            .iter()
            .map(|&k| decompose::k_brace_count(g, k, cfg.count_mode))
            .collect(),
    })
}
