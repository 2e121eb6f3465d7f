//! Seeded random graph generators for building labelled test ensembles.

mod config;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use crate::seeds::{keyed_seed, rng};

pub use config::{parse_ensemble_config, CategorySpec, EnsembleConfig};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthError {
    #[error("parameter {name} = {value} is not a probability")]
    Probability { name: &'static str, value: f64 },
}

/// Structural archetype and its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Archetype {
    ErdosRenyi {
        n: usize,
        p: f64,
    },
    CorePeriphery {
        n_core: usize,
        n_periphery: usize,
        p_cc: f64,
        p_cp: f64,
        p_pp: f64,
    },
    DyadTriadScatter {
        n_components: usize,
        dyad_fraction: f64,
    },
    /// Several core-periphery blocks joined by sparse inter-block edges.
    MultiCoreCommunity {
        communities: usize,
        n_core: usize,
        n_periphery: usize,
        p_cc: f64,
        p_cp: f64,
        p_pp: f64,
        p_between: f64,
    },
}

impl Archetype {
    pub fn kind(&self) -> &'static str {
        match self {
            Archetype::ErdosRenyi { .. } => "erdos_renyi",
            Archetype::CorePeriphery { .. } => "core_periphery",
            Archetype::DyadTriadScatter { .. } => "dyad_triad_scatter",
            Archetype::MultiCoreCommunity { .. } => "multi_core_community",
        }
    }

    fn probabilities(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Archetype::ErdosRenyi { p, .. } => vec![("p", p)],
            Archetype::CorePeriphery {
                p_cc, p_cp, p_pp, ..
            } => {
                vec![("p_cc", p_cc), ("p_cp", p_cp), ("p_pp", p_pp)]
            }
            Archetype::DyadTriadScatter { dyad_fraction, .. } => {
                vec![("dyad_fraction", dyad_fraction)]
            }
            Archetype::MultiCoreCommunity {
                p_cc,
                p_cp,
                p_pp,
                p_between,
                ..
            } => vec![
                ("p_cc", p_cc),
                ("p_cp", p_cp),
                ("p_pp", p_pp),
                ("p_between", p_between),
            ],
        }
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        for (name, value) in self.probabilities() {
            if !(0.0..=1.0).contains(&value) {
                return Err(SynthError::Probability { name, value });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArchetypeSpec {
    pub archetype: Archetype,
    pub seed: u64,
}

impl ArchetypeSpec {
    pub fn generate(&self) -> Result<Graph, SynthError> {
        self.archetype.validate()?;
        let seed = self.seed;
        Ok(match self.archetype {
            Archetype::ErdosRenyi { n, p } => gen_er(n, p, seed),
            Archetype::CorePeriphery {
                n_core,
                n_periphery,
                p_cc,
                p_cp,
                p_pp,
            } => gen_core_periphery(n_core, n_periphery, p_cc, p_cp, p_pp, seed),
            Archetype::DyadTriadScatter {
                n_components,
                dyad_fraction,
            } => gen_dyad_triad_scatter(n_components, dyad_fraction, seed),
            Archetype::MultiCoreCommunity {
                communities,
                n_core,
                n_periphery,
                p_cc,
                p_cp,
                p_pp,
                p_between,
            } => gen_multi_core_community(
                communities,
                n_core,
                n_periphery,
                [p_cc, p_cp, p_pp],
                p_between,
                seed,
            ),
        })
    }
}

fn coin(r: &mut ChaCha8Rng, p: f64) -> bool {
    r.random::<f64>() < p
}

/// Samples every pair `i < j` once, in order, with probability `prob(i, j)`.
fn sample_pairs(names: Vec<String>, seed: u64, prob: impl Fn(usize, usize) -> f64) -> Graph {
    let mut r = rng(seed);
    let n = names.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if coin(&mut r, prob(i, j)) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_index_edges(names, &edges)
}

/// G(n, p) on nodes `v0..v{n-1}`.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Graph {
    let names = (0..n).map(|i| format!("v{i}")).collect();
    sample_pairs(names, seed, |_, _| p)
}

/// Two-block model. Core nodes are `c0..`, periphery nodes `p0..`. With no
/// core nodes the draw sequence matches [`gen_er`] on the periphery.
pub fn gen_core_periphery(
    n_core: usize,
    n_periphery: usize,
    p_cc: f64,
    p_cp: f64,
    p_pp: f64,
    seed: u64,
) -> Graph {
    let names = (0..n_core)
        .map(|i| format!("c{i}"))
        .chain((0..n_periphery).map(|i| format!("p{i}")))
        .collect();
    sample_pairs(names, seed, |i, j| match (i < n_core, j < n_core) {
        (true, true) => p_cc,
        (false, false) => p_pp,
        _ => p_cp,
    })
}

/// Disjoint dyads and triangles; component `k` has nodes `s{k}_0..`.
pub fn gen_dyad_triad_scatter(n_components: usize, dyad_fraction: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for k in 0..n_components {
        let a = format!("s{k}_0");
        let b = format!("s{k}_1");
        if coin(&mut r, dyad_fraction) {
            edges.push((a, b));
        } else {
            let c = format!("s{k}_2");
            edges.push((a.clone(), b.clone()));
            edges.push((b, c.clone()));
            edges.push((a, c));
        }
    }
    Graph::from_edges(edges)
}

/// `communities` core-periphery blocks. Nodes are `m{b}c{i}` and `m{b}p{i}`.
pub fn gen_multi_core_community(
    communities: usize,
    n_core: usize,
    n_periphery: usize,
    [p_cc, p_cp, p_pp]: [f64; 3],
    p_between: f64,
    seed: u64,
) -> Graph {
    let size = n_core + n_periphery;
    let names = (0..communities)
        .flat_map(|b| {
            (0..n_core)
                .map(move |i| format!("m{b}c{i}"))
                .chain((0..n_periphery).map(move |i| format!("m{b}p{i}")))
        })
        .collect();
    sample_pairs(names, seed, |i, j| {
        if i / size != j / size {
            return p_between;
        }
        match (i % size < n_core, j % size < n_core) {
            (true, true) => p_cc,
            (false, false) => p_pp,
            _ => p_cp,
        }
    })
}

/// A generated ensemble member.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedGraph {
    pub id: String,
    pub category: String,
    pub graph: Graph,
}

/// Generates every category's graphs. Graph `i` of category `c` is named
/// `{c}_{i:04}` and seeded by `keyed_seed(master_seed, c, i)`, so the output
/// does not depend on thread scheduling or on other categories.
pub fn generate_ensemble(
    config: &EnsembleConfig,
    master_seed: u64,
) -> Result<Vec<GeneratedGraph>, SynthError> {
    let jobs: Vec<(&CategorySpec, usize)> = config
        .categories
        .iter()
        .flat_map(|c| (0..c.count).map(move |i| (c, i)))
        .collect();
    jobs.into_par_iter()
        .map(|(c, i)| {
            let spec = ArchetypeSpec {
                archetype: c.archetype.clone(),
                seed: keyed_seed(master_seed, &c.name, i as u64),
            };
            Ok(GeneratedGraph {
                id: format!("{}_{i:04}", c.name),
                category: c.name.clone(),
                graph: spec.generate()?,
            })
        })
        .collect()
}
