//! Topological fingerprinting of friendship-network ensembles.
//!
//! The crate covers the whole batch pipeline: edge-list ingestion, per-graph
//! feature extraction, random-forest category similarity, representative
//! graph selection, category embeddings for taxonomy expansion, regional
//! prevalence statistics and synthetic archetype generators.

pub mod embed;
pub mod features;
pub mod forest;
pub mod format;
pub mod graph;
pub mod manifest;
pub mod prevalence;
pub mod seeds;
pub mod similarity;
pub mod synth;

pub use graph::{parse_edge_list, Graph, GraphError, NodePartition};
