//! Category-label embeddings learned from label co-occurrence on pages, and
//! nearest-neighbor retrieval for taxonomy expansion.
//!
//! Each corpus record is an unordered set of up to three labels; training
//! treats the whole record as one context window (skip-gram with negative
//! sampling over every ordered pair of distinct labels in the record).

mod io;
mod skipgram;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::format::FormatError;

pub use io::{
    read_allowlist, read_corpus_jsonl, read_model_tsv, read_taxonomy_seeds, write_model_tsv,
    write_neighbors_csv, write_taxonomy_csv,
};
pub use skipgram::{train_skipgram, SkipGramParams};

/// Maximum labels a page may carry.
pub const MAX_LABELS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbedError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("no label reaches min_count {0}")]
    EmptyVocabulary(usize),
    #[error("record {record}: {message}")]
    InvalidRecord { record: usize, message: String },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Format(#[from] FormatError),
}

/// Label sets, one per page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryCorpus {
    records: Vec<Vec<String>>,
}

impl CategoryCorpus {
    /// Validates and deduplicates each record (order within a record is kept
    /// as first seen).
    pub fn new(records: Vec<Vec<String>>) -> Result<Self, EmbedError> {
        let mut out = Vec::with_capacity(records.len());
        for (i, rec) in records.into_iter().enumerate() {
            let mut seen = BTreeSet::new();
            let mut labels = Vec::new();
            for l in rec {
                if l.trim().is_empty() {
                    return Err(EmbedError::InvalidRecord {
                        record: i + 1,
                        message: "empty label".into(),
                    });
                }
                if seen.insert(l.clone()) {
                    labels.push(l);
                }
            }
            if labels.is_empty() || labels.len() > MAX_LABELS {
                return Err(EmbedError::InvalidRecord {
                    record: i + 1,
                    message: format!("expected 1 to {MAX_LABELS} labels, found {}", labels.len()),
                });
            }
            out.push(labels);
        }
        Ok(CategoryCorpus { records: out })
    }

    pub fn records(&self) -> &[Vec<String>] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Occurrence count per label.
    pub fn label_counts(&self) -> BTreeMap<&str, usize> {
        let mut counts = BTreeMap::new();
        for r in &self.records {
            for l in r {
                *counts.entry(l.as_str()).or_insert(0) += 1;
            }
        }
        counts
    }
}

/// Label vectors of a common dimension, vocabulary in sorted label order.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    vectors: Vec<Vec<f64>>,
    /// Mean negative-sampling loss per epoch; empty for loaded models.
    pub epoch_losses: Vec<f64>,
}

impl EmbeddingModel {
    pub fn new(labels: Vec<String>, vectors: Vec<Vec<f64>>) -> Result<Self, EmbedError> {
        if labels.len() != vectors.len() {
            return Err(EmbedError::InvalidParams(
                "label and vector counts differ".into(),
            ));
        }
        let dim = vectors.first().map_or(0, Vec::len);
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(EmbedError::InvalidParams(
                "vectors differ in dimension".into(),
            ));
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(EmbedError::InvalidParams(format!("duplicate label {l:?}")));
            }
        }
        Ok(EmbeddingModel {
            labels,
            index,
            vectors,
            epoch_losses: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn vector(&self, label: &str) -> Option<&[f64]> {
        self.index.get(label).map(|&i| self.vectors[i].as_slice())
    }

    pub fn cosine(&self, a: &str, b: &str) -> Result<f64, EmbedError> {
        let va = self
            .vector(a)
            .ok_or_else(|| EmbedError::UnknownLabel(a.to_string()))?;
        let vb = self
            .vector(b)
            .ok_or_else(|| EmbedError::UnknownLabel(b.to_string()))?;
        Ok(cosine(va, vb))
    }
}

/// Cosine similarity clamped to `[-1, 1]`; zero vectors give 0.
pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot / (na * nb)).clamp(-1.0, 1.0)
}

/// The `top_k` labels most cosine-similar to `seed`, excluding `seed`.
/// Ties are ordered by label.
pub fn nearest_categories(
    model: &EmbeddingModel,
    seed: &str,
    top_k: usize,
) -> Result<Vec<(String, f64)>, EmbedError> {
    let query = model
        .vector(seed)
        .ok_or_else(|| EmbedError::UnknownLabel(seed.to_string()))?;
    let mut scored: Vec<(String, f64)> = model
        .labels
        .iter()
        .zip(&model.vectors)
        .filter(|(l, _)| l.as_str() != seed)
        .map(|(l, v)| (l.clone(), cosine(query, v)))
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    scored.truncate(top_k);
    Ok(scored)
}

/// Neighbors of each seed label kept only if they appear in `allowlist`
/// (all kept when `None`). The seed itself leads each list.
pub fn expand_taxonomy(
    model: &EmbeddingModel,
    seeds: &[(String, String)],
    top_k: usize,
    allowlist: Option<&BTreeSet<String>>,
) -> Result<Vec<(String, Vec<String>)>, EmbedError> {
    seeds
        .iter()
        .map(|(place_type, seed)| {
            let mut labels = vec![seed.clone()];
            for (label, _) in nearest_categories(model, seed, top_k)? {
                if allowlist.is_none_or(|a| a.contains(&label)) {
                    labels.push(label);
                }
            }
            Ok((place_type.clone(), labels))
        })
        .collect()
}
