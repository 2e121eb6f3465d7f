//! Category distinguishability: pairwise cross-validated AUC, feature
//! importance ranking and representative-graph selection.

mod csv_io;
mod represent;

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::forest::{cross_validated_auc, ClassifyError, ForestParams};
use crate::seeds::derive_seed;

pub use csv_io::{
    read_auc_matrix_csv, read_importance_csv, write_auc_matrix_csv, write_importance_csv,
};
pub use represent::{average_ranks, representative_graph, RankScope, RepresentOptions, Weighting};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimilarityError {
    #[error("need at least 2 categories, found {0}")]
    TooFewCategories(usize),
    #[error("category {category:?} has {size} graphs, fewer than {folds} folds")]
    UndersizedCategory {
        category: String,
        size: usize,
        folds: usize,
    },
    #[error("unknown category {0:?}")]
    UnknownCategory(String),
    #[error("category {0:?} is empty")]
    EmptyCategory(String),
    #[error("graph id {0:?} appears more than once")]
    DuplicateGraph(String),
    #[error("graph {id:?} has {found} features, expected {expected}")]
    FeatureLength {
        id: String,
        expected: usize,
        found: usize,
    },
    #[error("importance vector has {found} entries, expected {expected}")]
    ImportanceLength { expected: usize, found: usize },
    #[error("pair ({a}, {b}): {source}")]
    Classifier {
        a: String,
        b: String,
        #[source]
        source: ClassifyError,
    },
}

/// One graph's feature row.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub id: String,
    pub features: Vec<f64>,
}

/// Labeled feature rows, grouped by category (ordered by name).
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    feature_names: Vec<String>,
    categories: BTreeMap<String, Vec<Member>>,
}

impl Ensemble {
    pub fn new(
        feature_names: Vec<String>,
        categories: BTreeMap<String, Vec<Member>>,
    ) -> Result<Self, SimilarityError> {
        let d = feature_names.len();
        let mut seen = HashSet::new();
        for members in categories.values() {
            for m in members {
                if !seen.insert(m.id.as_str()) {
                    return Err(SimilarityError::DuplicateGraph(m.id.clone()));
                }
                if m.features.len() != d {
                    return Err(SimilarityError::FeatureLength {
                        id: m.id.clone(),
                        expected: d,
                        found: m.features.len(),
                    });
                }
            }
        }
        Ok(Ensemble {
            feature_names,
            categories,
        })
    }

    /// Groups `(id, category, features)` rows.
    pub fn from_rows<I>(feature_names: Vec<String>, rows: I) -> Result<Self, SimilarityError>
    where
        I: IntoIterator<Item = (String, String, Vec<f64>)>,
    {
        let mut categories: BTreeMap<String, Vec<Member>> = BTreeMap::new();
        for (id, category, features) in rows {
            categories
                .entry(category)
                .or_default()
                .push(Member { id, features });
        }
        Ensemble::new(feature_names, categories)
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn category_names(&self) -> Vec<String> {
        self.categories.keys().cloned().collect()
    }

    pub fn members(&self, category: &str) -> Option<&[Member]> {
        self.categories.get(category).map(Vec::as_slice)
    }

    pub fn categories(&self) -> impl Iterator<Item = (&str, &[Member])> {
        self.categories
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_slice()))
    }
}

/// Symmetric category-by-category matrix of folded AUCs with 0.5 on the
/// diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct AucMatrix {
    pub categories: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl AucMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.categories.iter().position(|c| c == a)?;
        let j = self.categories.iter().position(|c| c == b)?;
        Some(self.values[i][j])
    }
}

/// Mean feature importance over every classifier run.
#[derive(Debug, Clone, PartialEq)]
pub struct ImportanceVector {
    pub names: Vec<String>,
    pub values: Vec<f64>,
}

/// Result of [`auc_matrix`], including the raw (unfolded) pair means.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityReport {
    pub matrix: AucMatrix,
    pub importance: ImportanceVector,
    /// `(a, b, mean AUC with a positive)` for each evaluated pair, `a < b`.
    pub pairs: Vec<(String, String, f64)>,
}

/// Cross-validates a classifier for every unordered category pair.
/// Pair `p` (in row-major upper-triangle order) uses seed
/// `derive_seed(params.seed, p)`.
pub fn auc_matrix(
    ensemble: &Ensemble,
    folds: usize,
    params: &ForestParams,
) -> Result<SimilarityReport, SimilarityError> {
    let names = ensemble.category_names();
    let k = names.len();
    if k < 2 {
        return Err(SimilarityError::TooFewCategories(k));
    }
    for (name, members) in ensemble.categories() {
        if members.len() < folds {
            return Err(SimilarityError::UndersizedCategory {
                category: name.to_string(),
                size: members.len(),
                folds,
            });
        }
    }
    let rows: Vec<Vec<Vec<f64>>> = names
        .iter()
        .map(|n| {
            ensemble.categories[n]
                .iter()
                .map(|m| m.features.clone())
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();

    let outcomes: Vec<_> = pairs
        .par_iter()
        .enumerate()
        .map(|(p, &(i, j))| {
            let pair_params = ForestParams {
                seed: derive_seed(params.seed, p as u64),
                ..params.clone()
            };
            cross_validated_auc(&rows[i], &rows[j], folds, &pair_params).map_err(|source| {
                SimilarityError::Classifier {
                    a: names[i].clone(),
                    b: names[j].clone(),
                    source,
                }
            })
        })
        .collect();

    let d = ensemble.feature_names.len();
    let mut values = vec![vec![0.5; k]; k];
    let mut importance = vec![0.0; d];
    let mut raw = Vec::with_capacity(pairs.len());
    for (&(i, j), outcome) in pairs.iter().zip(outcomes) {
        let outcome = outcome?;
        let folded = outcome.folded_auc();
        values[i][j] = folded;
        values[j][i] = folded;
        for (acc, v) in importance.iter_mut().zip(&outcome.importance) {
            *acc += v;
        }
        raw.push((names[i].clone(), names[j].clone(), outcome.mean_auc));
    }
    crate::forest::normalize_importances(&mut importance, pairs.len());
    Ok(SimilarityReport {
        matrix: AucMatrix {
            categories: names,
            values,
        },
        importance: ImportanceVector {
            names: ensemble.feature_names.clone(),
            values: importance,
        },
        pairs: raw,
    })
}

/// Features ordered by descending importance, ties in canonical order.
/// Ranks start at 1.
pub fn global_importance_ranking(iv: &ImportanceVector) -> Vec<(String, usize)> {
    let mut order: Vec<usize> = (0..iv.values.len()).collect();
    order.sort_by(|&a, &b| iv.values[b].total_cmp(&iv.values[a]).then(a.cmp(&b)));
    order
        .into_iter()
        .enumerate()
        .map(|(r, f)| (iv.names[f].clone(), r + 1))
        .collect()
}
