//! Binary random forests, ROC-AUC and stratified cross-validation.

mod auc;
mod cv;
mod tree;

use rayon::prelude::*;
use thiserror::Error;

use crate::seeds::{derive_seed, rng};

pub use auc::roc_auc;
pub use cv::{cross_validated_auc, stratified_folds, CvOutcome};
pub use tree::{DecisionTree, TreeNode};

use tree::{Grower, TreeSettings};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("dataset has no samples")]
    Empty,
    #[error("training data needs both classes")]
    SingleClass,
    #[error("expected {expected} features, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{samples} samples but {labels} labels")]
    LengthMismatch { samples: usize, labels: usize },
    #[error("class {class} has {size} samples, fewer than {folds} folds")]
    ClassTooSmall {
        class: String,
        size: usize,
        folds: usize,
    },
    #[error("fold count must be >= 2, got {0}")]
    InvalidFolds(usize),
    #[error("invalid forest parameters: {0}")]
    InvalidParams(String),
}

/// Samples with boolean labels; `true` is the positive class.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<Vec<f64>>,
    labels: Vec<bool>,
}

impl Dataset {
    pub fn new(samples: Vec<Vec<f64>>, labels: Vec<bool>) -> Result<Self, ClassifyError> {
        if samples.len() != labels.len() {
            return Err(ClassifyError::LengthMismatch {
                samples: samples.len(),
                labels: labels.len(),
            });
        }
        let Some(first) = samples.first() else {
            return Err(ClassifyError::Empty);
        };
        let d = first.len();
        if let Some(bad) = samples.iter().find(|s| s.len() != d) {
            return Err(ClassifyError::DimensionMismatch {
                expected: d,
                found: bad.len(),
            });
        }
        Ok(Dataset { samples, labels })
    }

    /// Positive rows from `positive`, negative rows from `negative`.
    pub fn from_classes(
        positive: &[Vec<f64>],
        negative: &[Vec<f64>],
    ) -> Result<Self, ClassifyError> {
        let samples: Vec<Vec<f64>> = positive.iter().chain(negative).cloned().collect();
        let labels = std::iter::repeat_n(true, positive.len())
            .chain(std::iter::repeat_n(false, negative.len()))
            .collect();
        Dataset::new(samples, labels)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.samples[0].len()
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForestParams {
    pub n_trees: usize,
    /// `None` grows until leaves are pure or too small.
    pub max_depth: Option<usize>,
    pub min_leaf: usize,
    /// `None` means `ceil(sqrt(n_features))`.
    pub features_per_split: Option<usize>,
    pub seed: u64,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_trees: 100,
            max_depth: None,
            min_leaf: 1,
            features_per_split: None,
            seed: 0,
        }
    }
}

impl ForestParams {
    pub fn features_for(&self, n_features: usize) -> usize {
        self.features_per_split
            .unwrap_or_else(|| (n_features as f64).sqrt().ceil() as usize)
            .clamp(1, n_features.max(1))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Forest {
    trees: Vec<DecisionTree>,
    importances: Vec<f64>,
    n_features: usize,
}

impl Forest {
    /// Assembles a forest from prebuilt trees with uniform importances.
    pub fn from_trees(trees: Vec<DecisionTree>, n_features: usize) -> Self {
        Forest {
            trees,
            importances: vec![1.0 / n_features as f64; n_features],
            n_features,
        }
    }

    pub fn trees(&self) -> &[DecisionTree] {
        &self.trees
    }

    /// Normalized mean impurity decrease per feature; sums to 1.
    pub fn importances(&self) -> &[f64] {
        &self.importances
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    /// Mean positive-class leaf probability over all trees.
    pub fn predict_score(&self, x: &[f64]) -> Result<f64, ClassifyError> {
        if x.len() != self.n_features {
            return Err(ClassifyError::DimensionMismatch {
                expected: self.n_features,
                found: x.len(),
            });
        }
        let total: f64 = self.trees.iter().map(|t| t.predict(x)).sum();
        Ok(total / self.trees.len() as f64)
    }
}

/// Trains `params.n_trees` trees, each on a bootstrap resample, with
/// per-tree seeds derived from `params.seed`.
pub fn train_random_forest(data: &Dataset, params: &ForestParams) -> Result<Forest, ClassifyError> {
    if params.n_trees == 0 {
        return Err(ClassifyError::InvalidParams("n_trees must be >= 1".into()));
    }
    if params.min_leaf == 0 {
        return Err(ClassifyError::InvalidParams("min_leaf must be >= 1".into()));
    }
    let pos = data.labels.iter().filter(|&&l| l).count();
    if pos == 0 || pos == data.len() {
        return Err(ClassifyError::SingleClass);
    }
    let d = data.n_features();
    let settings = TreeSettings {
        max_depth: params.max_depth,
        min_leaf: params.min_leaf,
        features_per_split: params.features_for(d),
    };
    let n = data.len();
    let grown: Vec<(DecisionTree, Vec<f64>)> = (0..params.n_trees)
        .into_par_iter()
        .map(|t| {
            let mut r = rng(derive_seed(params.seed, t as u64));
            let bootstrap: Vec<usize> = (0..n)
                .map(|_| rand::Rng::random_range(&mut r, 0..n))
                .collect();
            Grower::new(&data.samples, &data.labels, &settings, r).grow(bootstrap)
        })
        .collect();

    let mut importances = vec![0.0; d];
    let mut contributing = 0usize;
    let mut trees = Vec::with_capacity(grown.len());
    for (tree, imp) in grown {
        let total: f64 = imp.iter().sum();
        if total > 0.0 {
            contributing += 1;
            for (acc, v) in importances.iter_mut().zip(&imp) {
                *acc += v / total;
            }
        }
        trees.push(tree);
    }
    normalize_importances(&mut importances, contributing);
    Ok(Forest {
        trees,
        importances,
        n_features: d,
    })
}

/// Scales to unit sum; uniform when nothing contributed.
pub(crate) fn normalize_importances(values: &mut [f64], contributing: usize) {
    let total: f64 = values.iter().sum();
    if contributing == 0 || total <= 0.0 {
        let u = 1.0 / values.len() as f64;
        values.iter_mut().for_each(|v| *v = u);
    } else {
        values.iter_mut().for_each(|v| *v /= total);
    }
}
