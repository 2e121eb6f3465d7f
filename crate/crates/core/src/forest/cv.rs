use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::{
    normalize_importances, roc_auc, train_random_forest, ClassifyError, Dataset, ForestParams,
};
use crate::seeds::{derive_seed, rng};

const FOLD_STREAM: u64 = 0x666f_6c64;

/// Fold index for every sample of two classes. Each class is shuffled with
/// its own seed stream and dealt round-robin, so per-class fold sizes differ
/// by at most one.
pub fn stratified_folds(
    n_a: usize,
    n_b: usize,
    folds: usize,
    seed: u64,
) -> (Vec<usize>, Vec<usize>) {
    let assign = |n: usize, stream: u64| {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng(derive_seed(seed, stream)));
        let mut fold = vec![0; n];
        for (pos, &i) in order.iter().enumerate() {
            fold[i] = pos % folds;
        }
        fold
    };
    (assign(n_a, FOLD_STREAM), assign(n_b, FOLD_STREAM + 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvOutcome {
    /// Unweighted mean of per-fold AUCs, class `a` positive.
    pub mean_auc: f64,
    pub fold_aucs: Vec<f64>,
    /// Mean of the per-fold normalized importances; sums to 1.
    pub importance: Vec<f64>,
}

impl CvOutcome {
    /// Orientation-free distance: `max(auc, 1 - auc)`.
    pub fn folded_auc(&self) -> f64 {
        self.mean_auc.max(1.0 - self.mean_auc)
    }
}

/// Stratified k-fold evaluation of a forest separating `a` (positive) from
/// `b`. Fold `f` trains with seed `derive_seed(params.seed, f)`.
pub fn cross_validated_auc(
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    folds: usize,
    params: &ForestParams,
) -> Result<CvOutcome, ClassifyError> {
    if folds < 2 {
        return Err(ClassifyError::InvalidFolds(folds));
    }
    for (class, rows) in [("a", a), ("b", b)] {
        if rows.len() < folds {
            return Err(ClassifyError::ClassTooSmall {
                class: class.to_string(),
                size: rows.len(),
                folds,
            });
        }
    }
    let d = a[0].len();
    if let Some(bad) = a.iter().chain(b).find(|r| r.len() != d) {
        return Err(ClassifyError::DimensionMismatch {
            expected: d,
            found: bad.len(),
        });
    }
    let (fold_a, fold_b) = stratified_folds(a.len(), b.len(), folds, params.seed);

    let results: Vec<Result<(f64, Vec<f64>), ClassifyError>> = (0..folds)
        .into_par_iter()
        .map(|f| {
            let pick = |rows: &[Vec<f64>], fold: &[usize], held: bool| -> Vec<Vec<f64>> {
                rows.iter()
                    .zip(fold)
                    .filter(|(_, &k)| (k == f) == held)
                    .map(|(r, _)| r.clone())
                    .collect()
            };
            let train = Dataset::from_classes(&pick(a, &fold_a, false), &pick(b, &fold_b, false))?;
            let fold_params = ForestParams {
                seed: derive_seed(params.seed, f as u64),
                ..params.clone()
            };
            let forest = train_random_forest(&train, &fold_params)?;
            let test_a = pick(a, &fold_a, true);
            let test_b = pick(b, &fold_b, true);
            let mut scores = Vec::with_capacity(test_a.len() + test_b.len());
            for x in test_a.iter().chain(&test_b) {
                scores.push(forest.predict_score(x)?);
            }
            let labels: Vec<bool> = std::iter::repeat_n(true, test_a.len())
                .chain(std::iter::repeat_n(false, test_b.len()))
                .collect();
            Ok((roc_auc(&scores, &labels)?, forest.importances().to_vec()))
        })
        .collect();

    let mut fold_aucs = Vec::with_capacity(folds);
    let mut importance = vec![0.0; d];
    for r in results {
        let (auc, imp) = r?;
        fold_aucs.push(auc);
        for (acc, v) in importance.iter_mut().zip(imp) {
            *acc += v;
        }
    }
    normalize_importances(&mut importance, folds);
    let mean_auc = fold_aucs.iter().sum::<f64>() / folds as f64;
    Ok(CvOutcome {
        mean_auc,
        fold_aucs,
        importance,
    })
}
