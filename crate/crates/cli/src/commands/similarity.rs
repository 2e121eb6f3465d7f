use placenet::forest::ForestParams;
use placenet::format::fmt_real;
use placenet::similarity::{
    auc_matrix, write_auc_matrix_csv, write_importance_csv, Ensemble, SimilarityError,
};

use super::{label_rows, load_features, load_manifest};
use crate::error::CliError;
use crate::run::{csv_table, Run};
use crate::{ForestArgs, SimilarityArgs};

pub(crate) fn forest_params(f: &ForestArgs, seed: u64) -> Result<ForestParams, CliError> {
    if f.trees == 0 || f.min_leaf == 0 || f.features_per_split == Some(0) || f.max_depth == Some(0)
    {
        return Err(CliError::Usage(
            "--trees, --min-leaf, --max-depth and --features-per-split must be positive".into(),
        ));
    }
    Ok(ForestParams {
        n_trees: f.trees,
        max_depth: f.max_depth,
        min_leaf: f.min_leaf,
        features_per_split: f.features_per_split,
        seed,
    })
}

pub fn run(a: &SimilarityArgs) -> Result<(), CliError> {
    if a.folds < 2 {
        return Err(CliError::Usage("--folds must be at least 2".into()));
    }
    let params = forest_params(&a.forest, a.common.seed)?;
    let mut run = Run::new(&a.common.out_dir)?;
    let table = load_features(&mut run, &a.features)?;
    let manifest = load_manifest(&mut run, &a.manifest)?;
    let rows = label_rows(&table, &a.features, &manifest)?;
    let ensemble = Ensemble::from_rows(table.names.clone(), rows)
        .map_err(|e| CliError::data(&a.features, e))?;
    let report = auc_matrix(&ensemble, a.folds, &params).map_err(|e| match e {
        SimilarityError::Classifier { .. } => CliError::Numerical(e.to_string()),
        other => CliError::data(&a.features, other),
    })?;

    let pairs = csv_table(
        &["category_a", "category_b", "auc"],
        report
            .pairs
            .iter()
            .map(|(x, y, auc)| vec![x.clone(), y.clone(), fmt_real(*auc)]),
    );
    run.write("auc_matrix.csv", write_auc_matrix_csv(&report.matrix))?;
    run.write("importance.csv", write_importance_csv(&report.importance))?;
    run.write("pairs.csv", pairs)?;
    run.finish("similarity", a.common.seed, a)
}
