pub mod embed;
pub mod features;
pub mod generate;
pub mod prevalence;
pub mod represent;
pub mod similarity;

use std::collections::BTreeMap;
use std::path::Path;

use placenet::features::{read_feature_csv, FeatureTable};
use placenet::manifest::{read_manifest, ManifestEntry};

use crate::error::CliError;
use crate::run::Run;

pub(crate) fn load_manifest(run: &mut Run, path: &Path) -> Result<Vec<ManifestEntry>, CliError> {
    let text = run.read(path)?;
    let entries = read_manifest(&text).map_err(|e| CliError::data(path, e))?;
    if entries.is_empty() {
        return Err(CliError::data(path, "manifest has no entries"));
    }
    Ok(entries)
}

pub(crate) fn load_features(run: &mut Run, path: &Path) -> Result<FeatureTable, CliError> {
    let text = run.read(path)?;
    read_feature_csv(&text).map_err(|e| CliError::data(path, e))
}

/// `(id, category, features)` for every feature row, in file order.
pub(crate) fn label_rows(
    table: &FeatureTable,
    features_path: &Path,
    manifest: &[ManifestEntry],
) -> Result<Vec<(String, String, Vec<f64>)>, CliError> {
    let category: BTreeMap<&str, &str> = manifest
        .iter()
        .map(|e| (e.id.as_str(), e.category.as_str()))
        .collect();
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, (id, values))| {
            let c = category.get(id.as_str()).ok_or_else(|| {
                CliError::data(
                    features_path,
                    format!("line {}: graph {id:?} is not in the manifest", i + 2),
                )
            })?;
            Ok((id.clone(), c.to_string(), values.clone()))
        })
        .collect()
}
