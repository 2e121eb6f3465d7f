use placenet::features::{
    compute_features, feature_names, write_feature_csv, DecompositionCount, FeatureConfig,
    FeatureError, PathSampling, SpectralOptions, SpectralScope,
};
use placenet::parse_edge_list;
use rayon::prelude::*;

use super::load_manifest;
use crate::error::CliError;
use crate::run::{resolve, Run};
use crate::{CountMode, FeaturesArgs, Scope};

fn config(a: &FeaturesArgs) -> Result<FeatureConfig, CliError> {
    if a.k_set.is_empty() || a.k_set.contains(&0) {
        return Err(CliError::Usage("--k-set needs positive integers".into()));
    }
    if a.spectral_tolerance.is_nan() || a.spectral_tolerance <= 0.0 {
        return Err(CliError::Usage(
            "--spectral-tolerance must be positive".into(),
        ));
    }
    Ok(FeatureConfig {
        k_set: a.k_set.clone(),
        count_mode: match a.count_mode {
            CountMode::Components => DecompositionCount::Components,
            CountMode::Nodes => DecompositionCount::Nodes,
        },
        spectral_scope: match a.spectral_scope {
            Scope::Lcc => SpectralScope::LargestComponent,
            Scope::Whole => SpectralScope::WholeGraph,
        },
        spectral: SpectralOptions {
            tolerance: a.spectral_tolerance,
            max_iterations: a.spectral_max_iterations,
            ..SpectralOptions::default()
        },
        path_sampling: a.sample_paths_above.map(|threshold| PathSampling {
            threshold,
            sources: a.path_sources,
            seed: a.common.seed,
        }),
    })
}

pub fn run(a: &FeaturesArgs) -> Result<(), CliError> {
    let cfg = config(a)?;
    let mut run = Run::new(&a.common.out_dir)?;
    let entries = load_manifest(&mut run, &a.manifest)?;
    let mut graphs = Vec::with_capacity(entries.len());
    for e in &entries {
        let path = resolve(&a.manifest, &e.path);
        let text = run.read(&path)?;
        let g = parse_edge_list(&text).map_err(|err| CliError::data(&path, err))?;
        graphs.push(g);
    }
    let vectors: Vec<_> = graphs
        .par_iter()
        .map(|g| compute_features(g, &cfg))
        .collect();
    let mut rows = Vec::with_capacity(entries.len());
    for (e, fv) in entries.iter().zip(vectors) {
        let fv = fv.map_err(|err| match err {
            FeatureError::InvalidK(_) => CliError::Usage(err.to_string()),
            FeatureError::Spectral(_) => CliError::Numerical(format!("graph {:?}: {err}", e.id)),
        })?;
        rows.push((e.id.as_str(), fv));
    }
    let names = feature_names(&cfg.k_set);
    let csv = write_feature_csv(&names, rows.iter().map(|(id, fv)| (*id, fv)));
    run.write("features.csv", csv)?;
    run.finish("features", a.common.seed, a)
}
