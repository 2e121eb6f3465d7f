use std::collections::BTreeMap;

use placenet::similarity::{
    read_importance_csv, representative_graph, Ensemble, RankScope, RepresentOptions, Weighting,
};

use super::{label_rows, load_features, load_manifest};
use crate::error::CliError;
use crate::run::{csv_table, file_stem, resolve, Run};
use crate::{RankScopeArg, RepresentArgs, WeightingArg};

pub fn run(a: &RepresentArgs) -> Result<(), CliError> {
    let mut run = Run::new(&a.common.out_dir)?;
    let table = load_features(&mut run, &a.features)?;
    let manifest = load_manifest(&mut run, &a.manifest)?;
    let importance_text = run.read(&a.importance)?;
    let importance =
        read_importance_csv(&importance_text).map_err(|e| CliError::data(&a.importance, e))?;
    if importance.names != table.names {
        return Err(CliError::data(
            &a.importance,
            "feature names differ from the feature CSV columns",
        ));
    }
    let rows = label_rows(&table, &a.features, &manifest)?;
    let ensemble = Ensemble::from_rows(table.names.clone(), rows)
        .map_err(|e| CliError::data(&a.features, e))?;
    let opts = RepresentOptions {
        scope: match a.rank_scope {
            RankScopeArg::Pooled => RankScope::Pooled,
            RankScopeArg::PerCategory => RankScope::PerCategory,
        },
        weighting: match a.weighting {
            WeightingArg::Squared => Weighting::Squared,
            WeightingArg::Linear => Weighting::Linear,
        },
    };

    let paths: BTreeMap<&str, &str> = manifest
        .iter()
        .map(|e| (e.id.as_str(), e.path.as_str()))
        .collect();
    let mut out_rows = Vec::new();
    for category in ensemble.category_names() {
        let id = representative_graph(&ensemble, &category, &importance, opts)
            .map_err(|e| CliError::data(&a.features, e))?;
        let source = resolve(&a.manifest, paths[id.as_str()]);
        let bytes = run.read_bytes(&source)?;
        let copy = format!("representatives/{}.edges", file_stem(&id));
        run.write(&copy, bytes)?;
        out_rows.push(vec![category, id, copy]);
    }
    run.write(
        "representatives.csv",
        csv_table(&["category", "graph_id", "edge_list"], out_rows),
    )?;
    run.finish("represent", a.common.seed, a)
}
