use placenet::manifest::{write_manifest, ManifestEntry};
use placenet::synth::{generate_ensemble, parse_ensemble_config};

use crate::error::CliError;
use crate::run::{file_stem, Run};
use crate::GenerateArgs;

pub fn run(a: &GenerateArgs) -> Result<(), CliError> {
    let mut run = Run::new(&a.common.out_dir)?;
    let text = run.read(&a.config)?;
    let config = parse_ensemble_config(&text).map_err(|e| CliError::data(&a.config, e))?;
    let graphs =
        generate_ensemble(&config, a.common.seed).map_err(|e| CliError::data(&a.config, e))?;
    let mut entries = Vec::with_capacity(graphs.len());
    for g in graphs {
        let rel = format!("graphs/{}.edges", file_stem(&g.id));
        run.write(&rel, g.graph.to_edge_list())?;
        entries.push(ManifestEntry {
            id: g.id,
            path: rel,
            category: g.category,
        });
    }
    run.write("manifest.jsonl", write_manifest(&entries))?;
    run.finish("generate", a.common.seed, a)
}
