use placenet::embed::{
    expand_taxonomy, nearest_categories, read_allowlist, read_corpus_jsonl, read_taxonomy_seeds,
    train_skipgram, write_model_tsv, write_neighbors_csv, write_taxonomy_csv, EmbedError,
    SkipGramParams,
};
use placenet::format::fmt_real;

use crate::error::CliError;
use crate::run::{csv_table, Run};
use crate::EmbedArgs;

pub fn run(a: &EmbedArgs) -> Result<(), CliError> {
    if a.dim == 0
        || a.epochs == 0
        || a.learning_rate.is_nan()
        || a.learning_rate <= 0.0
        || a.top_k == 0
    {
        return Err(CliError::Usage(
            "--dim, --epochs, --learning-rate and --top-k must be positive".into(),
        ));
    }
    let mut run = Run::new(&a.common.out_dir)?;
    let text = run.read(&a.corpus)?;
    let corpus = read_corpus_jsonl(&text).map_err(|e| CliError::data(&a.corpus, e))?;
    let params = SkipGramParams {
        dim: a.dim,
        epochs: a.epochs,
        negatives: a.negatives,
        learning_rate: a.learning_rate,
        min_count: a.min_count,
        seed: a.common.seed,
    };
    let model = train_skipgram(&corpus, &params).map_err(|e| CliError::data(&a.corpus, e))?;
    if model.epoch_losses.iter().any(|l| !l.is_finite()) {
        return Err(CliError::Numerical("training loss diverged".into()));
    }

    let queries: Vec<String> = if a.query.is_empty() {
        model.labels().to_vec()
    } else {
        a.query.clone()
    };
    let mut neighbors = Vec::with_capacity(queries.len());
    for q in queries {
        let list = nearest_categories(&model, &q, a.top_k).map_err(|e| match e {
            EmbedError::UnknownLabel(_) => CliError::Usage(format!("--query: {e}")),
            other => CliError::Numerical(other.to_string()),
        })?;
        neighbors.push((q, list));
    }

    run.write("model.tsv", write_model_tsv(&model))?;
    run.write(
        "losses.csv",
        csv_table(
            &["epoch", "loss"],
            model
                .epoch_losses
                .iter()
                .enumerate()
                .map(|(i, l)| vec![(i + 1).to_string(), fmt_real(*l)]),
        ),
    )?;
    run.write("neighbors.csv", write_neighbors_csv(&neighbors))?;

    if let Some(seeds_path) = &a.taxonomy_seeds {
        let seeds_text = run.read(seeds_path)?;
        let seeds = read_taxonomy_seeds(&seeds_text).map_err(|e| CliError::data(seeds_path, e))?;
        let allow = match &a.allowlist {
            Some(p) => Some(read_allowlist(&run.read(p)?)),
            None => None,
        };
        let taxonomy = expand_taxonomy(&model, &seeds, a.taxonomy_top_k, allow.as_ref())
            .map_err(|e| CliError::data(seeds_path, e))?;
        run.write("taxonomy.csv", write_taxonomy_csv(&taxonomy))?;
    }
    run.finish("embed", a.common.seed, a)
}
