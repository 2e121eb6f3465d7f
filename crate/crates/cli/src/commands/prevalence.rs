use placenet::prevalence::{
    bin_medians, fractional_counts, log_pearson, per_capita, read_external_csv, read_places_csv,
    read_regions_csv, write_correlation_csv, write_medians_csv, write_prevalence_csv, BinKey,
};

use crate::error::CliError;
use crate::run::Run;
use crate::PrevalenceArgs;

pub fn run(a: &PrevalenceArgs) -> Result<(), CliError> {
    let mut run = Run::new(&a.common.out_dir)?;
    let places_text = run.read(&a.places)?;
    let places = read_places_csv(&places_text).map_err(|e| CliError::data(&a.places, e))?;
    let regions_text = run.read(&a.regions)?;
    let regions = read_regions_csv(&regions_text).map_err(|e| CliError::data(&a.regions, e))?;
    let counts = fractional_counts(&places).map_err(|e| CliError::data(&a.places, e))?;
    let table = per_capita(&counts, &regions).map_err(|e| CliError::data(&a.places, e))?;

    let medians: Vec<_> = BinKey::ALL
        .into_iter()
        .map(|k| (k, bin_medians(&table, &regions, k)))
        .collect();
    run.write("prevalence.csv", write_prevalence_csv(&table))?;
    run.write("medians.csv", write_medians_csv(&medians))?;

    if let Some(path) = &a.external {
        let text = run.read(path)?;
        let external = read_external_csv(&text).map_err(|e| CliError::data(path, e))?;
        let mut rows = Vec::new();
        for (category, y) in external {
            let x = regions
                .iter()
                .map(|(r, _)| (r.to_string(), counts.weighted_count(r, &category)))
                .collect();
            let c = log_pearson(&x, &y)
                .map_err(|e| CliError::Numerical(format!("category {category:?}: {e}")))?;
            rows.push((category, c));
        }
        run.write("correlation.csv", write_correlation_csv(&rows))?;
    }
    run.finish("prevalence", a.common.seed, a)
}
