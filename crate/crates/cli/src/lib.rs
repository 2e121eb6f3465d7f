//! Command-line driver: each subcommand reads its inputs, writes CSV
//! outputs into `--out-dir`, and records a `run_meta.json` with the full
//! configuration, seed and SHA-256 digests of every input and output.

mod commands;
mod error;
mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use error::CliError;
pub use run::META_FILE;

#[derive(Debug, Parser)]
#[command(
    name = "placenet",
    version,
    about = "Topological fingerprints of graph ensembles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Manifest of edge lists -> per-graph feature CSV
    Features(FeaturesArgs),
    /// Feature CSV + manifest labels -> pairwise AUC matrix and importances
    Similarity(SimilarityArgs),
    /// Feature CSV + importances -> one representative graph per category
    Represent(RepresentArgs),
    /// Category corpus -> label embeddings and nearest neighbors
    Embed(EmbedArgs),
    /// Places, regions and external counts -> prevalence tables
    Prevalence(PrevalenceArgs),
    /// Ensemble config -> edge-list files and manifest
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CommonArgs {
    /// Directory receiving all outputs; created if missing
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Master seed; recorded even when the command draws no random numbers
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMode {
    Components,
    Nodes,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Lcc,
    Whole,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FeaturesArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// JSONL manifest of {"id", "path", "category"}
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
    pub k_set: Vec<usize>,
    /// Report decompositions as component counts or node counts
    #[arg(long, value_enum, default_value_t = CountMode::Components)]
    pub count_mode: CountMode,
    /// Graph on which the algebraic connectivity is computed
    #[arg(long, value_enum, default_value_t = Scope::Lcc)]
    pub spectral_scope: Scope,
    #[arg(long, default_value_t = 1e-8)]
    pub spectral_tolerance: f64,
    #[arg(long, default_value_t = 10_000)]
    pub spectral_max_iterations: usize,
    /// Estimate path lengths from sampled sources above this LCC size
    #[arg(long)]
    pub sample_paths_above: Option<usize>,
    #[arg(long, default_value_t = 1_000)]
    pub path_sources: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ForestArgs {
    #[arg(long, default_value_t = 100)]
    pub trees: usize,
    #[arg(long)]
    pub max_depth: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub min_leaf: usize,
    /// Features tried per split; defaults to ceil(sqrt(features))
    #[arg(long)]
    pub features_per_split: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SimilarityArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub features: PathBuf,
    /// Manifest supplying each graph's category
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    #[command(flatten)]
    pub forest: ForestArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankScopeArg {
    Pooled,
    PerCategory,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightingArg {
    Squared,
    Linear,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RepresentArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub features: PathBuf,
    #[arg(long)]
    pub manifest: PathBuf,
    /// Importance CSV written by `similarity`
    #[arg(long)]
    pub importance: PathBuf,
    #[arg(long, value_enum, default_value_t = RankScopeArg::Pooled)]
    pub rank_scope: RankScopeArg,
    #[arg(long, value_enum, default_value_t = WeightingArg::Squared)]
    pub weighting: WeightingArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// JSONL of {"categories": [...]} records
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long, default_value_t = 64)]
    pub dim: usize,
    #[arg(long, default_value_t = 15)]
    pub epochs: usize,
    #[arg(long, default_value_t = 5)]
    pub negatives: usize,
    #[arg(long, default_value_t = 0.025)]
    pub learning_rate: f64,
    #[arg(long, default_value_t = 1)]
    pub min_count: usize,
    /// Neighbors listed per query label
    #[arg(long, default_value_t = 10)]
    pub top_k: usize,
    /// Labels to report neighbors for; all labels when omitted
    #[arg(long)]
    pub query: Vec<String>,
    /// CSV of place_type,seed_label for taxonomy expansion
    #[arg(long)]
    pub taxonomy_seeds: Option<PathBuf>,
    /// Labels eligible for taxonomy expansion, one per line
    #[arg(long, requires = "taxonomy_seeds")]
    pub allowlist: Option<PathBuf>,
    #[arg(long, default_value_t = 300)]
    pub taxonomy_top_k: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PrevalenceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// CSV of page_id,region_id,categories
    #[arg(long)]
    pub places: PathBuf,
    /// CSV of region_id,population,rucc,income,education,foreign_born_share
    #[arg(long)]
    pub regions: PathBuf,
    /// CSV of region_id,category,count to correlate against
    #[arg(long)]
    pub external: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Sectioned key = value ensemble description
    #[arg(long)]
    pub config: PathBuf,
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Features(a) => commands::features::run(a),
        Command::Similarity(a) => commands::similarity::run(a),
        Command::Represent(a) => commands::represent::run(a),
        Command::Embed(a) => commands::embed::run(a),
        Command::Prevalence(a) => commands::prevalence::run(a),
        Command::Generate(a) => commands::generate::run(a),
    }
}
