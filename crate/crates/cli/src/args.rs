use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "bitchrom",
    version,
    about = "Bit-packed binary chromosomes: GA runs, capacity tables, benchmarks, schema formulas"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the generational GA on OneMax and report the best individual.
    Run(RunArgs),
    /// Print the maximum-length / utilization tables for every layout.
    Tables(TablesArgs),
    /// Packed-vs-naive memory report and differential check.
    Bench(BenchArgs),
    /// Evaluate schema order, defining length and the expectation formula.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionKind {
    Tournament,
    Roulette,
}

/// Every GA parameter is optional here so that flags, the config file and
/// the built-in defaults can be layered.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunParams {
    /// Chromosome length L.
    #[arg(long)]
    pub length: Option<usize>,
    /// Population size N (even).
    #[arg(long)]
    pub pop: Option<usize>,
    /// Crossover probability.
    #[arg(long)]
    pub pc: Option<f64>,
    /// Per-allele mutation probability (default 1/L).
    #[arg(long)]
    pub pm: Option<f64>,
    /// Maximum number of generations.
    #[arg(long)]
    pub gens: Option<u64>,
    /// Random seed (default: $BITCHROM_SEED, else 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Element width in bits: 8, 16, 32 or 64.
    #[arg(long)]
    pub width: Option<u32>,
    /// Use signed elements (sign bit left unused).
    #[arg(long, default_missing_value = "true", num_args = 0..=1)]
    pub signed: Option<bool>,
    /// Parent selection method.
    #[arg(long, value_enum)]
    pub selection: Option<SelectionKind>,
    /// Entrants per tournament.
    #[arg(long)]
    pub tournament_size: Option<usize>,
    /// Number of elites carried over unchanged.
    #[arg(long)]
    pub elitism: Option<usize>,
    /// Stop once this fitness is reached.
    #[arg(long)]
    pub target_fitness: Option<f64>,
    /// Sample uniformly when roulette wheel total fitness is zero.
    #[arg(long, default_missing_value = "true", num_args = 0..=1)]
    pub roulette_fallback_uniform: Option<bool>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub params: RunParams,
    /// Flat TOML file of run parameters; flags take precedence.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TablesArgs {
    /// Maximum element capacity M of an array.
    #[arg(long, default_value_t = bitchrom::DEFAULT_ARRAY_CAPACITY)]
    pub capacity: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Layouts to cover, e.g. `u8,s16,u64` (default: all eight).
    #[arg(long, value_delimiter = ',')]
    pub layouts: Vec<String>,
    /// Chromosome lengths for the memory report (default: a fixed sweep
    /// plus each layout's maximum length).
    #[arg(long, value_delimiter = ',')]
    pub lengths: Vec<u64>,
    /// Chromosome lengths for the differential runs (default: 1, n-1, n,
    /// n+1, 2n and 37).
    #[arg(long, value_delimiter = ',')]
    pub diff_lengths: Vec<usize>,
    /// Random operations per differential run.
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    /// Base seed for the differential runs (default: $BITCHROM_SEED, else 0).
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    /// Schema over {0,1,*}, e.g. `1********0`.
    pub pattern: String,
    /// Alphabet cardinality k for the schemata count.
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    /// Chromosome length L (default: pattern length).
    #[arg(long)]
    pub length: Option<usize>,
    /// Members currently matching the schema, m(H,t).
    #[arg(long, default_value_t = 1.0)]
    pub count: f64,
    /// Observed average fitness of the schema.
    #[arg(long, default_value_t = 1.0)]
    pub schema_fitness: f64,
    /// Observed average fitness of the population.
    #[arg(long, default_value_t = 1.0)]
    pub pop_fitness: f64,
    #[arg(long, default_value_t = 0.9)]
    pub pc: f64,
    /// Per-allele mutation probability (default 1/L).
    #[arg(long)]
    pub pm: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}
