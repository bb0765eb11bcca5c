use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use bitchrom::ga::{self, GaConfig, GenerationStats, OneMax, RunReport, Selection};
use bitchrom::LayoutSpec;
use serde::Serialize;

use crate::args::{Format, RunArgs, RunParams, SelectionKind};
use crate::error::CliError;
use crate::output::{elide_bits, to_csv, to_json};

pub const SEED_ENV: &str = "BITCHROM_SEED";

pub fn load_config_file(path: &Path) -> Result<RunParams, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage("config", format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::usage("config", format!("{}: {e}", path.display())))
}

fn env_seed() -> Result<Option<u64>, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::usage("seed", format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

/// Layers flags over the config file over `$BITCHROM_SEED` (seed only)
/// over the defaults, and validates the result.
pub fn resolve_config(flags: &RunParams, file: Option<&RunParams>) -> Result<GaConfig, CliError> {
    let empty = RunParams::default();
    let file = file.unwrap_or(&empty);
    macro_rules! pick {
        ($field:ident) => {
            flags.$field.or(file.$field)
        };
    }

    let defaults = GaConfig::default();
    let width = pick!(width).unwrap_or(defaults.layout.width.bits());
    let signed = pick!(signed).unwrap_or(false);
    let layout = LayoutSpec::from_bits(width, signed).map_err(|e| CliError::usage("width", e))?;
    let length = pick!(length).unwrap_or(defaults.chromosome_length);
    let selection = match pick!(selection).unwrap_or(SelectionKind::Tournament) {
        SelectionKind::Tournament => Selection::Tournament { size: pick!(tournament_size).unwrap_or(2) },
        SelectionKind::Roulette => {
            Selection::RouletteWheel { uniform_fallback: pick!(roulette_fallback_uniform).unwrap_or(false) }
        }
    };
    let seed = match pick!(seed) {
        Some(s) => s,
        None => env_seed()?.unwrap_or(0),
    };

    let config = GaConfig {
        population_size: pick!(pop).unwrap_or(defaults.population_size),
        crossover_probability: pick!(pc).unwrap_or(defaults.crossover_probability),
        mutation_probability: pick!(pm).unwrap_or(1.0 / length.max(1) as f64),
        chromosome_length: length,
        layout,
        selection,
        elitism: pick!(elitism).unwrap_or(0),
        max_generations: pick!(gens).unwrap_or(defaults.max_generations),
        target_fitness: pick!(target_fitness),
        seed,
    };
    config.validate()?;
    Ok(config)
}

#[derive(Debug, Serialize)]
pub struct RunOutput {
    pub config: GaConfig,
    pub best_fitness: f64,
    pub best_generation: u64,
    pub best_individual: String,
    pub target_reached: bool,
    pub stats: Vec<GenerationStats>,
}

impl From<(GaConfig, RunReport)> for RunOutput {
    fn from((config, report): (GaConfig, RunReport)) -> Self {
        Self {
            config,
            best_fitness: report.best.fitness,
            best_generation: report.best_generation,
            best_individual: report.best.chromosome.to_bit_string(),
            target_reached: report.target_reached,
            stats: report.stats,
        }
    }
}

/// One line of the run CSV. `record` is `generation` for a statistics row
/// and `best` for the final best-individual row.
#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    record: &'a str,
    generation: u64,
    best_fitness: f64,
    mean_fitness: Option<f64>,
    bits: Option<&'a str>,
}

pub fn execute(args: &RunArgs) -> Result<RunOutput, CliError> {
    let file = args.config.as_deref().map(load_config_file).transpose()?;
    let config = resolve_config(&args.params, file.as_ref())?;
    let report = ga::run(config.clone(), OneMax)?;
    Ok(RunOutput::from((config, report)))
}

pub fn render(out: &RunOutput, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(out),
        Format::Csv => {
            let stats = out.stats.iter().map(|s| CsvRow {
                record: "generation",
                generation: s.generation,
                best_fitness: s.best_fitness,
                mean_fitness: Some(s.mean_fitness),
                bits: None,
            });
            let best = CsvRow {
                record: "best",
                generation: out.best_generation,
                best_fitness: out.best_fitness,
                mean_fitness: None,
                bits: Some(&out.best_individual),
            };
            to_csv(stats.chain(std::iter::once(best)))
        }
        Format::Text => {
            let c = &out.config;
            let mut s = String::new();
            let selection = match c.selection {
                Selection::Tournament { size } => format!("tournament (size {size})"),
                Selection::RouletteWheel { uniform_fallback } => {
                    format!("roulette wheel{}", if uniform_fallback { " (uniform fallback)" } else { "" })
                }
            };
            writeln!(
                s,
                "OneMax  L={} N={} pc={} pm={} layout={} selection={} elitism={} seed={}",
                c.chromosome_length,
                c.population_size,
                c.crossover_probability,
                c.mutation_probability,
                c.layout,
                selection,
                c.elitism,
                c.seed
            )
            .unwrap();
            writeln!(s, "best fitness: {} (generation {})", out.best_fitness, out.best_generation).unwrap();
            writeln!(s, "best individual: {}", elide_bits(&out.best_individual)).unwrap();
            if c.target_fitness.is_some() {
                writeln!(s, "target reached: {}", out.target_reached).unwrap();
            }
            writeln!(s).unwrap();
            writeln!(s, "{:>10}  {:>14}  {:>14}", "generation", "best_fitness", "mean_fitness").unwrap();
            for st in &out.stats {
                writeln!(s, "{:>10}  {:>14}  {:>14}", st.generation, st.best_fitness, st.mean_fitness).unwrap();
            }
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_override_defaults() {
        let file = RunParams { length: Some(64), pop: Some(20), pc: Some(0.5), ..Default::default() };
        let flags = RunParams { pop: Some(10), seed: Some(3), ..Default::default() };
        let cfg = resolve_config(&flags, Some(&file)).unwrap();
        assert_eq!(cfg.population_size, 10);
        assert_eq!(cfg.chromosome_length, 64);
        assert_eq!(cfg.crossover_probability, 0.5);
        assert_eq!(cfg.mutation_probability, 1.0 / 64.0);
        assert_eq!(cfg.max_generations, 300);
        assert_eq!(cfg.seed, 3);
    }

    #[test]
    fn odd_population_names_the_field() {
        let flags = RunParams { pop: Some(3), seed: Some(0), ..Default::default() };
        let err = resolve_config(&flags, None).unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_USAGE);
        assert!(err.to_string().contains("population_size"), "{err}");
    }

    #[test]
    fn bad_width_is_a_usage_error() {
        let flags = RunParams { width: Some(12), seed: Some(0), ..Default::default() };
        let err = resolve_config(&flags, None).unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_USAGE);
        assert!(err.to_string().contains("width"));
    }

    #[test]
    fn roulette_fallback_flag_reaches_the_config() {
        let flags = RunParams {
            selection: Some(SelectionKind::Roulette),
            roulette_fallback_uniform: Some(true),
            seed: Some(0),
            ..Default::default()
        };
        let cfg = resolve_config(&flags, None).unwrap();
        assert_eq!(cfg.selection, Selection::RouletteWheel { uniform_fallback: true });
    }
}
