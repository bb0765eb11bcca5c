//! Generational genetic algorithm over packed chromosomes.

mod config;
mod engine;
mod fitness;
mod operators;
mod selection;

pub use config::{GaConfig, Selection};
pub use engine::{initialize_population, run, GenerationStats, GeneticAlgorithm, Individual, Population, RunReport};
pub use fitness::{onemax_fitness, FitnessFunction, OneMax};
pub use operators::{crossover, mutate};
pub use selection::{select_index, select_pair};
