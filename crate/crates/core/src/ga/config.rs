use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::{LayoutSpec, Width};

/// Parent selection scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Selection {
    /// Best of `size` uniform draws with replacement.
    Tournament { size: usize },
    /// Fitness-proportionate. With `uniform_fallback`, a population whose
    /// total fitness is zero is sampled uniformly instead of failing.
    RouletteWheel { uniform_fallback: bool },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub crossover_probability: f64,
    /// Per-allele flip probability.
    pub mutation_probability: f64,
    pub chromosome_length: usize,
    pub layout: LayoutSpec,
    pub selection: Selection,
    /// Best individuals carried over unchanged, replacing the worst offspring.
    pub elitism: usize,
    pub max_generations: u64,
    pub target_fitness: Option<f64>,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            crossover_probability: 0.9,
            mutation_probability: 1.0 / 128.0,
            chromosome_length: 128,
            layout: LayoutSpec::unsigned(Width::W64),
            selection: Selection::Tournament { size: 2 },
            elitism: 0,
            max_generations: 300,
            target_fitness: None,
            seed: 0,
        }
    }
}

fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::Config { field, reason: reason.into() }
}

impl GaConfig {
    /// Checks every constraint, reporting the first violated field.
    pub fn validate(&self) -> Result<()> {
        let n = self.population_size;
        if n < 2 || !n.is_multiple_of(2) {
            return Err(invalid("population_size", format!("{n} must be even and at least 2")));
        }
        for (field, p) in
            [("crossover_probability", self.crossover_probability), ("mutation_probability", self.mutation_probability)]
        {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(field, format!("{p} is not in [0, 1]")));
            }
        }
        let cap = self.layout.metadata_cap();
        if self.chromosome_length == 0 || self.chromosome_length as u64 > cap {
            return Err(invalid(
                "chromosome_length",
                format!("{} is not in [1, {cap}] for layout {}", self.chromosome_length, self.layout),
            ));
        }
        if let Selection::Tournament { size } = self.selection {
            if size < 2 {
                return Err(invalid("tournament_size", format!("{size} must be at least 2")));
            }
        }
        if self.elitism >= n {
            return Err(invalid("elitism", format!("{} must be less than the population size {n}", self.elitism)));
        }
        if self.max_generations == 0 {
            return Err(invalid("max_generations", "must be at least 1"));
        }
        if let Some(t) = self.target_fitness {
            if !t.is_finite() {
                return Err(invalid("target_fitness", format!("{t} is not finite")));
            }
        }
        Ok(())
    }
}
