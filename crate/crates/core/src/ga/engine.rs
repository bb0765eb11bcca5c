use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::GaConfig;
use super::fitness::FitnessFunction;
use super::operators::{crossover, mutate};
use super::selection::select_pair;
use crate::chromosome::PackedChromosome;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub chromosome: PackedChromosome,
    pub fitness: f64,
}

impl Individual {
    pub fn evaluate<F: FitnessFunction + ?Sized>(chromosome: PackedChromosome, fitness: &F) -> Result<Self> {
        let score = fitness.evaluate(&chromosome);
        if !(score >= 0.0 && score.is_finite()) {
            return Err(Error::DegenerateFitness(format!("fitness must be finite and non-negative, got {score}")));
        }
        Ok(Self { chromosome, fitness: score })
    }
}

/// The chromosomes of one generation together with their cached fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    generation: u64,
    members: Vec<Individual>,
}

impl Population {
    pub fn from_members(generation: u64, members: Vec<Individual>) -> Self {
        Self { generation, members }
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn chromosomes(&self) -> impl Iterator<Item = &PackedChromosome> {
        self.members.iter().map(|m| &m.chromosome)
    }

    /// Highest-fitness member; the earliest one on ties.
    pub fn best(&self) -> Option<&Individual> {
        self.members.iter().reduce(|best, m| if m.fitness > best.fitness { m } else { best })
    }

    pub fn mean_fitness(&self) -> f64 {
        self.members.iter().map(|m| m.fitness).sum::<f64>() / self.members.len() as f64
    }

    fn stats(&self) -> GenerationStats {
        GenerationStats {
            generation: self.generation,
            best_fitness: self.best().map_or(0.0, |b| b.fitness),
            mean_fitness: self.mean_fitness(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationStats {
    pub generation: u64,
    pub best_fitness: f64,
    pub mean_fitness: f64,
}

/// Outcome of a complete run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    /// Best individual seen in any generation.
    pub best: Individual,
    pub best_generation: u64,
    /// One entry per generation, starting with the initial population.
    pub stats: Vec<GenerationStats>,
    pub target_reached: bool,
}

/// `N` random chromosomes, evaluated, as generation 0.
pub fn initialize_population<F, R>(config: &GaConfig, fitness: &F, rng: &mut R) -> Result<Population>
where
    F: FitnessFunction + ?Sized,
    R: rand::Rng + ?Sized,
{
    config.validate()?;
    let members = (0..config.population_size)
        .map(|_| {
            let c = PackedChromosome::new_random(config.chromosome_length, config.layout, rng)?;
            Individual::evaluate(c, fitness)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Population::from_members(0, members))
}

/// Step-wise driver for the generational loop.
pub struct GeneticAlgorithm<F> {
    config: GaConfig,
    fitness: F,
    rng: ChaCha8Rng,
    population: Population,
    best: Individual,
    best_generation: u64,
    stats: Vec<GenerationStats>,
}

impl<F: FitnessFunction> GeneticAlgorithm<F> {
    pub fn new(config: GaConfig, fitness: F) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let population = initialize_population(&config, &fitness, &mut rng)?;
        let best = population.best().expect("population is non-empty").clone();
        let stats = vec![population.stats()];
        Ok(Self { config, fitness, rng, population, best, best_generation: 0, stats })
    }

    pub fn config(&self) -> &GaConfig {
        &self.config
    }

    pub fn population(&self) -> &Population {
        &self.population
    }

    pub fn best(&self) -> &Individual {
        &self.best
    }

    pub fn stats(&self) -> &[GenerationStats] {
        &self.stats
    }

    pub fn target_reached(&self) -> bool {
        self.config.target_fitness.is_some_and(|t| self.best.fitness >= t)
    }

    pub fn is_done(&self) -> bool {
        self.population.generation >= self.config.max_generations || self.target_reached()
    }

    /// Breeds the next generation: `N / 2` selected pairs go through
    /// crossover and mutation, then the `e` best parents replace the `e`
    /// worst offspring.
    pub fn step(&mut self) -> Result<&Population> {
        let cfg = &self.config;
        let mut offspring = Vec::with_capacity(cfg.population_size);
        for _ in 0..cfg.population_size / 2 {
            let (mut a, mut b) = select_pair(&self.population, &cfg.selection, &mut self.rng)?;
            crossover(&mut a, &mut b, cfg.crossover_probability, &mut self.rng)?;
            mutate(&mut a, cfg.mutation_probability, &mut self.rng);
            mutate(&mut b, cfg.mutation_probability, &mut self.rng);
            offspring.push(Individual::evaluate(a, &self.fitness)?);
            offspring.push(Individual::evaluate(b, &self.fitness)?);
        }

        if cfg.elitism > 0 {
            let mut parents: Vec<&Individual> = self.population.members.iter().collect();
            parents.sort_by(|a, b| b.fitness.total_cmp(&a.fitness));
            let mut worst: Vec<usize> = (0..offspring.len()).collect();
            worst.sort_by(|&a, &b| offspring[a].fitness.total_cmp(&offspring[b].fitness));
            for (&slot, elite) in worst.iter().zip(parents).take(cfg.elitism) {
                offspring[slot] = elite.clone();
            }
        }

        self.population = Population::from_members(self.population.generation + 1, offspring);
        let gen_best = self.population.best().expect("population is non-empty");
        if gen_best.fitness > self.best.fitness {
            self.best = gen_best.clone();
            self.best_generation = self.population.generation;
        }
        self.stats.push(self.population.stats());
        Ok(&self.population)
    }

    pub fn run(mut self) -> Result<RunReport> {
        while !self.is_done() {
            self.step()?;
        }
        let target_reached = self.target_reached();
        Ok(RunReport { best: self.best, best_generation: self.best_generation, stats: self.stats, target_reached })
    }
}

/// Runs the generational loop until `max_generations` or the target
/// fitness, whichever comes first.
pub fn run<F: FitnessFunction>(config: GaConfig, fitness: F) -> Result<RunReport> {
    GeneticAlgorithm::new(config, fitness)?.run()
}
