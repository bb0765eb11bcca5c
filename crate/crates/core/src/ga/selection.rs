use rand::Rng;

use super::config::Selection;
use super::engine::Population;
use crate::chromosome::PackedChromosome;
use crate::error::{Error, Result};

/// Picks one member index.
///
/// Successive calls sample with replacement, so a member can parent many
/// offspring. Within one tournament the entrants are distinct and ties go to
/// the entrant drawn first.
pub fn select_index<R: Rng + ?Sized>(population: &Population, method: &Selection, rng: &mut R) -> Result<usize> {
    let members = population.members();
    let n = members.len();
    if n == 0 {
        return Err(Error::DegenerateFitness("empty population".into()));
    }
    match *method {
        Selection::Tournament { size } => {
            // distinct entrants; a tournament larger than the population
            // simply enters everyone
            let size = size.min(n);
            let mut entrants = Vec::with_capacity(size);
            while entrants.len() < size {
                let i = rng.random_range(0..n);
                if !entrants.contains(&i) {
                    entrants.push(i);
                }
            }
            let mut best = entrants[0];
            for &challenger in &entrants[1..] {
                if members[challenger].fitness > members[best].fitness {
                    best = challenger;
                }
            }
            Ok(best)
        }
        Selection::RouletteWheel { uniform_fallback } => {
            let total: f64 = members.iter().map(|m| m.fitness).sum();
            if total.is_nan() || total <= 0.0 {
                if uniform_fallback {
                    return Ok(rng.random_range(0..n));
                }
                return Err(Error::DegenerateFitness(format!(
                    "roulette wheel needs positive total fitness, got {total}"
                )));
            }
            let spin = rng.random::<f64>() * total;
            let mut acc = 0.0;
            for (i, m) in members.iter().enumerate() {
                acc += m.fitness;
                if spin < acc {
                    return Ok(i);
                }
            }
            // rounding left the spin at the very end of the wheel
            Ok(members.iter().rposition(|m| m.fitness > 0.0).expect("total fitness is positive"))
        }
    }
}

/// Two independently selected parents, cloned out of the population.
pub fn select_pair<R: Rng + ?Sized>(
    population: &Population,
    method: &Selection,
    rng: &mut R,
) -> Result<(PackedChromosome, PackedChromosome)> {
    let a = select_index(population, method, rng)?;
    let b = select_index(population, method, rng)?;
    let members = population.members();
    Ok((members[a].chromosome.clone(), members[b].chromosome.clone()))
}
