use crate::chromosome::{BinaryChromosome, PackedChromosome};

/// A pure, non-negative scoring of chromosomes. Scores are cached per
/// individual, so implementations must return the same value for the same
/// chromosome.
pub trait FitnessFunction {
    fn evaluate(&self, chromosome: &PackedChromosome) -> f64;
}

impl<F> FitnessFunction for F
where
    F: Fn(&PackedChromosome) -> f64,
{
    fn evaluate(&self, chromosome: &PackedChromosome) -> f64 {
        self(chromosome)
    }
}

/// Number of alleles set to 1. Canonical form keeps padding and sign bits
/// clear, so this is a popcount over the data words.
pub fn onemax_fitness(chromosome: &PackedChromosome) -> usize {
    chromosome.count_ones()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OneMax;

impl FitnessFunction for OneMax {
    fn evaluate(&self, chromosome: &PackedChromosome) -> f64 {
        onemax_fitness(chromosome) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{LayoutSpec, Width};

    #[test]
    fn onemax_examples() {
        for layout in LayoutSpec::all() {
            let ones = PackedChromosome::pack(&[true; 10], layout).unwrap();
            assert_eq!(onemax_fitness(&ones), 10);
            let zero = PackedChromosome::new_zero(10, layout).unwrap();
            assert_eq!(onemax_fitness(&zero), 0);
        }
        let figure = PackedChromosome::from_bit_str("1010011000", LayoutSpec::unsigned(Width::W8)).unwrap();
        assert_eq!(OneMax.evaluate(&figure), 4.0);
    }
}
