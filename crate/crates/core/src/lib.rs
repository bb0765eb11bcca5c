//! Memory-optimized binary chromosomes for genetic algorithms.
//!
//! A chromosome of `L` binary alleles is stored as an array of `W`-bit
//! integers: the first element records `L` and each remaining element holds
//! up to `n` alleles as bits (`n = W`, or `W - 1` for signed element types,
//! whose sign bit stays clear). Against the usual one-byte-per-allele
//! encoding this lifts memory utilization from 12.5% to close to 100% for
//! long chromosomes.
//!
//! * [`layout`]: element layouts and the dimension, capacity and
//!   utilization arithmetic.
//! * [`chromosome`]: [`PackedChromosome`] and the [`BinaryChromosome`]
//!   operations it shares with the reference implementation.
//! * [`ga`]: a seeded, generational GA (tournament or roulette wheel
//!   selection, one-point crossover, per-allele mutation, optional elitism).
//! * [`schema`]: schema order/defining length, schemata counts and the
//!   schema theorem expectation.
//! * [`oracle`]: the one-byte-per-allele [`NaiveChromosome`], a
//!   differential harness, and memory reports.
//!
//! ```
//! use bitchrom::{BinaryChromosome, LayoutSpec, PackedChromosome, Width};
//!
//! let bits = [true, false, true, false, false, true, true, false, false, false];
//! let c = PackedChromosome::pack(&bits, LayoutSpec::unsigned(Width::W8)).unwrap();
//! assert_eq!(c.elements(), vec![10, 0b0000_0010, 0b1001_1000]);
//! assert_eq!(c.count_ones(), 4);
//! ```

pub mod chromosome;
pub mod error;
pub mod ga;
pub mod layout;
pub mod oracle;
pub mod schema;

pub use chromosome::{BinaryChromosome, PackedChromosome};
pub use error::{Error, Result};
pub use layout::{
    array_capacity_bits, calculate_array_dim, max_chromosome_length, memory_utilization, BitAddress, LayoutSpec,
    Signedness, Utilization, Width, DEFAULT_ARRAY_CAPACITY,
};
pub use oracle::NaiveChromosome;
