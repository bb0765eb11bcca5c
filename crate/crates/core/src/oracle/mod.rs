//! One-byte-per-allele reference chromosome, the differential harness that
//! checks the packed layout against it, and analytic memory accounting.

mod differential;
mod memory;
mod naive;

pub use differential::{differential_run, differential_run_with_fault, Divergence, Fault, Observation, Op, Verdict};
pub use memory::{memory_report, MemoryReport, NAIVE_UTILIZATION};
pub use naive::NaiveChromosome;
