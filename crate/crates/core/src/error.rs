use thiserror::Error;

/// Errors raised by chromosome construction, the GA engine and the
/// schema formulas.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid chromosome length {length}: must be at least {min}")]
    InvalidLength { length: u64, min: u64 },

    #[error("chromosome length {length} exceeds the metadata capacity {cap} of the layout")]
    CapacityExceeded { length: u64, cap: u64 },

    #[error("invalid array capacity {capacity}: at least 2 elements are required")]
    InvalidCapacity { capacity: u64 },

    #[error("unsupported element width {0}: expected 8, 16, 32 or 64")]
    InvalidWidth(u32),

    #[error("allele index {index} out of range for chromosome of length {length}")]
    IndexOutOfRange { index: usize, length: usize },

    #[error("incompatible chromosomes: {0}")]
    Incompatible(String),

    #[error("invalid bit character {0:?}: expected '0' or '1'")]
    InvalidBit(char),

    #[error("invalid schema symbol {0:?}: expected '0', '1' or '*'")]
    InvalidSchemaSymbol(char),

    #[error("schema of length {schema} does not fit chromosome length {chromosome}")]
    IncompatibleSchema { schema: usize, chromosome: usize },

    #[error("invalid {field}: {reason}")]
    Config { field: &'static str, reason: String },

    #[error("degenerate fitness: {0}")]
    DegenerateFitness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
