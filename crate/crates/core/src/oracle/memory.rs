use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::{calculate_array_dim, memory_utilization, LayoutSpec};

/// Bit utilization of the one-byte-per-allele representation.
pub const NAIVE_UTILIZATION: f64 = 0.125;

/// Analytic footprint of a chromosome in packed and naive form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemoryReport {
    pub layout: LayoutSpec,
    pub length: u64,
    pub element_count: u64,
    pub naive_bytes: u128,
    pub packed_bytes: u128,
    pub utilization_naive: f64,
    pub utilization_packed: f64,
    /// `naive_bytes / packed_bytes`.
    pub ratio: f64,
}

/// Element counts times width; no allocation is made, so lengths up to the
/// layout's metadata cap are accepted.
pub fn memory_report(length: u64, layout: LayoutSpec) -> Result<MemoryReport> {
    let cap = layout.metadata_cap();
    if length > cap {
        return Err(Error::CapacityExceeded { length, cap });
    }
    let m = calculate_array_dim(length, &layout)?;
    let packed_bytes = m as u128 * layout.width.bytes() as u128;
    let naive_bytes = length as u128;
    Ok(MemoryReport {
        layout,
        length,
        element_count: m,
        naive_bytes,
        packed_bytes,
        utilization_naive: NAIVE_UTILIZATION,
        utilization_packed: memory_utilization(length, &layout)?.ratio(),
        ratio: naive_bytes as f64 / packed_bytes as f64,
    })
}
