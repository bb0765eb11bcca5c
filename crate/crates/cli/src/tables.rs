use std::fmt::Write as _;

use bitchrom::{
    array_capacity_bits, calculate_array_dim, max_chromosome_length, memory_utilization, LayoutSpec, Signedness,
};
use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;
use crate::output::{to_csv, to_json};

/// One row of the capacity table for a layout and array capacity `M`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub signedness: Signedness,
    pub width: u32,
    pub usable_bits: u32,
    /// Largest length the metadata element can hold.
    pub metadata_cap: u64,
    /// `n * (M - 1)`
    pub array_capacity_bits: u128,
    pub max_chromosome_length: u64,
    pub element_count: u64,
    /// Exact utilization at the maximum length, in percent.
    pub utilization_percent: f64,
    /// The same, truncated to two decimals.
    pub utilization_display: String,
}

pub fn build_tables(capacity: u64) -> Result<Vec<TableRow>, CliError> {
    LayoutSpec::all()
        .map(|layout| {
            let max_len = max_chromosome_length(&layout, capacity)?;
            let utilization = memory_utilization(max_len, &layout)?;
            Ok(TableRow {
                signedness: layout.signedness,
                width: layout.element_bits(),
                usable_bits: layout.usable_bits(),
                metadata_cap: layout.metadata_cap(),
                array_capacity_bits: array_capacity_bits(&layout, capacity)?,
                max_chromosome_length: max_len,
                element_count: calculate_array_dim(max_len, &layout)?,
                utilization_percent: utilization.percent(),
                utilization_display: utilization.percent_string(),
            })
        })
        .collect()
}

const FOOTNOTE: &str = "\
notes:
  array capacity = n * (M - 1): the metadata element carries no alleles.
  Tables computed with n * M instead list 2097152 / 4194304 (unsigned) and
  2031616 / 4128768 (signed) for the 32/64-bit rows; utilization agrees at
  two decimals under either convention.
  Utilization = L / (m * W), truncated to two decimals.";

pub fn render(rows: &[TableRow], capacity: u64, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => to_csv(rows),
        Format::Text => {
            let mut s = String::new();
            for (title, signedness) in [("UNSIGNED", Signedness::Unsigned), ("SIGNED", Signedness::Signed)] {
                writeln!(s, "{title} element types, M = {capacity}").unwrap();
                writeln!(
                    s,
                    "{:>6}  {:>22}  {:>16}  {:>16}  {:>12}",
                    "bits", "max metadata value", "array bits", "max length", "utilization"
                )
                .unwrap();
                for r in rows.iter().filter(|r| r.signedness == signedness) {
                    writeln!(
                        s,
                        "{:>6}  {:>22}  {:>16}  {:>16}  {:>11}%",
                        r.width, r.metadata_cap, r.array_capacity_bits, r.max_chromosome_length, r.utilization_display
                    )
                    .unwrap();
                }
                writeln!(s).unwrap();
            }
            writeln!(s, "{FOOTNOTE}").unwrap();
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_capacity_is_bit_bound() {
        let rows = build_tables(2).unwrap();
        let u8row = &rows[0];
        assert_eq!(u8row.max_chromosome_length, 8);
        assert_eq!(u8row.utilization_display, "50.00");
        assert!(build_tables(1).is_err());
    }
}
