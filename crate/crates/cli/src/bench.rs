use std::collections::BTreeSet;
use std::fmt::Write as _;

use bitchrom::oracle::{differential_run, memory_report, MemoryReport, Verdict};
use bitchrom::{max_chromosome_length, LayoutSpec, DEFAULT_ARRAY_CAPACITY};
use serde::Serialize;

use crate::args::{BenchArgs, Format};
use crate::error::CliError;
use crate::output::{to_csv, to_json};

/// Memory sweep lengths used when none are given; lengths above a layout's
/// metadata cap are skipped.
pub const DEFAULT_LENGTHS: [u64; 6] = [8, 10, 127, 1_000, 65_535, 1_000_000];

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub steps: usize,
    pub memory: Vec<MemoryReport>,
    pub differential: Vec<Verdict>,
}

impl BenchReport {
    pub fn all_equivalent(&self) -> bool {
        self.differential.iter().all(Verdict::is_equivalent)
    }
}

/// `1, n-1, n, n+1, 2n, 37`, deduplicated and limited to the metadata cap.
pub fn default_diff_lengths(layout: &LayoutSpec) -> Vec<usize> {
    let n = layout.usable_bits() as usize;
    let set: BTreeSet<usize> =
        [1, n - 1, n, n + 1, 2 * n, 37].into_iter().filter(|&l| l >= 1 && l as u64 <= layout.metadata_cap()).collect();
    set.into_iter().collect()
}

fn default_memory_lengths(layout: &LayoutSpec) -> Vec<u64> {
    let mut set: BTreeSet<u64> = DEFAULT_LENGTHS.into_iter().collect();
    if let Ok(max) = max_chromosome_length(layout, DEFAULT_ARRAY_CAPACITY) {
        set.insert(max);
    }
    set.into_iter().filter(|&l| l <= layout.metadata_cap()).collect()
}

pub fn parse_layouts(names: &[String]) -> Result<Vec<LayoutSpec>, CliError> {
    if names.is_empty() {
        return Ok(LayoutSpec::all().collect());
    }
    names.iter().map(|n| n.parse::<LayoutSpec>().map_err(|e| CliError::usage("layouts", e))).collect()
}

pub fn build_bench(args: &BenchArgs, seed: u64) -> Result<BenchReport, CliError> {
    let layouts = parse_layouts(&args.layouts)?;
    let mut memory = Vec::new();
    let mut differential = Vec::new();
    for (li, layout) in layouts.iter().enumerate() {
        let lengths = if args.lengths.is_empty() { default_memory_lengths(layout) } else { args.lengths.clone() };
        for length in lengths {
            memory.push(memory_report(length, *layout)?);
        }
        let diff_lengths =
            if args.diff_lengths.is_empty() { default_diff_lengths(layout) } else { args.diff_lengths.clone() };
        for (di, length) in diff_lengths.into_iter().enumerate() {
            let run_seed = seed.wrapping_add((li * 1000 + di) as u64);
            differential.push(differential_run(*layout, length, args.steps, run_seed)?);
        }
    }
    Ok(BenchReport { seed, steps: args.steps, memory, differential })
}

/// Flat CSV record; `kind` is `memory` or `differential` and the columns
/// that do not apply to a kind are left empty.
#[derive(Debug, Default, Serialize)]
struct CsvRow {
    kind: &'static str,
    layout: String,
    length: u64,
    element_count: Option<u64>,
    naive_bytes: Option<u128>,
    packed_bytes: Option<u128>,
    utilization_naive: Option<f64>,
    utilization_packed: Option<f64>,
    ratio: Option<f64>,
    steps: Option<usize>,
    seed: Option<u64>,
    verdict: Option<&'static str>,
    divergence_step: Option<usize>,
}

fn verdict_text(v: &Verdict) -> &'static str {
    if v.is_equivalent() {
        "equivalent"
    } else {
        "divergent"
    }
}

pub fn render(report: &BenchReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mem = report.memory.iter().map(|m| CsvRow {
                kind: "memory",
                layout: m.layout.to_string(),
                length: m.length,
                element_count: Some(m.element_count),
                naive_bytes: Some(m.naive_bytes),
                packed_bytes: Some(m.packed_bytes),
                utilization_naive: Some(m.utilization_naive),
                utilization_packed: Some(m.utilization_packed),
                ratio: Some(m.ratio),
                ..Default::default()
            });
            let diff = report.differential.iter().map(|v| CsvRow {
                kind: "differential",
                layout: v.layout.to_string(),
                length: v.length as u64,
                steps: Some(v.steps),
                seed: Some(v.seed),
                verdict: Some(verdict_text(v)),
                divergence_step: v.divergence.as_ref().map(|d| d.step),
                ..Default::default()
            });
            to_csv(mem.chain(diff))
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "memory (analytic, bytes)").unwrap();
            writeln!(
                s,
                "{:>6}  {:>12}  {:>12}  {:>12}  {:>10}  {:>10}  {:>8}",
                "layout", "length", "naive", "packed", "naive %", "packed %", "ratio"
            )
            .unwrap();
            for m in &report.memory {
                writeln!(
                    s,
                    "{:>6}  {:>12}  {:>12}  {:>12}  {:>10.2}  {:>10.2}  {:>8.4}",
                    m.layout.to_string(),
                    m.length,
                    m.naive_bytes,
                    m.packed_bytes,
                    100.0 * m.utilization_naive,
                    100.0 * m.utilization_packed,
                    m.ratio
                )
                .unwrap();
            }
            writeln!(s).unwrap();
            writeln!(
                s,
                "differential vs one-byte-per-allele oracle ({} ops per run, seed {})",
                report.steps, report.seed
            )
            .unwrap();
            for v in &report.differential {
                writeln!(s, "{:>6}  L={:<6} {}", v.layout.to_string(), v.length, verdict_text(v)).unwrap();
                if let Some(d) = &v.divergence {
                    writeln!(s, "        {d}").unwrap();
                }
            }
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bitchrom::Width;

    #[test]
    fn diff_lengths_per_layout() {
        assert_eq!(default_diff_lengths(&LayoutSpec::unsigned(Width::W8)), vec![1, 7, 8, 9, 16, 37]);
        assert_eq!(default_diff_lengths(&LayoutSpec::signed(Width::W8)), vec![1, 6, 7, 8, 14, 37]);
        assert_eq!(default_diff_lengths(&LayoutSpec::signed(Width::W64)), vec![1, 37, 62, 63, 64, 126]);
    }

    #[test]
    fn memory_lengths_respect_cap() {
        let s8 = default_memory_lengths(&LayoutSpec::signed(Width::W8));
        assert_eq!(s8, vec![8, 10, 127]);
        let u64l = default_memory_lengths(&LayoutSpec::unsigned(Width::W64));
        assert!(u64l.contains(&1_000_000) && u64l.contains(&(64 * 65_535)));
    }
}
