use std::fmt::Write as _;

use bitchrom::schema::{
    disruption_probability, expected_schema_count, max_schemata_count, Schema, SchemaTheoremInputs,
};
use serde::Serialize;

use crate::args::{AnalyzeArgs, Format};
use crate::error::CliError;
use crate::output::{to_csv, to_json};

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub pattern: String,
    pub order: usize,
    pub defining_length: usize,
    pub chromosome_length: usize,
    pub cardinality: u32,
    /// `(k + 1)^L` in decimal; may exceed any machine integer.
    pub max_schemata_count: String,
    pub count_now: f64,
    pub schema_avg_fitness: f64,
    pub population_avg_fitness: f64,
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    pub disruption_probability: f64,
    pub expected_count: f64,
}

pub fn build_analysis(args: &AnalyzeArgs) -> Result<AnalyzeReport, CliError> {
    let schema: Schema = args.pattern.parse()?;
    let length = args.length.unwrap_or(schema.len());
    let pm = args.pm.unwrap_or(1.0 / length.max(1) as f64);
    let inputs = SchemaTheoremInputs {
        count_now: args.count,
        schema_avg_fitness: args.schema_fitness,
        population_avg_fitness: args.pop_fitness,
        chromosome_length: length,
        crossover_probability: args.pc,
        mutation_probability: pm,
    };
    let exponent = u32::try_from(length).map_err(|_| CliError::usage("length", "too large"))?;
    Ok(AnalyzeReport {
        pattern: schema.to_string(),
        order: schema.order(),
        defining_length: schema.defining_length(),
        chromosome_length: length,
        cardinality: args.k,
        max_schemata_count: max_schemata_count(args.k, exponent).to_string(),
        count_now: args.count,
        schema_avg_fitness: args.schema_fitness,
        population_avg_fitness: args.pop_fitness,
        crossover_probability: args.pc,
        mutation_probability: pm,
        disruption_probability: disruption_probability(&schema, length, args.pc)?,
        expected_count: expected_schema_count(&schema, &inputs)?,
    })
}

pub fn render(report: &AnalyzeReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv([report]),
        Format::Text => {
            let r = report;
            let mut s = String::new();
            writeln!(s, "schema                  {}", r.pattern).unwrap();
            writeln!(s, "order o(H)              {}", r.order).unwrap();
            writeln!(s, "defining length d(H)    {}", r.defining_length).unwrap();
            writeln!(s, "chromosome length L     {}", r.chromosome_length).unwrap();
            writeln!(s, "disruption probability  {}", r.disruption_probability).unwrap();
            writeln!(
                s,
                "expected count E[m(H,t+1)] {}  (m={} fH={} f={} pc={} pm={})",
                r.expected_count,
                r.count_now,
                r.schema_avg_fitness,
                r.population_avg_fitness,
                r.crossover_probability,
                r.mutation_probability
            )
            .unwrap();
            writeln!(
                s,
                "max schemata (k+1)^L    {}  (k={}, L={})",
                r.max_schemata_count, r.cardinality, r.chromosome_length
            )
            .unwrap();
            Ok(s)
        }
    }
}
