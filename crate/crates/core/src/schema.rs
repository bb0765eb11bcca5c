//! Schemata over `{0, 1, *}`: order, defining length, the schemata count
//! and the schema theorem expectation, plus membership counting.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::chromosome::{BinaryChromosome, PackedChromosome};
use crate::error::{Error, Result};

/// A template over `{0, 1, *}`; `None` is the don't-care symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schema {
    symbols: Vec<Option<bool>>,
}

impl Schema {
    pub fn new(symbols: Vec<Option<bool>>) -> Self {
        Self { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Option<bool>] {
        &self.symbols
    }

    fn fixed_positions(&self) -> impl DoubleEndedIterator<Item = (usize, bool)> + '_ {
        self.symbols.iter().enumerate().filter_map(|(i, s)| s.map(|v| (i, v)))
    }

    /// Number of fixed positions, `o(H)`.
    pub fn order(&self) -> usize {
        self.fixed_positions().count()
    }

    /// Distance between the first and last fixed positions, `δ(H)`; 0 when
    /// fewer than two positions are fixed.
    pub fn defining_length(&self) -> usize {
        match (self.fixed_positions().next(), self.fixed_positions().next_back()) {
            (Some((first, _)), Some((last, _))) => last - first,
            _ => 0,
        }
    }

    pub fn matches<C: BinaryChromosome>(&self, chromosome: &C) -> Result<bool> {
        if self.len() != chromosome.len() {
            return Err(Error::IncompatibleSchema { schema: self.len(), chromosome: chromosome.len() });
        }
        for (i, v) in self.fixed_positions() {
            if chromosome.get_allele(i)? != v {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl FromStr for Schema {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Some(false)),
                '1' => Ok(Some(true)),
                '*' => Ok(None),
                other => Err(Error::InvalidSchemaSymbol(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(Schema::new)
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            let c = match s {
                Some(false) => '0',
                Some(true) => '1',
                None => '*',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `(k + 1)^L`, the number of distinct schemata over an alphabet of
/// cardinality `k` for chromosomes of length `L`.
pub fn max_schemata_count(cardinality: u32, length: u32) -> BigUint {
    BigUint::from(cardinality as u64 + 1).pow(length)
}

/// Observed quantities for one schema at generation `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchemaTheoremInputs {
    /// `m(H, t)`
    pub count_now: f64,
    /// `favg(H)`
    pub schema_avg_fitness: f64,
    /// `favg`
    pub population_avg_fitness: f64,
    pub chromosome_length: usize,
    pub crossover_probability: f64,
    pub mutation_probability: f64,
}

fn check_probability(field: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Config { field, reason: format!("{p} is not in [0, 1]") });
    }
    Ok(())
}

fn check_defining_length(schema: &Schema, length: usize) -> Result<()> {
    if length < 2 {
        return Err(Error::InvalidLength { length: length as u64, min: 2 });
    }
    if schema.defining_length() > length - 1 {
        return Err(Error::IncompatibleSchema { schema: schema.len(), chromosome: length });
    }
    Ok(())
}

/// Probability that one-point crossover cuts inside the schema,
/// `δ(H) / (L - 1) * pc`.
pub fn disruption_probability(schema: &Schema, length: usize, crossover_probability: f64) -> Result<f64> {
    check_defining_length(schema, length)?;
    check_probability("crossover_probability", crossover_probability)?;
    Ok(schema.defining_length() as f64 / (length - 1) as f64 * crossover_probability)
}

/// Schema theorem expectation for `m(H, t + 1)`:
///
/// `m(H,t) * favg(H) / favg * (1 - δ(H)/(L-1) * pc) * (1 - pm)^o(H)`
pub fn expected_schema_count(schema: &Schema, inputs: &SchemaTheoremInputs) -> Result<f64> {
    let SchemaTheoremInputs {
        count_now,
        schema_avg_fitness,
        population_avg_fitness,
        chromosome_length,
        crossover_probability,
        mutation_probability,
    } = *inputs;
    check_probability("mutation_probability", mutation_probability)?;
    let disruption = disruption_probability(schema, chromosome_length, crossover_probability)?;
    if !(count_now >= 0.0 && count_now.is_finite()) {
        return Err(Error::Config {
            field: "count_now",
            reason: format!("{count_now} is not a finite non-negative count"),
        });
    }
    if !(schema_avg_fitness >= 0.0 && schema_avg_fitness.is_finite()) {
        return Err(Error::Config {
            field: "schema_avg_fitness",
            reason: format!("{schema_avg_fitness} is not a finite non-negative fitness"),
        });
    }
    if population_avg_fitness == 0.0 {
        return Err(Error::DegenerateFitness("population average fitness is zero".into()));
    }
    if !(population_avg_fitness > 0.0 && population_avg_fitness.is_finite()) {
        return Err(Error::Config {
            field: "population_avg_fitness",
            reason: format!("{population_avg_fitness} is not a finite positive fitness"),
        });
    }
    let survival = (1.0 - mutation_probability).powi(schema.order() as i32);
    Ok(count_now * (schema_avg_fitness / population_avg_fitness) * (1.0 - disruption) * survival)
}

/// Number of chromosomes that belong to `schema`, `m(H, t)`.
pub fn count_matching<'a, I>(members: I, schema: &Schema) -> Result<usize>
where
    I: IntoIterator<Item = &'a PackedChromosome>,
{
    let mut count = 0;
    for c in members {
        if schema.matches(c)? {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{LayoutSpec, Width};

    fn inputs(m: f64, fh: f64, f: f64, l: usize, pc: f64, pm: f64) -> SchemaTheoremInputs {
        SchemaTheoremInputs {
            count_now: m,
            schema_avg_fitness: fh,
            population_avg_fitness: f,
            chromosome_length: l,
            crossover_probability: pc,
            mutation_probability: pm,
        }
    }

    #[test]
    fn order_and_defining_length() {
        let s: Schema = "1********0".parse().unwrap();
        assert_eq!((s.order(), s.defining_length()), (2, 9));
        let s: Schema = "**1**".parse().unwrap();
        assert_eq!((s.order(), s.defining_length()), (1, 0));
        let s: Schema = "*****".parse().unwrap();
        assert_eq!((s.order(), s.defining_length()), (0, 0));
        assert_eq!(s.to_string(), "*****");
        assert_eq!("1*x".parse::<Schema>(), Err(Error::InvalidSchemaSymbol('x')));
    }

    #[test]
    fn schemata_counts() {
        assert_eq!(max_schemata_count(2, 3), BigUint::from(27u32));
        assert_eq!(max_schemata_count(2, 10), BigUint::from(59049u32));
        assert_eq!(max_schemata_count(2, 200).bits(), 317);
    }

    #[test]
    fn expectation_examples() {
        let neutral: Schema = "*****".parse().unwrap();
        let v = expected_schema_count(&neutral, &inputs(7.0, 2.0, 2.0, 5, 0.9, 0.3)).unwrap();
        assert_eq!(v, 7.0);

        let s: Schema = "1*1********".parse().unwrap();
        let v = expected_schema_count(&s, &inputs(10.0, 1.2, 1.0, 11, 0.8, 0.01)).unwrap();
        assert!((v - 9.8794).abs() < 1e-4, "{v}");

        let v = expected_schema_count(&s, &inputs(10.0, 1.5, 1.0, 11, 0.0, 0.0)).unwrap();
        assert_eq!(v, 15.0);
    }

    #[test]
    fn expectation_errors() {
        let s: Schema = "1*1".parse().unwrap();
        assert!(matches!(
            expected_schema_count(&s, &inputs(1.0, 1.0, 0.0, 3, 0.5, 0.1)),
            Err(Error::DegenerateFitness(_))
        ));
        assert!(matches!(
            expected_schema_count(&"1".parse().unwrap(), &inputs(1.0, 1.0, 1.0, 1, 0.5, 0.1)),
            Err(Error::InvalidLength { .. })
        ));
        // δ = 2 does not fit L = 2
        assert!(expected_schema_count(&s, &inputs(1.0, 1.0, 1.0, 2, 0.5, 0.1)).is_err());
        assert!(expected_schema_count(&s, &inputs(1.0, 1.0, 1.0, 3, 1.5, 0.1)).is_err());
        assert!(expected_schema_count(&s, &inputs(1.0, 1.0, 1.0, 3, 0.5, -0.1)).is_err());
    }

    #[test]
    fn disruption_examples() {
        let tight: Schema = "**1**".parse().unwrap();
        assert_eq!(disruption_probability(&tight, 5, 0.7).unwrap(), 0.0);
        let wide: Schema = "1***1".parse().unwrap();
        assert_eq!(disruption_probability(&wide, 5, 1.0).unwrap(), 1.0);
        let five: Schema = "1****1".parse().unwrap();
        let short = disruption_probability(&five, 11, 0.8).unwrap();
        let long = disruption_probability(&five, 101, 0.8).unwrap();
        assert!(long < short);
    }

    #[test]
    fn counting_members() {
        let layout = LayoutSpec::unsigned(Width::W8);
        let zeros: Vec<_> = (0..6).map(|_| PackedChromosome::new_zero(10, layout).unwrap()).collect();
        let any: Schema = "**********".parse().unwrap();
        assert_eq!(count_matching(&zeros, &any).unwrap(), 6);
        let lead_one: Schema = "1*********".parse().unwrap();
        assert_eq!(count_matching(&zeros, &lead_one).unwrap(), 0);
        let short: Schema = "1**".parse().unwrap();
        assert_eq!(count_matching(&zeros, &short), Err(Error::IncompatibleSchema { schema: 3, chromosome: 10 }));
    }
}
