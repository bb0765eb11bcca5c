use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::naive::NaiveChromosome;
use crate::chromosome::{BinaryChromosome, PackedChromosome};
use crate::error::Result;
use crate::layout::LayoutSpec;

/// One step of a generated operation sequence. `target` selects the first
/// (0) or second (1) chromosome of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Op {
    Set { target: u8, index: usize, value: bool },
    Get { target: u8, index: usize },
    Flip { target: u8, index: usize },
    Exchange { cut: usize },
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Set { target, index, value } => write!(f, "set(c{target}, {index}, {})", *value as u8),
            Op::Get { target, index } => write!(f, "get(c{target}, {index})"),
            Op::Flip { target, index } => write!(f, "flip(c{target}, {index})"),
            Op::Exchange { cut } => write!(f, "exchange(c0, c1, {cut})"),
        }
    }
}

impl Op {
    /// Draws an operation: 40% set, 30% get, 20% flip, 10% exchange.
    fn generate<R: Rng + ?Sized>(length: usize, rng: &mut R) -> Op {
        let roll = rng.random_range(0..100u32);
        let index = rng.random_range(0..length);
        let target = rng.random_range(0..2u8);
        match roll {
            0..40 => Op::Set { target, index, value: rng.random() },
            40..70 => Op::Get { target, index },
            70..90 => Op::Flip { target, index },
            _ => Op::Exchange { cut: index },
        }
    }
}

/// Everything observable about a chromosome pair after one operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observation {
    /// Result of a `get`, if the step was one.
    pub value: Option<bool>,
    /// Error message, if the operation failed.
    pub error: Option<String>,
    pub bits: [String; 2],
    pub ones: [usize; 2],
    /// Whether the pair is in canonical form and survives a pack/unpack
    /// round trip unchanged. Always true for the naive side.
    pub round_trip: bool,
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn observe<C: BinaryChromosome>(pair: &[C; 2], outcome: Result<Option<bool>>, round_trip: bool) -> Observation {
    let (value, error) = match outcome {
        Ok(v) => (v, None),
        Err(e) => (None, Some(e.to_string())),
    };
    Observation {
        value,
        error,
        bits: [bit_string(&pair[0].unpack()), bit_string(&pair[1].unpack())],
        ones: [pair[0].count_ones(), pair[1].count_ones()],
        round_trip,
    }
}

fn apply<C: BinaryChromosome>(pair: &mut [C; 2], op: Op) -> Result<Option<bool>> {
    match op {
        Op::Set { target, index, value } => pair[target as usize].set_allele(index, value).map(|_| None),
        Op::Get { target, index } => pair[target as usize].get_allele(index).map(Some),
        Op::Flip { target, index } => pair[target as usize].flip_allele(index).map(|_| None),
        Op::Exchange { cut } => {
            let [a, b] = pair;
            a.exchange_prefix(b, cut).map(|_| None)
        }
    }
}

fn packed_round_trip(pair: &[PackedChromosome; 2]) -> bool {
    pair.iter().all(|c| c.is_canonical() && PackedChromosome::pack(&c.unpack(), c.layout()).as_ref() == Ok(c))
}

/// First step at which the two implementations disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    /// 0 is the initial construction; operations are numbered from 1.
    pub step: usize,
    pub op: Option<Op>,
    pub packed: Observation,
    pub naive: Observation,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.op {
            Some(op) => write!(f, "step {} ({op}):", self.step)?,
            None => write!(f, "construction:")?,
        }
        write!(f, " packed {:?} vs naive {:?}", self.packed, self.naive)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub layout: LayoutSpec,
    pub length: usize,
    pub steps: usize,
    pub seed: u64,
    pub divergence: Option<Divergence>,
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        self.divergence.is_none()
    }
}

/// A deliberate corruption of the packed side, for checking that the
/// harness notices. After operation `step` runs, allele `allele` of the
/// first packed chromosome is flipped behind the oracle's back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fault {
    pub step: usize,
    pub allele: usize,
}

/// Runs the same random operation sequence against a packed pair and a
/// naive pair built from identical bits, comparing observations after
/// every step.
pub fn differential_run(layout: LayoutSpec, length: usize, steps: usize, seed: u64) -> Result<Verdict> {
    differential_run_with_fault(layout, length, steps, seed, None)
}

pub fn differential_run_with_fault(
    layout: LayoutSpec,
    length: usize,
    steps: usize,
    seed: u64,
    fault: Option<Fault>,
) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let initial: [Vec<bool>; 2] = std::array::from_fn(|_| (0..length).map(|_| rng.random::<bool>()).collect());

    let mut packed = [PackedChromosome::pack(&initial[0], layout)?, PackedChromosome::pack(&initial[1], layout)?];
    let mut naive = [NaiveChromosome::pack(&initial[0], layout)?, NaiveChromosome::pack(&initial[1], layout)?];

    let verdict = |divergence| Verdict { layout, length, steps, seed, divergence };

    let p = observe(&packed, Ok(None), packed_round_trip(&packed));
    let n = observe(&naive, Ok(None), true);
    if p != n {
        return Ok(verdict(Some(Divergence { step: 0, op: None, packed: p, naive: n })));
    }

    for step in 1..=steps {
        let op = Op::generate(length, &mut rng);
        let p_out = apply(&mut packed, op);
        let n_out = apply(&mut naive, op);
        if let Some(f) = fault.filter(|f| f.step == step) {
            packed[0].flip_allele(f.allele)?;
        }
        let p = observe(&packed, p_out, packed_round_trip(&packed));
        let n = observe(&naive, n_out, true);
        if p != n {
            return Ok(verdict(Some(Divergence { step, op: Some(op), packed: p, naive: n })));
        }
    }
    Ok(verdict(None))
}
