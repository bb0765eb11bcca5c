use rand::Rng;

use crate::chromosome::BinaryChromosome;
use crate::error::{Error, Result};
use crate::layout::LayoutSpec;

/// A binary chromosome stored as one byte per allele.
///
/// Accepts the same lengths as the packed representation for a given layout
/// so that both sides of a differential run see the same error paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NaiveChromosome {
    alleles: Vec<u8>,
}

impl NaiveChromosome {
    fn check_length(length: usize, layout: &LayoutSpec) -> Result<()> {
        if length == 0 {
            return Err(Error::InvalidLength { length: 0, min: 1 });
        }
        let cap = layout.metadata_cap();
        if length as u64 > cap {
            return Err(Error::CapacityExceeded { length: length as u64, cap });
        }
        Ok(())
    }

    pub fn new_zero(length: usize, layout: LayoutSpec) -> Result<Self> {
        Self::check_length(length, &layout)?;
        Ok(Self { alleles: vec![0; length] })
    }

    pub fn new_random<R: Rng + ?Sized>(length: usize, layout: LayoutSpec, rng: &mut R) -> Result<Self> {
        Self::check_length(length, &layout)?;
        Ok(Self { alleles: (0..length).map(|_| rng.random::<bool>() as u8).collect() })
    }

    pub fn pack(bits: &[bool], layout: LayoutSpec) -> Result<Self> {
        Self::check_length(bits.len(), &layout)?;
        Ok(Self { alleles: bits.iter().map(|&b| b as u8).collect() })
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.alleles
    }

    pub fn size_in_bytes(&self) -> usize {
        self.alleles.len()
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.alleles.len() {
            return Err(Error::IndexOutOfRange { index, length: self.alleles.len() });
        }
        Ok(())
    }
}

impl BinaryChromosome for NaiveChromosome {
    fn len(&self) -> usize {
        self.alleles.len()
    }

    fn get_allele(&self, index: usize) -> Result<bool> {
        self.check_index(index)?;
        Ok(self.alleles[index] == 1)
    }

    fn set_allele(&mut self, index: usize, value: bool) -> Result<()> {
        self.check_index(index)?;
        self.alleles[index] = value as u8;
        Ok(())
    }

    fn flip_allele(&mut self, index: usize) -> Result<()> {
        self.check_index(index)?;
        self.alleles[index] ^= 1;
        Ok(())
    }

    fn exchange_prefix(&mut self, other: &mut Self, cut: usize) -> Result<()> {
        if self.alleles.len() != other.alleles.len() {
            return Err(Error::Incompatible(format!(
                "{} alleles vs {} alleles",
                self.alleles.len(),
                other.alleles.len()
            )));
        }
        self.check_index(cut)?;
        for k in 0..=cut {
            std::mem::swap(&mut self.alleles[k], &mut other.alleles[k]);
        }
        Ok(())
    }

    fn count_ones(&self) -> usize {
        self.alleles.iter().filter(|&&a| a == 1).count()
    }

    fn unpack(&self) -> Vec<bool> {
        self.alleles.iter().map(|&a| a == 1).collect()
    }
}
