//! The packed chromosome: a metadata word holding the allele count followed
//! by allele words, one allele per usable bit.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::layout::{calculate_array_dim, LayoutSpec, Width};

/// Operations shared by every binary chromosome representation.
///
/// The packed and the naive one-byte-per-allele representations both
/// implement this, which is what the differential harness relies on.
pub trait BinaryChromosome: Sized {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get_allele(&self, index: usize) -> Result<bool>;

    fn set_allele(&mut self, index: usize, value: bool) -> Result<()>;

    fn flip_allele(&mut self, index: usize) -> Result<()>;

    /// Swaps alleles `0..=cut` between `self` and `other`.
    fn exchange_prefix(&mut self, other: &mut Self, cut: usize) -> Result<()>;

    /// Number of alleles set to 1.
    fn count_ones(&self) -> usize;

    fn unpack(&self) -> Vec<bool>;
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Words {
    W8(Box<[u8]>),
    W16(Box<[u16]>),
    W32(Box<[u32]>),
    W64(Box<[u64]>),
}

macro_rules! with_words {
    ($words:expr, $w:ident => $body:expr) => {
        match $words {
            Words::W8($w) => $body,
            Words::W16($w) => $body,
            Words::W32($w) => $body,
            Words::W64($w) => $body,
        }
    };
}

impl Words {
    fn zeroed(width: Width, count: usize) -> Self {
        match width {
            Width::W8 => Words::W8(vec![0; count].into_boxed_slice()),
            Width::W16 => Words::W16(vec![0; count].into_boxed_slice()),
            Width::W32 => Words::W32(vec![0; count].into_boxed_slice()),
            Width::W64 => Words::W64(vec![0; count].into_boxed_slice()),
        }
    }

    #[inline]
    fn len(&self) -> usize {
        with_words!(self, w => w.len())
    }

    #[inline]
    #[allow(clippy::useless_conversion)]
    fn get(&self, i: usize) -> u64 {
        with_words!(self, w => u64::from(w[i]))
    }

    #[inline]
    fn set(&mut self, i: usize, value: u64) {
        with_words!(self, w => w[i] = value as _)
    }

    #[inline]
    fn xor(&mut self, i: usize, bits: u64) {
        let v = self.get(i) ^ bits;
        self.set(i, v)
    }

    fn count_ones_from(&self, start: usize) -> usize {
        with_words!(self, w => w[start..].iter().map(|x| x.count_ones() as usize).sum())
    }
}

/// A binary chromosome packed into machine words.
///
/// Element 0 stores the allele count. Every bit that does not carry an
/// allele (padding in element 1, and the sign bit of each element for signed
/// layouts) is kept at zero, so two chromosomes hold the same alleles
/// exactly when their words are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PackedChromosome {
    layout: LayoutSpec,
    length: usize,
    words: Words,
}

impl PackedChromosome {
    fn check_length(length: usize, layout: &LayoutSpec) -> Result<usize> {
        let cap = layout.metadata_cap();
        if (length as u64) > cap {
            return Err(Error::CapacityExceeded { length: length as u64, cap });
        }
        Ok(calculate_array_dim(length as u64, layout)? as usize)
    }

    /// A chromosome with every allele set to 0.
    pub fn new_zero(length: usize, layout: LayoutSpec) -> Result<Self> {
        let m = Self::check_length(length, &layout)?;
        let mut words = Words::zeroed(layout.width, m);
        words.set(0, length as u64);
        Ok(Self { layout, length, words })
    }

    /// A chromosome with independent, uniformly random alleles.
    ///
    /// Each data word is a random word ANDed with its allele mask: the first
    /// one has `offset` leading zeros over the usable bits, the others are
    /// all ones over the usable bits.
    pub fn new_random<R: Rng + ?Sized>(length: usize, layout: LayoutSpec, rng: &mut R) -> Result<Self> {
        let mut c = Self::new_zero(length, layout)?;
        let mask_first = layout.allele_mask(length as u64, 1);
        let mask_other = layout.usable_mask();
        c.words.set(1, mask_first & rng.next_u64());
        for i in 2..c.words.len() {
            c.words.set(i, mask_other & rng.next_u64());
        }
        Ok(c)
    }

    /// Packs a bit sequence, allele 0 first.
    pub fn pack(bits: &[bool], layout: LayoutSpec) -> Result<Self> {
        let mut c = Self::new_zero(bits.len(), layout)?;
        for (k, &bit) in bits.iter().enumerate() {
            if bit {
                c.toggle(k);
            }
        }
        Ok(c)
    }

    /// Rebuilds a chromosome from raw element values, rejecting anything
    /// that is not in canonical form.
    pub fn from_elements(layout: LayoutSpec, elements: &[u64]) -> Result<Self> {
        let Some(&meta) = elements.first() else {
            return Err(Error::InvalidLength { length: 0, min: 1 });
        };
        let length =
            usize::try_from(meta).map_err(|_| Error::CapacityExceeded { length: meta, cap: usize::MAX as u64 })?;
        let mut c = Self::new_zero(length, layout)?;
        if elements.len() != c.words.len() {
            return Err(Error::Incompatible(format!(
                "{} elements supplied, {} required for {length} alleles",
                elements.len(),
                c.words.len()
            )));
        }
        for (i, &value) in elements.iter().enumerate().skip(1) {
            if value & !layout.allele_mask(length as u64, i) != 0 {
                return Err(Error::Incompatible(format!(
                    "element {i} ({value:#x}) has bits outside the allele positions"
                )));
            }
            c.words.set(i, value);
        }
        Ok(c)
    }

    pub fn from_bit_str(s: &str, layout: LayoutSpec) -> Result<Self> {
        let bits = parse_bits(s)?;
        Self::pack(&bits, layout)
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.length).map(|k| if self.bit(k) { '1' } else { '0' }).collect()
    }

    #[inline]
    pub fn layout(&self) -> LayoutSpec {
        self.layout
    }

    /// Allele count as recorded in the metadata element.
    #[inline]
    pub fn metadata(&self) -> u64 {
        self.words.get(0)
    }

    /// Number of array elements `m`, metadata included.
    #[inline]
    pub fn element_count(&self) -> usize {
        self.words.len()
    }

    #[inline]
    pub fn element(&self, index: usize) -> u64 {
        self.words.get(index)
    }

    /// All elements widened to `u64`, metadata first.
    pub fn elements(&self) -> Vec<u64> {
        (0..self.words.len()).map(|i| self.words.get(i)).collect()
    }

    /// Storage occupied by the element array.
    pub fn size_in_bytes(&self) -> usize {
        self.words.len() * self.layout.width.bytes() as usize
    }

    /// True when every non-allele bit is zero and the metadata matches.
    pub fn is_canonical(&self) -> bool {
        self.metadata() == self.length as u64
            && (1..self.words.len()).all(|i| self.words.get(i) & !self.layout.allele_mask(self.length as u64, i) == 0)
    }

    #[inline]
    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.length {
            return Err(Error::IndexOutOfRange { index, length: self.length });
        }
        Ok(())
    }

    #[inline]
    fn locate(&self, index: usize) -> (usize, u64) {
        let addr = self.layout.address(self.length as u64, index as u64);
        (addr.element_index, 1u64 << addr.shift(&self.layout))
    }

    #[inline]
    fn bit(&self, index: usize) -> bool {
        let (i, mask) = self.locate(index);
        self.words.get(i) & mask != 0
    }

    #[inline]
    fn toggle(&mut self, index: usize) {
        let (i, mask) = self.locate(index);
        self.words.xor(i, mask);
    }
}

impl BinaryChromosome for PackedChromosome {
    #[inline]
    fn len(&self) -> usize {
        self.length
    }

    fn get_allele(&self, index: usize) -> Result<bool> {
        self.check_index(index)?;
        Ok(self.bit(index))
    }

    fn set_allele(&mut self, index: usize, value: bool) -> Result<()> {
        self.check_index(index)?;
        if self.bit(index) != value {
            self.toggle(index);
        }
        Ok(())
    }

    fn flip_allele(&mut self, index: usize) -> Result<()> {
        self.check_index(index)?;
        self.toggle(index);
        Ok(())
    }

    fn exchange_prefix(&mut self, other: &mut Self, cut: usize) -> Result<()> {
        if self.layout != other.layout || self.length != other.length {
            return Err(Error::Incompatible(format!(
                "{}/{} alleles vs {}/{} alleles",
                self.layout, self.length, other.layout, other.length
            )));
        }
        self.check_index(cut)?;
        let addr = self.layout.address(self.length as u64, cut as u64);
        for i in 1..addr.element_index {
            let a = self.words.get(i);
            self.words.set(i, other.words.get(i));
            other.words.set(i, a);
        }
        // from the top usable bit down to the cut bit, inclusive
        let shift = addr.shift(&self.layout);
        let mask = self.layout.usable_mask() & !((1u64 << shift) - 1);
        let i = addr.element_index;
        let diff = (self.words.get(i) ^ other.words.get(i)) & mask;
        self.words.xor(i, diff);
        other.words.xor(i, diff);
        Ok(())
    }

    fn count_ones(&self) -> usize {
        self.words.count_ones_from(1)
    }

    fn unpack(&self) -> Vec<bool> {
        (0..self.length).map(|k| self.bit(k)).collect()
    }
}

impl fmt::Display for PackedChromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl fmt::Debug for PackedChromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PackedChromosome")
            .field("layout", &self.layout.to_string())
            .field("length", &self.length)
            .field("elements", &self.elements())
            .finish()
    }
}

/// Parses a `'0'`/`'1'` string, allele 0 first.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::InvalidBit(other)),
        })
        .collect()
}

impl FromStr for PackedChromosome {
    type Err = Error;

    /// Parses a bit string into the unsigned 64-bit layout.
    fn from_str(s: &str) -> Result<Self> {
        Self::from_bit_str(s, LayoutSpec::unsigned(Width::W64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const U8: LayoutSpec = LayoutSpec::unsigned(Width::W8);
    const S8: LayoutSpec = LayoutSpec::signed(Width::W8);
    const FIGURE: [bool; 10] = [true, false, true, false, false, true, true, false, false, false];

    #[test]
    fn figure_layouts() {
        let u = PackedChromosome::pack(&FIGURE, U8).unwrap();
        assert_eq!(u.elements(), vec![10, 2, 152]);
        assert_eq!(u.element(1), 0b0000_0010);
        assert_eq!(u.element(2), 0b1001_1000);
        let s = PackedChromosome::pack(&FIGURE, S8).unwrap();
        assert_eq!(s.elements(), vec![10, 5, 24]);
        assert_eq!(u.unpack(), FIGURE);
        assert_eq!(s.unpack(), FIGURE);
        assert_eq!(u.to_bit_string(), "1010011000");
    }

    #[test]
    fn new_zero_examples() {
        assert_eq!(PackedChromosome::new_zero(10, U8).unwrap().elements(), vec![10, 0, 0]);
        assert_eq!(PackedChromosome::new_zero(10, S8).unwrap().elements(), vec![10, 0, 0]);
        assert_eq!(PackedChromosome::new_zero(256, U8), Err(Error::CapacityExceeded { length: 256, cap: 255 }));
        assert_eq!(PackedChromosome::new_zero(128, S8), Err(Error::CapacityExceeded { length: 128, cap: 127 }));
        assert!(matches!(PackedChromosome::new_zero(0, U8), Err(Error::InvalidLength { .. })));
        assert!(PackedChromosome::new_zero(255, U8).is_ok());
    }

    #[test]
    fn get_and_set_examples() {
        let f = PackedChromosome::pack(&FIGURE, U8).unwrap();
        assert!(f.get_allele(0).unwrap());
        assert!(!f.get_allele(9).unwrap());
        assert_eq!(f.get_allele(10), Err(Error::IndexOutOfRange { index: 10, length: 10 }));

        let mut c = PackedChromosome::new_zero(10, U8).unwrap();
        c.set_allele(0, true).unwrap();
        assert_eq!(c.elements(), vec![10, 2, 0]);
        assert!(c.get_allele(0).unwrap());
        let before = c.clone();
        c.set_allele(3, false).unwrap();
        assert_eq!(c, before);
        assert!(c.set_allele(10, true).is_err());
    }

    #[test]
    fn flip_examples() {
        let mut c = PackedChromosome::new_zero(10, U8).unwrap();
        c.flip_allele(9).unwrap();
        assert_eq!(c.elements(), vec![10, 0, 1]);
        c.flip_allele(9).unwrap();
        assert_eq!(c, PackedChromosome::new_zero(10, U8).unwrap());
        for k in 0..10 {
            c.flip_allele(k).unwrap();
        }
        assert_eq!(c.count_ones(), 10);
        assert!(c.is_canonical());
        assert!(c.flip_allele(10).is_err());
    }

    #[test]
    fn exchange_complementary_parents() {
        let ones = PackedChromosome::pack(&[true; 4], U8).unwrap();
        let zeros = PackedChromosome::new_zero(4, U8).unwrap();
        let (mut a, mut b) = (ones.clone(), zeros.clone());
        a.exchange_prefix(&mut b, 1).unwrap();
        assert_eq!(a.to_bit_string(), "0011");
        assert_eq!(b.to_bit_string(), "1100");

        let (mut a, mut b) = (ones.clone(), zeros.clone());
        a.exchange_prefix(&mut b, 3).unwrap();
        assert_eq!((a, b), (zeros, ones));
    }

    #[test]
    fn exchange_rejects_mismatch() {
        let mut a = PackedChromosome::new_zero(10, U8).unwrap();
        let mut b = PackedChromosome::new_zero(10, S8).unwrap();
        assert!(matches!(a.exchange_prefix(&mut b, 0), Err(Error::Incompatible(_))));
        let mut c = PackedChromosome::new_zero(11, U8).unwrap();
        assert!(matches!(a.exchange_prefix(&mut c, 0), Err(Error::Incompatible(_))));
        let mut d = PackedChromosome::new_zero(10, U8).unwrap();
        assert!(matches!(a.exchange_prefix(&mut d, 10), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn exchange_across_many_words() {
        let layout = LayoutSpec::signed(Width::W16);
        let ones = PackedChromosome::pack(&[true; 100], layout).unwrap();
        let zeros = PackedChromosome::new_zero(100, layout).unwrap();
        for cut in 0..100 {
            let (mut a, mut b) = (ones.clone(), zeros.clone());
            a.exchange_prefix(&mut b, cut).unwrap();
            assert!(a.is_canonical() && b.is_canonical());
            assert_eq!(a.count_ones(), 100 - (cut + 1));
            assert_eq!(b.count_ones(), cut + 1);
            let bits = b.unpack();
            assert!(bits[..=cut].iter().all(|&x| x));
            assert!(bits[cut + 1..].iter().all(|&x| !x));
        }
    }

    #[test]
    fn random_is_masked_and_seed_deterministic() {
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = PackedChromosome::new_random(10, U8, &mut rng).unwrap();
            assert_eq!(c.element(1) & 0b1111_1100, 0);
            assert!(c.is_canonical());
        }
        let a = PackedChromosome::new_random(16, U8, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = PackedChromosome::new_random(16, U8, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
        for layout in LayoutSpec::all() {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let c = PackedChromosome::new_random(37, layout, &mut rng).unwrap();
            assert!(c.is_canonical(), "{layout}");
            assert_eq!(c.metadata(), 37);
        }
    }

    #[test]
    fn from_elements_validates_canonical_form() {
        let c = PackedChromosome::from_elements(U8, &[10, 2, 152]).unwrap();
        assert_eq!(c.unpack(), FIGURE);
        // padding bit set
        assert!(PackedChromosome::from_elements(U8, &[10, 6, 152]).is_err());
        // sign bit set on a signed layout
        assert!(PackedChromosome::from_elements(S8, &[10, 5, 0x98]).is_err());
        // wrong element count
        assert!(PackedChromosome::from_elements(U8, &[10, 2]).is_err());
        assert!(PackedChromosome::from_elements(U8, &[]).is_err());
    }

    #[test]
    fn bit_strings() {
        let c: PackedChromosome = "1010011000".parse().unwrap();
        assert_eq!(c.to_string(), "1010011000");
        assert_eq!(c.element_count(), 2);
        assert_eq!(parse_bits("10x"), Err(Error::InvalidBit('x')));
    }

    #[test]
    fn storage_size_is_m_times_width() {
        let c = PackedChromosome::new_zero(10, U8).unwrap();
        assert_eq!(c.size_in_bytes(), 3);
        let c = PackedChromosome::new_zero(1000, LayoutSpec::unsigned(Width::W64)).unwrap();
        assert_eq!(c.size_in_bytes(), (1 + 16) * 8);
    }
}
