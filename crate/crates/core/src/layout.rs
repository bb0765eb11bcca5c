//! Element layout and the dimension/capacity/utilization arithmetic of the
//! packed representation.
//!
//! A chromosome of `L` alleles is stored as `m = 1 + ceil(L / n)` machine
//! words of `W` bits each. Word 0 holds `L`; the remaining words hold one
//! allele per usable bit. Signed layouts give up the most significant bit of
//! every word, so `n = W - 1` for them and `n = W` otherwise.
//!
//! Allele `k` lives at global bit position `g = offset + k` where
//! `offset = (n - L mod n) mod n`, which pushes the unused padding into the
//! high usable bits of word 1. Within a word, usable offset 0 is the most
//! significant usable bit, so alleles read left to right.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Array capacity used by the reference capacity tables.
pub const DEFAULT_ARRAY_CAPACITY: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u32", try_from = "u32")]
pub enum Width {
    W8,
    W16,
    W32,
    W64,
}

impl Width {
    pub const ALL: [Width; 4] = [Width::W8, Width::W16, Width::W32, Width::W64];

    #[inline]
    pub const fn bits(self) -> u32 {
        match self {
            Width::W8 => 8,
            Width::W16 => 16,
            Width::W32 => 32,
            Width::W64 => 64,
        }
    }

    #[inline]
    pub const fn bytes(self) -> u32 {
        self.bits() / 8
    }
}

impl TryFrom<u32> for Width {
    type Error = Error;

    fn try_from(bits: u32) -> Result<Self> {
        match bits {
            8 => Ok(Width::W8),
            16 => Ok(Width::W16),
            32 => Ok(Width::W32),
            64 => Ok(Width::W64),
            other => Err(Error::InvalidWidth(other)),
        }
    }
}

impl From<Width> for u32 {
    fn from(w: Width) -> u32 {
        w.bits()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signedness {
    Unsigned,
    Signed,
}

/// Element width and signedness of a packed chromosome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LayoutSpec {
    pub width: Width,
    pub signedness: Signedness,
}

impl LayoutSpec {
    pub const fn new(width: Width, signedness: Signedness) -> Self {
        Self { width, signedness }
    }

    pub const fn unsigned(width: Width) -> Self {
        Self::new(width, Signedness::Unsigned)
    }

    pub const fn signed(width: Width) -> Self {
        Self::new(width, Signedness::Signed)
    }

    /// Builds a layout from a raw bit width.
    pub fn from_bits(bits: u32, signed: bool) -> Result<Self> {
        let signedness = if signed { Signedness::Signed } else { Signedness::Unsigned };
        Ok(Self::new(Width::try_from(bits)?, signedness))
    }

    /// All eight supported layouts, unsigned first.
    pub fn all() -> impl Iterator<Item = LayoutSpec> {
        [Signedness::Unsigned, Signedness::Signed]
            .into_iter()
            .flat_map(|s| Width::ALL.into_iter().map(move |w| LayoutSpec::new(w, s)))
    }

    /// Element width `W` in bits.
    #[inline]
    pub const fn element_bits(&self) -> u32 {
        self.width.bits()
    }

    /// Bits per element available for alleles (`n`).
    #[inline]
    pub const fn usable_bits(&self) -> u32 {
        match self.signedness {
            Signedness::Unsigned => self.width.bits(),
            Signedness::Signed => self.width.bits() - 1,
        }
    }

    #[inline]
    pub const fn is_signed(&self) -> bool {
        matches!(self.signedness, Signedness::Signed)
    }

    /// Mask of the `n` low bits of an element that may carry alleles.
    #[inline]
    pub const fn usable_mask(&self) -> u64 {
        low_mask(self.usable_bits())
    }

    /// Largest length the metadata element can record: `2^n - 1`.
    #[inline]
    pub const fn metadata_cap(&self) -> u64 {
        low_mask(self.usable_bits())
    }

    /// Padding bits in the first data element, `(n - L mod n) mod n`.
    #[inline]
    pub const fn offset(&self, length: u64) -> u32 {
        let n = self.usable_bits() as u64;
        ((n - length % n) % n) as u32
    }

    /// Address of allele `index` in a chromosome of `length` alleles.
    ///
    /// No range check; callers validate `index < length`.
    #[inline]
    pub fn address(&self, length: u64, index: u64) -> BitAddress {
        let n = self.usable_bits() as u64;
        let global = self.offset(length) as u64 + index;
        BitAddress { element_index: (global / n) as usize + 1, usable_offset: (global % n) as u32 }
    }

    /// Mask of the allele bits inside data element `element_index` (≥ 1).
    pub fn allele_mask(&self, length: u64, element_index: usize) -> u64 {
        debug_assert!(element_index >= 1);
        if element_index == 1 {
            self.usable_mask() >> self.offset(length)
        } else {
            self.usable_mask()
        }
    }
}

impl fmt::Display for LayoutSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = if self.is_signed() { 's' } else { 'u' };
        write!(f, "{prefix}{}", self.width.bits())
    }
}

impl FromStr for LayoutSpec {
    type Err = Error;

    /// Parses the `u8` / `s32` short form.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (signed, digits) = match s.split_at_checked(1) {
            Some(("u" | "U", rest)) => (false, rest),
            Some(("s" | "S" | "i" | "I", rest)) => (true, rest),
            _ => {
                return Err(Error::Config { field: "layout", reason: format!("{s:?} is not of the form u8, s16, ...") })
            }
        };
        let bits = digits
            .parse::<u32>()
            .map_err(|_| Error::Config { field: "layout", reason: format!("{s:?} has no numeric width") })?;
        LayoutSpec::from_bits(bits, signed)
    }
}

#[inline]
const fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Location of one allele: a data element and a position among its usable
/// bits, counted from the most significant usable bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitAddress {
    pub element_index: usize,
    pub usable_offset: u32,
}

impl BitAddress {
    /// Shift of the addressed bit from the least significant end of the word.
    #[inline]
    pub fn shift(&self, layout: &LayoutSpec) -> u32 {
        layout.usable_bits() - 1 - self.usable_offset
    }
}

/// Number of elements needed for `length` alleles, metadata included.
pub fn calculate_array_dim(length: u64, layout: &LayoutSpec) -> Result<u64> {
    if length == 0 {
        return Err(Error::InvalidLength { length, min: 1 });
    }
    Ok(1 + length.div_ceil(layout.usable_bits() as u64))
}

/// Allele bits available in an array of `capacity` elements once the
/// metadata element is set aside: `n * (M - 1)`.
pub fn array_capacity_bits(layout: &LayoutSpec, capacity: u64) -> Result<u128> {
    if capacity < 2 {
        return Err(Error::InvalidCapacity { capacity });
    }
    Ok(layout.usable_bits() as u128 * (capacity as u128 - 1))
}

/// Longest chromosome representable with arrays of at most `capacity`
/// elements: the smaller of the metadata cap and the allele bit capacity.
pub fn max_chromosome_length(layout: &LayoutSpec, capacity: u64) -> Result<u64> {
    let bits = array_capacity_bits(layout, capacity)?;
    Ok(bits.min(layout.metadata_cap() as u128) as u64)
}

/// Exact ratio of allele bits to allocated bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Utilization {
    pub allele_bits: u128,
    pub allocated_bits: u128,
}

impl Utilization {
    pub fn ratio(&self) -> f64 {
        self.allele_bits as f64 / self.allocated_bits as f64
    }

    pub fn percent(&self) -> f64 {
        100.0 * self.ratio()
    }

    /// Percentage truncated (not rounded) to hundredths, as an integer
    /// count of 0.01% steps.
    pub fn percent_hundredths_truncated(&self) -> u128 {
        self.allele_bits * 10_000 / self.allocated_bits
    }

    /// Percentage text with two truncated decimals, e.g. `"96.59"`.
    pub fn percent_string(&self) -> String {
        let h = self.percent_hundredths_truncated();
        format!("{}.{:02}", h / 100, h % 100)
    }
}

/// Fraction of allocated bits holding alleles, `L / (m * W)`.
///
/// The denominator uses the full element width even for signed layouts.
pub fn memory_utilization(length: u64, layout: &LayoutSpec) -> Result<Utilization> {
    let m = calculate_array_dim(length, layout)?;
    Ok(Utilization { allele_bits: length as u128, allocated_bits: m as u128 * layout.element_bits() as u128 })
}

#[cfg(test)]
mod tests {
    use super::*;

    const U8: LayoutSpec = LayoutSpec::unsigned(Width::W8);
    const S8: LayoutSpec = LayoutSpec::signed(Width::W8);

    #[test]
    fn usable_bits_follow_signedness() {
        for layout in LayoutSpec::all() {
            let w = layout.element_bits();
            let expected = if layout.is_signed() { w - 1 } else { w };
            assert_eq!(layout.usable_bits(), expected, "{layout}");
        }
        assert_eq!(LayoutSpec::all().count(), 8);
    }

    #[test]
    fn array_dim_examples() {
        assert_eq!(calculate_array_dim(10, &U8).unwrap(), 3);
        assert_eq!(calculate_array_dim(255, &U8).unwrap(), 33);
        assert_eq!(calculate_array_dim(8, &U8).unwrap(), 2);
        assert_eq!(calculate_array_dim(10, &S8).unwrap(), 3);
        assert_eq!(calculate_array_dim(0, &U8), Err(Error::InvalidLength { length: 0, min: 1 }));
        // no overflow at the very top of the range
        let u64l = LayoutSpec::unsigned(Width::W64);
        assert_eq!(calculate_array_dim(u64::MAX, &u64l).unwrap(), 1 + (1 << 58));
    }

    #[test]
    fn max_length_examples() {
        assert_eq!(max_chromosome_length(&U8, 1 << 16).unwrap(), 255);
        assert_eq!(max_chromosome_length(&S8, 1 << 16).unwrap(), 127);
        assert_eq!(max_chromosome_length(&U8, 2).unwrap(), 8);
        assert_eq!(max_chromosome_length(&U8, 1), Err(Error::InvalidCapacity { capacity: 1 }));
        let u16l = LayoutSpec::unsigned(Width::W16);
        let s16l = LayoutSpec::signed(Width::W16);
        assert_eq!(max_chromosome_length(&u16l, 1 << 16).unwrap(), 65535);
        assert_eq!(max_chromosome_length(&s16l, 1 << 16).unwrap(), 32767);
        let u32l = LayoutSpec::unsigned(Width::W32);
        assert_eq!(max_chromosome_length(&u32l, 1 << 16).unwrap(), 32 * 65535);
    }

    #[test]
    fn utilization_examples() {
        let u = memory_utilization(255, &U8).unwrap();
        assert_eq!(u.percent_string(), "96.59");
        assert!((u.ratio() - 0.9659).abs() < 1e-4);
        let s = memory_utilization(127, &S8).unwrap();
        assert_eq!(s.allocated_bits, 160);
        assert_eq!(s.percent_string(), "79.37");
        assert_eq!(memory_utilization(8, &U8).unwrap().ratio(), 0.5);
    }

    #[test]
    fn offset_normalizes_exact_fit_to_zero() {
        assert_eq!(U8.offset(8), 0);
        assert_eq!(U8.offset(16), 0);
        assert_eq!(U8.offset(10), 6);
        assert_eq!(S8.offset(10), 4);
        assert_eq!(S8.offset(14), 0);
    }

    #[test]
    fn addresses_match_the_left_to_right_figure_layout() {
        // allele 0 of a 10-allele u8 chromosome: element 1, usable offset 6
        let a = U8.address(10, 0);
        assert_eq!(a, BitAddress { element_index: 1, usable_offset: 6 });
        assert_eq!(a.shift(&U8), 1);
        let last = U8.address(10, 9);
        assert_eq!(last, BitAddress { element_index: 2, usable_offset: 7 });
        assert_eq!(last.shift(&U8), 0);
        // signed: allele 3 opens element 2 at the top of its 7 usable bits
        let a = S8.address(10, 3);
        assert_eq!(a, BitAddress { element_index: 2, usable_offset: 0 });
        assert_eq!(a.shift(&S8), 6);
    }

    #[test]
    fn allele_masks() {
        assert_eq!(U8.allele_mask(10, 1), 0b0000_0011);
        assert_eq!(U8.allele_mask(10, 2), 0xff);
        assert_eq!(S8.allele_mask(10, 1), 0b0000_0111);
        assert_eq!(S8.allele_mask(10, 2), 0x7f);
        let s64 = LayoutSpec::signed(Width::W64);
        assert_eq!(s64.usable_mask(), i64::MAX as u64);
        assert_eq!(LayoutSpec::unsigned(Width::W64).usable_mask(), u64::MAX);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for layout in LayoutSpec::all() {
            assert_eq!(layout.to_string().parse::<LayoutSpec>().unwrap(), layout);
        }
        assert!("u12".parse::<LayoutSpec>().is_err());
        assert!("x8".parse::<LayoutSpec>().is_err());
        assert_eq!("i16".parse::<LayoutSpec>().unwrap(), LayoutSpec::signed(Width::W16));
    }

    #[test]
    fn metadata_caps() {
        assert_eq!(U8.metadata_cap(), 255);
        assert_eq!(S8.metadata_cap(), 127);
        assert_eq!(LayoutSpec::signed(Width::W32).metadata_cap(), i32::MAX as u64);
        assert_eq!(LayoutSpec::unsigned(Width::W64).metadata_cap(), u64::MAX);
    }
}
