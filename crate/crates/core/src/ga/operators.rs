use rand::Rng;

use crate::chromosome::{BinaryChromosome, PackedChromosome};
use crate::error::Result;

/// One-point crossover. With probability `pc` a cut allele `k` is drawn
/// uniformly from `[0, L)` and alleles `0..=k` are exchanged between the
/// parents in place. Returns the cut, or `None` when no crossover happened.
pub fn crossover<R: Rng + ?Sized>(
    first: &mut PackedChromosome,
    second: &mut PackedChromosome,
    pc: f64,
    rng: &mut R,
) -> Result<Option<usize>> {
    if rng.random::<f64>() >= pc {
        // still validate the pair so a bad call fails the same way either way
        if first.layout() != second.layout() || first.len() != second.len() {
            first.exchange_prefix(second, 0)?;
        }
        return Ok(None);
    }
    let cut = rng.random_range(0..first.len());
    first.exchange_prefix(second, cut)?;
    Ok(Some(cut))
}

/// Flips each allele independently with probability `pm`. Returns the
/// number of flips.
pub fn mutate<R: Rng + ?Sized>(chromosome: &mut PackedChromosome, pm: f64, rng: &mut R) -> usize {
    let mut flips = 0;
    for k in 0..chromosome.len() {
        if rng.random::<f64>() < pm {
            chromosome.flip_allele(k).expect("index below length");
            flips += 1;
        }
    }
    flips
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::layout::{LayoutSpec, Width};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const L: LayoutSpec = LayoutSpec::signed(Width::W32);

    #[test]
    fn zero_probability_crossover_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a0 = PackedChromosome::new_random(50, L, &mut rng).unwrap();
        let b0 = PackedChromosome::new_random(50, L, &mut rng).unwrap();
        let (mut a, mut b) = (a0.clone(), b0.clone());
        for _ in 0..100 {
            assert_eq!(crossover(&mut a, &mut b, 0.0, &mut rng).unwrap(), None);
        }
        assert_eq!((a, b), (a0, b0));
    }

    #[test]
    fn certain_crossover_of_complements_yields_complements() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let mut a = PackedChromosome::pack(&[true; 40], L).unwrap();
            let mut b = PackedChromosome::new_zero(40, L).unwrap();
            let cut = crossover(&mut a, &mut b, 1.0, &mut rng).unwrap().unwrap();
            let (ab, bb) = (a.unpack(), b.unpack());
            assert!(ab.iter().zip(&bb).all(|(x, y)| x != y));
            assert!(bb[..=cut].iter().all(|&x| x) && bb[cut + 1..].iter().all(|&x| !x));
        }
    }

    #[test]
    fn crossover_rejects_incompatible_pair_even_without_exchange() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut a = PackedChromosome::new_zero(10, L).unwrap();
        let mut b = PackedChromosome::new_zero(11, L).unwrap();
        for pc in [0.0, 1.0] {
            assert!(matches!(crossover(&mut a, &mut b, pc, &mut rng), Err(Error::Incompatible(_))));
        }
    }

    #[test]
    fn mutation_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let orig = PackedChromosome::new_random(77, L, &mut rng).unwrap();
        let mut c = orig.clone();
        assert_eq!(mutate(&mut c, 0.0, &mut rng), 0);
        assert_eq!(c, orig);
        assert_eq!(mutate(&mut c, 1.0, &mut rng), 77);
        assert!(c.unpack().iter().zip(orig.unpack()).all(|(x, y)| *x != y));
        assert!(c.is_canonical());
    }
}
