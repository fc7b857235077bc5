//! Seeded random cyclic posets: level sizes first, then each adjacent-level cover with
//! probability ½, rejecting samples that leave an element uncovered or covering nothing.

use rand::Rng;

use super::enumerate::poset_from_mask;
use super::HarnessError;
use crate::exactlin::Field;
use crate::poset::RankedPoset;
use crate::topology::is_cm;

/// A cyclic poset of the given rank whose non-top levels have `1..=max_level` elements.
pub fn random_cyclic<R: Rng>(rng: &mut R, rank: usize, max_level: usize) -> RankedPoset {
    assert!(rank >= 1 && max_level >= 1);
    loop {
        let mut profile: Vec<usize> = (1..rank).map(|_| rng.gen_range(1..=max_level)).collect();
        profile.push(1);
        let bits: usize = profile.windows(2).map(|w| w[0] * w[1]).sum();
        assert!(bits <= 64, "profile too wide for a 64-bit mask");
        let mut mask = 0u64;
        for b in 0..bits {
            if rng.gen_bool(0.5) {
                mask |= 1 << b;
            }
        }
        if let Some(p) = poset_from_mask(&profile, mask) {
            return p;
        }
    }
}

/// Samples until a Cohen-Macaulay poset turns up; gives up after `attempts` draws.
pub fn random_cm_poset<R: Rng, F: Field>(
    rng: &mut R,
    rank: usize,
    max_level: usize,
    field: &F,
    attempts: usize,
) -> Result<Option<RankedPoset>, HarnessError> {
    for _ in 0..attempts {
        let p = random_cyclic(rng, rank, max_level);
        if is_cm(&p, field)?.holds {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reproducible() {
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            (0..5).map(|_| random_cyclic(&mut rng, 3, 3)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in a {
            let q = random_cyclic(&mut rng, 3, 3);
            assert_eq!(p, q);
            assert!(q.is_cyclic());
            assert_eq!(q.max_rank(), 3);
        }
    }

    #[test]
    fn cm_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = random_cm_poset(&mut rng, 3, 3, &Rationals, 500).unwrap().unwrap();
        assert!(is_cm(&p, &Rationals).unwrap().holds);
    }
}
