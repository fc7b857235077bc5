use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_koszul::algebra::{build_graded, hilbert_direct, hilbert_via_cohomology, koszul_decide};
use poset_koszul::criteria::{is_uniform, weakly_cm, KPolicy};
use poset_koszul::exactlin::{FieldSpec, PrimeField, Rationals};
use poset_koszul::harness::{canonical_key, random_cyclic, PosetDocument};
use poset_koszul::poset::{RankedPoset, RawPoset};
use poset_koszul::topology::{is_cm, is_cm_alt, spectral_sequence};

fn sample(seed: u64, rank: usize, width: usize) -> RankedPoset {
    random_cyclic(&mut ChaCha8Rng::seed_from_u64(seed), rank, width)
}

/// Same poset under shuffled names, so the internal index order changes.
fn relabel(p: &RankedPoset, seed: u64) -> RankedPoset {
    let raw = p.to_raw();
    let mut fresh: Vec<String> = (0..raw.elements.len()).map(|i| format!("v{i:02}")).collect();
    fresh.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let rename = |old: &str| {
        raw.elements
            .iter()
            .position(|(n, _)| n == old)
            .map_or_else(|| old.to_string(), |i| fresh[i].clone())
    };
    RankedPoset::validate(&RawPoset {
        elements: raw.elements.iter().map(|(n, r)| (rename(n), *r)).collect(),
        covers: raw.covers.iter().map(|(a, b)| (rename(a), rename(b))).collect(),
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_survive_relabeling(seed in any::<u64>(), rank in 1usize..=4, width in 1usize..=3, shuffle in any::<u64>()) {
        let p = sample(seed, rank, width);
        let q = relabel(&p, shuffle);
        prop_assert_eq!(canonical_key(&p), canonical_key(&q));
        prop_assert_eq!(hilbert_direct(&build_graded(&p, &Rationals)), hilbert_direct(&build_graded(&q, &Rationals)));
        prop_assert_eq!(is_uniform(&p).holds, is_uniform(&q).holds);
        prop_assert_eq!(koszul_decide(&p, &Rationals).unwrap().koszul, koszul_decide(&q, &Rationals).unwrap().koszul);
    }

    #[test]
    fn hilbert_routes_agree(seed in any::<u64>(), rank in 1usize..=4, width in 1usize..=3) {
        let p = sample(seed, rank, width);
        let gf2 = PrimeField::new(2).unwrap();
        prop_assert_eq!(hilbert_direct(&build_graded(&p, &Rationals)), hilbert_via_cohomology(&p, &Rationals));
        prop_assert_eq!(hilbert_direct(&build_graded(&p, &gf2)), hilbert_via_cohomology(&p, &gf2));
    }

    #[test]
    fn cm_criteria_agree(seed in any::<u64>(), rank in 1usize..=4, width in 1usize..=3) {
        let p = sample(seed, rank, width);
        prop_assert_eq!(is_cm(&p, &Rationals).unwrap().holds, is_cm_alt(&p, &Rationals).unwrap().holds);
    }

    #[test]
    fn weakly_cm_iff_koszul(seed in any::<u64>(), rank in 1usize..=4, width in 1usize..=3) {
        let p = sample(seed, rank, width);
        let w = weakly_cm(&p, &Rationals, KPolicy::Derived).unwrap().holds;
        let k = koszul_decide(&p, &Rationals).unwrap().koszul;
        prop_assert_eq!(w, k, "{:?}", p);
        let cm = is_cm(&p, &Rationals).unwrap().holds;
        prop_assert_eq!(cm, is_uniform(&p).holds && k);
    }

    #[test]
    fn spectral_sequence_converges(seed in any::<u64>(), rank in 1usize..=4, width in 1usize..=3) {
        let p = sample(seed, rank, width);
        let s = spectral_sequence(&p, &Rationals).unwrap().summary(&p, &Rationals);
        prop_assert!(s.all_checks_pass());
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), rank in 1usize..=5, width in 1usize..=3) {
        let p = sample(seed, rank, width);
        let doc = PosetDocument::from_poset("sample", FieldSpec::Prime(5), &p);
        let text = doc.to_json();
        let back = PosetDocument::parse(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.to_poset().unwrap(), p);
    }

    #[test]
    fn double_dual_is_identity(seed in any::<u64>(), rank in 1usize..=4, width in 1usize..=3) {
        let p = sample(seed, rank, width);
        let d = p.dual().unwrap();
        prop_assert_eq!(canonical_key(&d.dual().unwrap()), canonical_key(&p));
    }
}
