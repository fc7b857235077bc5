use serde::Serialize;

use super::reduced_cohomology;
use crate::exactlin::Field;
use crate::poset::{PosetError, RankedPoset};

/// An open interval `(a, b)` with nonzero reduced cohomology below its top degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalWitness {
    pub lower: String,
    pub upper: String,
    pub degree: i64,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmVerdict {
    pub holds: bool,
    pub witnesses: Vec<IntervalWitness>,
}

/// Direct check: every open interval of a cyclic poset has reduced cohomology only in its
/// top dimension.
pub fn is_cm<F: Field>(poset: &RankedPoset, field: &F) -> Result<CmVerdict, PosetError> {
    poset.require_cyclic()?;
    let mut witnesses = Vec::new();
    for a in 0..poset.len() {
        for b in 0..poset.len() {
            if !poset.lt(a, b) {
                continue;
            }
            let interval = poset.open_interval(a, b);
            let h = reduced_cohomology(poset, &interval.members, field);
            let top = h.start + h.cohomology.len() as i64 - 1;
            for (i, &d) in h.cohomology.iter().enumerate() {
                let degree = h.start + i as i64;
                if d != 0 && degree != top {
                    witnesses.push(IntervalWitness {
                        lower: poset.name(a).to_string(),
                        upper: poset.name(b).to_string(),
                        degree,
                        dimension: d,
                    });
                }
            }
        }
    }
    Ok(CmVerdict {
        holds: witnesses.is_empty(),
        witnesses,
    })
}

/// A failure of the truncated-interval criterion: `H̃^{n-2}(Δ(Γ_{x,k})) ≠ 0` with `k > n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationWitness {
    pub element: String,
    pub k: usize,
    pub n: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmAltVerdict {
    pub holds: bool,
    pub witnesses: Vec<TruncationWitness>,
}

/// Equivalent criterion through the truncations `Γ_{x,k}` only.
pub fn is_cm_alt<F: Field>(poset: &RankedPoset, field: &F) -> Result<CmAltVerdict, PosetError> {
    poset.require_cyclic()?;
    let mut witnesses = Vec::new();
    for x in poset.plus() {
        for k in 2..=poset.rank(x) {
            let g = poset.gamma_ai(x, k);
            let h = reduced_cohomology(poset, &g.members, field);
            // H̃^{n-2} for 1 <= n < k, i.e. degrees -1 ..= k-3.
            for n in 1..k {
                let d = h.at(n as i64 - 2);
                if d != 0 {
                    witnesses.push(TruncationWitness {
                        element: poset.name(x).to_string(),
                        k,
                        n,
                        dimension: d,
                    });
                }
            }
        }
    }
    Ok(CmAltVerdict {
        holds: witnesses.is_empty(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::poset::fixture;

    #[test]
    fn fixtures() {
        let q = Rationals;
        for (name, cm) in [("chain3", true), ("diamond", true), ("cycle4", true), ("pinch", false)] {
            let p = fixture(name).unwrap();
            assert_eq!(is_cm(&p, &q).unwrap().holds, cm, "{name}");
            assert_eq!(is_cm_alt(&p, &q).unwrap().holds, cm, "{name}");
        }
    }

    #[test]
    fn pinch_witnesses() {
        let p = fixture("pinch").unwrap();
        let f = PrimeField::new(2).unwrap();
        let v = is_cm(&p, &f).unwrap();
        assert_eq!(
            v.witnesses,
            vec![IntervalWitness {
                lower: "*".into(),
                upper: "x".into(),
                degree: 0,
                dimension: 1
            }]
        );
        let alt = is_cm_alt(&p, &f).unwrap();
        assert_eq!(
            alt.witnesses,
            vec![TruncationWitness {
                element: "x".into(),
                k: 3,
                n: 2,
                dimension: 1
            }]
        );
    }

    #[test]
    fn not_cyclic_rejected() {
        let c = fixture("cycle4").unwrap();
        let two = crate::poset::RankedPoset::wedge(&c, &c).unwrap();
        assert!(matches!(is_cm(&two, &Rationals), Err(PosetError::NotCyclic(_))));
        assert!(is_cm_alt(&two, &Rationals).is_err());
    }
}
