use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::levels::tm_sets_at;
use super::scomplex::s_complex;
use crate::exactlin::Field;
use crate::poset::{PosetError, RankedPoset};

/// Which `k` enter the weakly Cohen-Macaulay condition for `W ⊆ Γ(n)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KPolicy {
    /// `2 <= k <= n - 1`.
    #[default]
    Derived,
    /// `0 <= k < n`, read off the definition verbatim.
    Literal,
}

impl KPolicy {
    pub fn range(self, n: usize) -> std::ops::Range<usize> {
        match self {
            KPolicy::Derived => 2..n.max(2),
            KPolicy::Literal => 0..n,
        }
    }
}

impl fmt::Display for KPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KPolicy::Derived => "derived",
            KPolicy::Literal => "literal",
        })
    }
}

impl FromStr for KPolicy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "derived" => Ok(KPolicy::Derived),
            "literal" => Ok(KPolicy::Literal),
            other => Err(format!("unknown k-policy {other:?} (expected derived or literal)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeaklyCmWitness {
    pub element: String,
    pub n: usize,
    pub w: Vec<String>,
    pub k: usize,
    /// `dim H^{k-1}(S^•(Γ(W, k)))`.
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeaklyCmVerdict {
    pub holds: bool,
    pub policy: KPolicy,
    /// Number of distinct `(W, k)` pairs evaluated.
    pub checks: usize,
    pub witnesses: Vec<WeaklyCmWitness>,
}

/// `H^{k-1}(S^•(Γ(W, k)))` for `W ⊆ Γ(n)`, `k < n`.
pub fn window_cohomology<F: Field>(poset: &RankedPoset, w: &[usize], k: usize, field: &F) -> Result<usize, PosetError> {
    if k == 0 {
        return Ok(0);
    }
    let window = poset.layer_window(w, k)?;
    let s = s_complex(poset, &window, field)?;
    let h = s.cohomology().expect("d_S squares to zero");
    Ok(h.at(k as i64 - 1))
}

pub fn weakly_cm<F: Field>(poset: &RankedPoset, field: &F, policy: KPolicy) -> Result<WeaklyCmVerdict, PosetError> {
    poset.require_cyclic()?;
    let mut cache: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    let mut witnesses = Vec::new();
    for x in poset.plus() {
        let fam = tm_sets_at(poset, x);
        for n in 1..=poset.rank(x) {
            for w in fam.m_level(n) {
                for k in policy.range(n) {
                    let key = (w.members.clone(), k);
                    let dimension = match cache.get(&key) {
                        Some(&d) => d,
                        None => {
                            let d = window_cohomology(poset, &w.members, k, field)?;
                            cache.insert(key, d);
                            d
                        }
                    };
                    if dimension != 0 {
                        witnesses.push(WeaklyCmWitness {
                            element: poset.name(x).to_string(),
                            n,
                            w: w.names(poset),
                            k,
                            dimension,
                        });
                    }
                }
            }
        }
    }
    Ok(WeaklyCmVerdict {
        holds: witnesses.is_empty(),
        policy,
        checks: cache.len(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::poset::fixture;

    #[test]
    fn fixtures_derived() {
        for name in crate::poset::fixture_names() {
            let p = fixture(name).unwrap();
            assert!(weakly_cm(&p, &Rationals, KPolicy::Derived).unwrap().holds, "{name}");
        }
    }

    #[test]
    fn pinch_literal_fails_at_k_one() {
        let p = fixture("pinch").unwrap();
        let v = weakly_cm(&p, &PrimeField::new(2).unwrap(), KPolicy::Literal).unwrap();
        assert!(!v.holds);
        assert!(v.witnesses.iter().all(|w| w.k == 1));
        assert!(v.witnesses.iter().any(|w| w.w == vec!["x".to_string()]));
    }

    #[test]
    fn pinch_derived_single_check() {
        let p = fixture("pinch").unwrap();
        let v = weakly_cm(&p, &Rationals, KPolicy::Derived).unwrap();
        assert_eq!(v.checks, 1);
    }

    #[test]
    fn policy_parse() {
        assert_eq!("literal".parse::<KPolicy>(), Ok(KPolicy::Literal));
        assert!("loose".parse::<KPolicy>().is_err());
        assert_eq!(KPolicy::Derived.range(2), 2..2);
        assert_eq!(KPolicy::Derived.range(4), 2..4);
    }
}
