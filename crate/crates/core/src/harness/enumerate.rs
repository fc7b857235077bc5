//! Exhaustive generation of cyclic ranked posets, level profile by level profile.
//!
//! A profile `(l_1, ..., l_R)` with `l_R = 1` fixes the number of elements at each rank; a
//! mask fixes the covers between adjacent levels. The order of the stream is total size,
//! then rank, then profile (lexicographic), then mask value.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::exactlin::FieldSpec;
use crate::poset::RankedPoset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSpec {
    /// Bound on `|Γ|`, counting `*`.
    pub max_elements: usize,
    pub max_rank: usize,
    #[serde(default = "one")]
    pub min_rank: usize,
    /// Only this level profile (ranks 1 and up), when set.
    #[serde(default)]
    pub profile: Option<Vec<usize>>,
    #[serde(default = "yes")]
    pub reject_isomorphs: bool,
    #[serde(default)]
    pub fields: Vec<FieldSpec>,
    /// Largest number of cover bits one profile may have.
    #[serde(default = "default_budget")]
    pub budget_bits: u32,
}

fn one() -> usize {
    1
}
fn yes() -> bool {
    true
}
fn default_budget() -> u32 {
    24
}

impl EnumerationSpec {
    pub fn new(max_elements: usize, max_rank: usize) -> Self {
        EnumerationSpec {
            max_elements,
            max_rank,
            min_rank: 1,
            profile: None,
            reject_isomorphs: true,
            fields: vec![FieldSpec::Rational],
            budget_bits: default_budget(),
        }
    }

    fn check(&self) -> Result<(), HarnessError> {
        if self.max_elements == 0 || self.max_rank == 0 {
            return Err(HarnessError::Usage("enumeration bounds must be positive".into()));
        }
        Ok(())
    }

    /// Profiles in stream order.
    pub fn profiles(&self) -> Vec<Vec<usize>> {
        if let Some(p) = &self.profile {
            let ok = p.last() == Some(&1)
                && p.iter().all(|&l| l > 0)
                && p.iter().sum::<usize>() < self.max_elements
                && (self.min_rank..=self.max_rank).contains(&p.len());
            return if ok { vec![p.clone()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for size in 2..=self.max_elements {
            let plus = size - 1;
            for rank in self.min_rank.max(1)..=self.max_rank.min(plus) {
                let mut comps = Vec::new();
                compositions(plus - 1, rank - 1, &mut Vec::new(), &mut comps);
                for mut c in comps {
                    c.push(1);
                    out.push(c);
                }
            }
        }
        out
    }
}

/// Compositions of `total` into exactly `parts` positive parts, lexicographic.
fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for first in 1..=total.saturating_sub(parts - 1) {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

fn cover_bits(profile: &[usize]) -> u32 {
    profile.windows(2).map(|w| (w[0] * w[1]) as u32).sum()
}

fn level_letter(r: usize) -> char {
    (b'a' + ((r - 1) % 26) as u8) as char
}

/// Builds the poset of a profile and mask. Returns `None` when some element above rank 1
/// covers nothing or some non-top element is covered by nothing.
pub fn poset_from_mask(profile: &[usize], mask: u64) -> Option<RankedPoset> {
    let mut bit = 0;
    let mut covers = Vec::new();
    let mut covered: Vec<Vec<bool>> = profile.iter().map(|&l| vec![false; l]).collect();
    for r in 1..profile.len() {
        for i in 0..profile[r] {
            let mut any = false;
            for j in 0..profile[r - 1] {
                if mask >> bit & 1 == 1 {
                    any = true;
                    covered[r - 1][j] = true;
                    covers.push((
                        format!("{}{i}", level_letter(r + 1)),
                        format!("{}{j}", level_letter(r)),
                    ));
                }
                bit += 1;
            }
            if !any {
                return None;
            }
        }
    }
    if covered[..profile.len() - 1].iter().any(|lvl| lvl.iter().any(|c| !c)) {
        return None;
    }
    let elements = profile
        .iter()
        .enumerate()
        .flat_map(|(r, &l)| (0..l).map(move |i| (format!("{}{i}", level_letter(r + 1)), r + 1)))
        .collect();
    let raw = crate::poset::RawPoset { elements, covers };
    RankedPoset::validate(&raw).ok()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Isomorphism invariant of a ranked poset: the level profile followed by the
/// lexicographically least cover-bit string over all level-wise relabelings.
pub fn canonical_key(poset: &RankedPoset) -> Vec<u8> {
    let top = poset.max_rank();
    let levels: Vec<Vec<usize>> = (1..=top).map(|r| poset.level(r)).collect();
    let mut key: Vec<u8> = levels.iter().map(|l| l.len() as u8).collect();
    key.push(u8::MAX);
    let perms: Vec<Vec<Vec<usize>>> = levels.iter().map(|l| permutations(l.len())).collect();
    let mut choice = vec![0usize; levels.len()];
    let mut best: Option<Vec<u8>> = None;
    loop {
        let ordered: Vec<Vec<usize>> = levels
            .iter()
            .zip(&choice)
            .zip(&perms)
            .map(|((l, &c), ps)| ps[c].iter().map(|&i| l[i]).collect())
            .collect();
        let mut bits = Vec::new();
        for r in 1..ordered.len() {
            for &x in &ordered[r] {
                for &y in &ordered[r - 1] {
                    bits.push(poset.covers(x, y) as u8);
                }
            }
        }
        if best.as_ref().is_none_or(|b| bits < *b) {
            best = Some(bits);
        }
        // Odometer over the per-level permutation choices.
        let mut i = 0;
        loop {
            if i == choice.len() {
                key.extend(best.unwrap_or_default());
                return key;
            }
            choice[i] += 1;
            if choice[i] < perms[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Lazy stream of cyclic posets for a spec. A profile over the bit budget is reported
/// when the stream reaches it, after which the stream ends.
pub struct CyclicEnumerator {
    profiles: Vec<Vec<usize>>,
    at: usize,
    mask: u64,
    reject: bool,
    budget: u32,
    seen: HashSet<Vec<u8>>,
}

impl Iterator for CyclicEnumerator {
    type Item = Result<RankedPoset, HarnessError>;

    fn next(&mut self) -> Option<Self::Item> {
        while self.at < self.profiles.len() {
            let profile = &self.profiles[self.at];
            let bits = cover_bits(profile);
            if bits > self.budget {
                let err = HarnessError::BudgetExceeded {
                    profile: profile.clone(),
                    bits,
                    budget: self.budget,
                };
                self.at = self.profiles.len();
                return Some(Err(err));
            }
            let limit = 1u64 << bits;
            while self.mask < limit {
                let mask = self.mask;
                self.mask += 1;
                let Some(p) = poset_from_mask(profile, mask) else {
                    continue;
                };
                if self.reject && !self.seen.insert(canonical_key(&p)) {
                    continue;
                }
                return Some(Ok(p));
            }
            // Keys never collide across profiles, so the dedupe set is per profile.
            self.seen.clear();
            self.at += 1;
            self.mask = 0;
        }
        None
    }
}

pub fn enumerate_cyclic(spec: &EnumerationSpec) -> Result<CyclicEnumerator, HarnessError> {
    spec.check()?;
    Ok(CyclicEnumerator {
        profiles: spec.profiles(),
        at: 0,
        mask: 0,
        reject: spec.reject_isomorphs,
        budget: spec.budget_bits,
        seen: HashSet::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixture;

    fn all(spec: &EnumerationSpec) -> Vec<RankedPoset> {
        enumerate_cyclic(spec).unwrap().collect::<Result<_, _>>().unwrap()
    }

    #[test]
    fn three_elements() {
        let all = all(&EnumerationSpec::new(3, 5));
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].len(), 2);
        assert_eq!(all[1].max_rank(), 2);
    }

    #[test]
    fn diamond_once() {
        let key = canonical_key(&fixture("diamond").unwrap());
        let hits = all(&EnumerationSpec::new(4, 5))
            .iter()
            .filter(|p| canonical_key(p) == key)
            .count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn relabelings_collapse() {
        let mut spec = EnumerationSpec::new(4, 2);
        spec.reject_isomorphs = false;
        spec.profile = Some(vec![2, 1]);
        let keys: HashSet<Vec<u8>> = all(&spec).iter().map(canonical_key).collect();
        assert_eq!(keys.len(), 1);
    }

    #[test]
    fn pairwise_distinct() {
        let all = all(&EnumerationSpec::new(6, 5));
        let keys: HashSet<Vec<u8>> = all.iter().map(canonical_key).collect();
        assert_eq!(keys.len(), all.len());
        assert!(all.iter().all(|p| p.is_cyclic()));
    }

    #[test]
    fn budget() {
        let mut spec = EnumerationSpec::new(12, 2);
        spec.budget_bits = 8;
        let mut stream = enumerate_cyclic(&spec).unwrap();
        // Small profiles still come through before the oversized one is reached.
        assert!(stream.next().unwrap().is_ok());
        let err = stream.find(|r| r.is_err()).unwrap();
        assert!(matches!(err, Err(HarnessError::BudgetExceeded { .. })));
        assert!(stream.next().is_none());
    }

    #[test]
    fn profile_filter() {
        let mut spec = EnumerationSpec::new(6, 3);
        spec.profile = Some(vec![2, 2, 1]);
        let all = all(&spec);
        // Two rank-2 elements over two atoms, each covering at least one atom, each atom
        // covered: up to relabeling {ab, ab}, {ab, a}, {a, b}.
        assert_eq!(all.len(), 3);
    }
}
