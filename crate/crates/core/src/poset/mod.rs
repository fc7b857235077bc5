//! Finite ranked posets with a unique minimal element `*`.
//!
//! Elements are stored by index: index 0 is always `*`, the rest are sorted by
//! `(rank, name)`. All derived orderings in the crate (words, chains, level sets)
//! follow this index order.

mod fixtures;
mod ops;

pub use fixtures::{fixture, fixture_names};
pub use ops::ElementSubset;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub const STAR: &str = "*";

/// One reason a raw poset description fails to be a ranked poset.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("element `{0}` is listed twice")]
    DuplicateElement(String),
    #[error("element `{id}` has rank {rank}; only `*` may have rank 0")]
    InvalidRank { id: String, rank: usize },
    #[error("cover ({upper}, {lower}) mentions unknown element `{missing}`")]
    UnknownElement {
        upper: String,
        lower: String,
        missing: String,
    },
    #[error("RankGap: cover ({upper}, {lower}) joins ranks {upper_rank} and {lower_rank}; covers must drop rank by exactly 1")]
    RankGap {
        upper: String,
        lower: String,
        upper_rank: usize,
        lower_rank: usize,
    },
    #[error("DanglingElement: `{0}` has rank at least 2 but covers nothing")]
    DanglingElement(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("invalid poset: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("poset is not cyclic (maximal elements: {0:?})")]
    NotCyclic(Vec<String>),
    #[error("NoUpwardPath: `{element}` lies below no maximal element of rank {top_rank}")]
    NoUpwardPath { element: String, top_rank: usize },
    #[error("poset is not pure (maximal ranks: {0:?})")]
    NotPure(Vec<usize>),
    #[error("RankMismatch: cannot wedge posets of rank {0} and {1}")]
    RankMismatch(usize, usize),
    #[error("EmptyArgument: {0}")]
    EmptyArgument(&'static str),
    #[error("elements {0:?} do not share a single rank")]
    NotLevel(Vec<String>),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
}

/// Raw input: element ids with ranks, plus `(upper, lower)` cover pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawPoset {
    pub elements: Vec<(String, usize)>,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct RankedPoset {
    names: Vec<String>,
    ranks: Vec<usize>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    /// `le[a][b]` iff `a <= b`.
    le: Vec<Vec<bool>>,
    index: BTreeMap<String, usize>,
}

impl fmt::Debug for RankedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankedPoset {{")?;
        for x in self.plus() {
            let lower: Vec<&str> = self.down[x].iter().map(|&y| self.name(y)).collect();
            write!(f, " {}({})->{:?}", self.name(x), self.rank(x), lower)?;
        }
        write!(f, " }}")
    }
}

impl RankedPoset {
    /// Checks a raw description and builds the poset. `*` is adjoined when absent and
    /// every rank-1 element covers it.
    pub fn validate(raw: &RawPoset) -> Result<Self, PosetError> {
        let mut violations = Vec::new();
        let mut ranks: BTreeMap<&str, usize> = BTreeMap::new();
        for (id, rank) in &raw.elements {
            if ranks.insert(id.as_str(), *rank).is_some() {
                violations.push(Violation::DuplicateElement(id.clone()));
            }
            let bad = if id == STAR { *rank != 0 } else { *rank == 0 };
            if bad {
                violations.push(Violation::InvalidRank {
                    id: id.clone(),
                    rank: *rank,
                });
            }
        }
        ranks.entry(STAR).or_insert(0);

        let mut covers = BTreeSet::new();
        for (upper, lower) in &raw.covers {
            let (Some(&ru), Some(&rl)) = (ranks.get(upper.as_str()), ranks.get(lower.as_str())) else {
                let missing = if ranks.contains_key(upper.as_str()) { lower } else { upper };
                violations.push(Violation::UnknownElement {
                    upper: upper.clone(),
                    lower: lower.clone(),
                    missing: missing.clone(),
                });
                continue;
            };
            if ru != rl + 1 {
                violations.push(Violation::RankGap {
                    upper: upper.clone(),
                    lower: lower.clone(),
                    upper_rank: ru,
                    lower_rank: rl,
                });
                continue;
            }
            if lower != STAR {
                covers.insert((upper.clone(), lower.clone()));
            }
        }
        for (id, &rank) in &ranks {
            if rank >= 2 && !covers.iter().any(|(u, _)| u == id) {
                violations.push(Violation::DanglingElement(id.to_string()));
            }
        }
        if !violations.is_empty() {
            return Err(PosetError::Invalid(violations));
        }
        let elements = ranks
            .into_iter()
            .filter(|(id, _)| *id != STAR)
            .map(|(id, r)| (id.to_string(), r))
            .collect();
        Ok(Self::assemble(elements, covers.into_iter().collect()))
    }

    /// Builds from data already known to be valid (ranks consistent with covers).
    pub(crate) fn assemble(mut elements: Vec<(String, usize)>, covers: Vec<(String, String)>) -> Self {
        elements.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        let mut names = vec![STAR.to_string()];
        let mut ranks = vec![0];
        for (n, r) in elements {
            names.push(n);
            ranks.push(r);
        }
        let index: BTreeMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let n = names.len();
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for (u, l) in &covers {
            let (iu, il) = (index[u], index[l]);
            debug_assert_eq!(ranks[iu], ranks[il] + 1);
            down[iu].push(il);
            up[il].push(iu);
        }
        for x in 1..n {
            if ranks[x] == 1 {
                down[x].push(0);
                up[0].push(x);
            }
        }
        for v in down.iter_mut().chain(up.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        // Indices are rank-sorted, so lower covers are already closed when reached.
        let mut below = vec![vec![false; n]; n];
        for x in 0..n {
            below[x][x] = true;
            for &y in &down[x] {
                let row = below[y].clone();
                for (a, &b) in row.iter().enumerate() {
                    below[x][a] |= b;
                }
            }
        }
        let mut le = vec![vec![false; n]; n];
        for x in 0..n {
            for a in 0..n {
                le[a][x] = below[x][a];
            }
        }
        RankedPoset {
            names,
            ranks,
            down,
            up,
            le,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Indices of `Γ₊`.
    pub fn plus(&self) -> std::ops::Range<usize> {
        1..self.names.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(id.to_string()))
    }

    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    /// Rank of the poset: the largest element rank.
    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// Elements covered by `x` (includes `*` for rank-1 elements).
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// Elements of `Γ₊` covered by `x`.
    pub fn lower_covers_plus(&self, x: usize) -> &[usize] {
        let d = &self.down[x];
        if d.first() == Some(&0) {
            &d[1..]
        } else {
            d
        }
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.down[x].binary_search(&y).is_ok()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le[a][b] || self.le[b][a]
    }

    /// `Γ(n)`: the elements of rank `n`.
    pub fn level(&self, n: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.ranks[x] == n).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x].is_empty()).collect()
    }

    pub fn is_cyclic(&self) -> bool {
        self.maximal_elements().len() == 1 && self.len() > 1
    }

    /// The unique maximal element of a cyclic poset.
    pub fn top(&self) -> Result<usize, PosetError> {
        let max = self.maximal_elements();
        if max.len() == 1 && self.len() > 1 {
            return Ok(max[0]);
        }
        Err(PosetError::NotCyclic(
            max.iter().map(|&x| self.name(x).to_string()).collect(),
        ))
    }

    pub fn require_cyclic(&self) -> Result<usize, PosetError> {
        let top = self.top()?;
        if let Some(x) = (0..self.len()).find(|&x| !self.leq(x, top)) {
            return Err(PosetError::NoUpwardPath {
                element: self.name(x).to_string(),
                top_rank: self.rank(top),
            });
        }
        Ok(top)
    }

    pub fn is_pure(&self) -> bool {
        let r = self.max_rank();
        self.maximal_elements().iter().all(|&x| self.ranks[x] == r)
    }

    /// Raw description (Γ₊ elements and covers inside Γ₊).
    pub fn to_raw(&self) -> RawPoset {
        let elements = self
            .plus()
            .map(|x| (self.names[x].clone(), self.ranks[x]))
            .collect();
        let covers = self
            .plus()
            .flat_map(|x| {
                self.lower_covers_plus(x)
                    .iter()
                    .map(move |&y| (self.names[x].clone(), self.names[y].clone()))
            })
            .collect();
        RawPoset { elements, covers }
    }

    /// Names of a set of element indices, in index order.
    pub fn names_of(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| self.names[x].clone()).collect()
    }

    /// Every covering chain `b_1 -> b_2 -> ... -> b_len` inside `Γ₊`, in lexicographic index order.
    pub fn covering_chains(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if len == 0 {
            out.push(Vec::new());
            return out;
        }
        let mut stack: Vec<usize> = Vec::with_capacity(len);
        for x in self.plus() {
            stack.push(x);
            self.extend_chains(&mut stack, len, &mut out);
            stack.pop();
        }
        out
    }

    fn extend_chains(&self, stack: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
        if stack.len() == len {
            out.push(stack.clone());
            return;
        }
        let last = *stack.last().unwrap();
        for &y in self.lower_covers_plus(last) {
            stack.push(y);
            self.extend_chains(stack, len, out);
            stack.pop();
        }
    }

    /// Covering chains of `len` letters starting at `head`.
    pub fn covering_chains_from(&self, head: usize, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if len == 0 {
            return out;
        }
        let mut stack = vec![head];
        self.extend_chains(&mut stack, len, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(elements: &[(&str, usize)], covers: &[(&str, &str)]) -> RawPoset {
        RawPoset {
            elements: elements.iter().map(|(a, r)| (a.to_string(), *r)).collect(),
            covers: covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }

    #[test]
    fn diamond_validates() {
        let p = fixture("diamond").unwrap();
        let rank = |s: &str| p.rank(p.index_of(s).unwrap());
        assert_eq!((rank("a"), rank("b"), rank("c")), (1, 1, 2));
        assert_eq!(p.name(0), "*");
        assert!(p.is_cyclic());
    }

    #[test]
    fn rank_gap_is_reported() {
        let err = RankedPoset::validate(&raw(&[("a", 1), ("c", 2)], &[("c", "a"), ("c", "*")]))
            .unwrap_err();
        let PosetError::Invalid(v) = err else { panic!() };
        assert!(matches!(&v[..], [Violation::RankGap { upper, lower, .. }] if upper == "c" && lower == "*"));
    }

    #[test]
    fn dangling_and_unknown() {
        let err = RankedPoset::validate(&raw(&[("a", 1), ("c", 2)], &[("a", "zz")])).unwrap_err();
        let PosetError::Invalid(v) = err else { panic!() };
        assert!(v.iter().any(|x| matches!(x, Violation::UnknownElement { missing, .. } if missing == "zz")));
        assert!(v.contains(&Violation::DanglingElement("c".into())));
    }

    #[test]
    fn duplicates_and_zero_rank() {
        let err = RankedPoset::validate(&raw(&[("a", 1), ("a", 1), ("b", 0)], &[])).unwrap_err();
        let PosetError::Invalid(v) = err else { panic!() };
        assert!(v.contains(&Violation::DuplicateElement("a".into())));
        assert!(v.iter().any(|x| matches!(x, Violation::InvalidRank { id, .. } if id == "b")));
    }

    #[test]
    fn pinch_is_cyclic() {
        let p = fixture("pinch").unwrap();
        assert!(p.is_cyclic());
        assert_eq!(p.name(p.require_cyclic().unwrap()), "x");
    }

    #[test]
    fn ranks_equal_longest_and_shortest_paths() {
        for name in fixture_names() {
            let p = fixture(name).unwrap();
            for x in 0..p.len() {
                let (mut lo, mut hi) = (usize::MAX, 0);
                let mut frontier = vec![(x, 0usize)];
                while let Some((y, d)) = frontier.pop() {
                    if y == 0 {
                        lo = lo.min(d);
                        hi = hi.max(d);
                    }
                    for &z in p.lower_covers(y) {
                        frontier.push((z, d + 1));
                    }
                }
                assert_eq!((lo, hi), (p.rank(x), p.rank(x)), "{name}");
            }
        }
    }

    #[test]
    fn covering_chain_counts() {
        let p = fixture("cycle4").unwrap();
        assert_eq!(p.covering_chains(1).len(), 5);
        assert_eq!(p.covering_chains(2).len(), 6);
        assert_eq!(p.covering_chains(3).len(), 4);
        assert_eq!(p.covering_chains(4).len(), 0);
    }
}
