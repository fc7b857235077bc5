//! Subposet operators and constructions.

use std::collections::BTreeSet;

use super::{PosetError, RankedPoset, STAR};

/// A subset of a poset's elements, optionally tagged with the common rank of its members.
/// The parent poset is passed alongside wherever the subset is used.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSubset {
    pub members: Vec<usize>,
    pub level: Option<usize>,
}

impl ElementSubset {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        ElementSubset {
            members,
            level: None,
        }
    }

    pub fn at_level(members: Vec<usize>, level: usize) -> Self {
        ElementSubset {
            level: Some(level),
            ..Self::new(members)
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn names(&self, poset: &RankedPoset) -> Vec<String> {
        poset.names_of(&self.members)
    }
}

impl RankedPoset {
    /// Rank shared by all of `w`; errors on an empty or mixed-rank set.
    pub fn level_of(&self, w: &[usize]) -> Result<usize, PosetError> {
        let Some(&first) = w.first() else {
            return Err(PosetError::EmptyArgument("W must be nonempty"));
        };
        let n = self.rank(first);
        if w.iter().any(|&s| self.rank(s) != n) {
            return Err(PosetError::NotLevel(self.names_of(w)));
        }
        Ok(n)
    }

    /// Subposet on a down-closed set containing `*`; ranks are unchanged.
    /// Returns the subposet and, for each of its indices, the parent index.
    pub fn induced_down_set(&self, keep: &[usize]) -> (RankedPoset, Vec<usize>) {
        let set: BTreeSet<usize> = keep.iter().copied().chain([0]).collect();
        debug_assert!(set
            .iter()
            .all(|&x| self.lower_covers(x).iter().all(|y| set.contains(y))));
        let elements = set
            .iter()
            .filter(|&&x| x != 0)
            .map(|&x| (self.name(x).to_string(), self.rank(x)))
            .collect();
        let covers = set
            .iter()
            .flat_map(|&x| {
                self.lower_covers_plus(x)
                    .iter()
                    .map(move |&y| (self.name(x).to_string(), self.name(y).to_string()))
            })
            .collect();
        let sub = RankedPoset::assemble(elements, covers);
        let map = (0..sub.len())
            .map(|i| self.index_of(sub.name(i)).expect("kept element"))
            .collect();
        (sub, map)
    }

    fn down_set_of(&self, w: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| w.iter().any(|&s| self.leq(a, s)))
            .collect()
    }

    /// `Γ_x = [*, x]`.
    pub fn principal_ideal(&self, x: usize) -> RankedPoset {
        self.induced_down_set(&self.down_set_of(&[x])).0
    }

    /// `Γ_W`: everything below some element of `W` (W nonempty).
    pub fn below(&self, w: &[usize]) -> Result<RankedPoset, PosetError> {
        if w.is_empty() {
            return Err(PosetError::EmptyArgument("W must be nonempty"));
        }
        Ok(self.induced_down_set(&self.down_set_of(w)).0)
    }

    /// `Γ^{>k}`: elements of rank above `k` together with `*`. The result is re-ranked
    /// so that rank `k+1` becomes rank 1 and those elements cover `*`.
    pub fn truncate(&self, k: usize) -> RankedPoset {
        let elements = self
            .plus()
            .filter(|&x| self.rank(x) > k)
            .map(|x| (self.name(x).to_string(), self.rank(x) - k))
            .collect();
        let covers = self
            .plus()
            .filter(|&x| self.rank(x) > k + 1)
            .flat_map(|x| {
                self.lower_covers_plus(x)
                    .iter()
                    .map(move |&y| (self.name(x).to_string(), self.name(y).to_string()))
            })
            .collect();
        RankedPoset::assemble(elements, covers)
    }

    /// `Γ_{a,i} = {w < a : rk(a) - rk(w) <= i - 1}` minus `*`.
    pub fn gamma_ai(&self, a: usize, i: usize) -> ElementSubset {
        let ra = self.rank(a);
        ElementSubset::new(
            self.plus()
                .filter(|&w| self.lt(w, a) && ra - self.rank(w) < i)
                .collect(),
        )
    }

    /// `Γ(W, k)`: elements of `Γ_W` with rank in `[n-k, n]`, where `W ⊆ Γ(n)`. Excludes `*`.
    pub fn layer_window(&self, w: &[usize], k: usize) -> Result<ElementSubset, PosetError> {
        let n = self.level_of(w)?;
        if k >= n {
            return Err(PosetError::OutOfRange(format!(
                "layer_window needs 0 <= k <= n-1, got k = {k}, n = {n}"
            )));
        }
        let members = self
            .down_set_of(w)
            .into_iter()
            .filter(|&y| y != 0 && self.rank(y) + k >= n)
            .collect();
        Ok(ElementSubset::new(members))
    }

    /// `S_x(k)`: elements below `x` whose rank is `rk(x) - k` (may be `{*}`).
    pub fn sphere(&self, x: usize, k: usize) -> ElementSubset {
        let rx = self.rank(x);
        if k > rx {
            return ElementSubset::new(Vec::new());
        }
        ElementSubset::at_level(
            (0..self.len())
                .filter(|&y| self.leq(y, x) && self.rank(y) + k == rx)
                .collect(),
            rx - k,
        )
    }

    /// Open interval `(a, b)`.
    pub fn open_interval(&self, a: usize, b: usize) -> ElementSubset {
        ElementSubset::new(
            (0..self.len())
                .filter(|&y| self.lt(a, y) && self.lt(y, b))
                .collect(),
        )
    }

    /// Order dual of a cyclic pure poset. The old top becomes `*` and takes no other name;
    /// the old `*` takes the old top's name, so dualising twice is the identity.
    pub fn dual(&self) -> Result<RankedPoset, PosetError> {
        let top = self.require_cyclic()?;
        let r = self.rank(top);
        let top_name = self.name(top).to_string();
        let rename = |x: usize| -> String {
            if x == 0 {
                top_name.clone()
            } else if x == top {
                STAR.to_string()
            } else {
                self.name(x).to_string()
            }
        };
        let elements = (0..self.len())
            .filter(|&x| x != top)
            .map(|x| (rename(x), r - self.rank(x)))
            .collect();
        let covers = (0..self.len())
            .flat_map(|x| self.lower_covers(x).iter().map(move |&y| (y, x)))
            .filter(|&(_, lower)| lower != top)
            .map(|(upper, lower)| (rename(upper), rename(lower)))
            .collect();
        Ok(RankedPoset::assemble(elements, covers))
    }

    /// `Γ ∨ Ω`: disjoint union with the two minimal elements identified. Labels are
    /// prefixed `l.` and `r.`.
    pub fn wedge(left: &RankedPoset, right: &RankedPoset) -> Result<RankedPoset, PosetError> {
        if left.max_rank() != right.max_rank() {
            return Err(PosetError::RankMismatch(left.max_rank(), right.max_rank()));
        }
        let mut elements = Vec::new();
        let mut covers = Vec::new();
        for (prefix, p) in [("l.", left), ("r.", right)] {
            for x in p.plus() {
                elements.push((format!("{prefix}{}", p.name(x)), p.rank(x)));
                for &y in p.lower_covers_plus(x) {
                    covers.push((
                        format!("{prefix}{}", p.name(x)),
                        format!("{prefix}{}", p.name(y)),
                    ));
                }
            }
        }
        Ok(RankedPoset::assemble(elements, covers))
    }

    /// `Γ̄`: a pure poset with a new top element covering every maximal element.
    pub fn adjoin_top(&self) -> Result<RankedPoset, PosetError> {
        if !self.is_pure() {
            return Err(PosetError::NotPure(self.maximal_ranks()));
        }
        let mut name = "top".to_string();
        while self.index.contains_key(&name) {
            name.push('\'');
        }
        let mut raw = self.to_raw();
        let r = self.max_rank();
        for x in self.maximal_elements() {
            if x != 0 && r >= 1 {
                raw.covers.push((name.clone(), self.name(x).to_string()));
            }
        }
        raw.elements.push((name, r + 1));
        Ok(RankedPoset::assemble(raw.elements, raw.covers))
    }

    /// `Γ′`: a pure poset with its top level removed.
    pub fn drop_top(&self) -> Result<RankedPoset, PosetError> {
        if !self.is_pure() {
            return Err(PosetError::NotPure(self.maximal_ranks()));
        }
        let r = self.max_rank();
        let keep: Vec<usize> = (0..self.len()).filter(|&x| self.rank(x) < r).collect();
        Ok(self.induced_down_set(&keep).0)
    }

    fn maximal_ranks(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self
            .maximal_elements()
            .iter()
            .map(|&x| self.rank(x))
            .collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// Connectivity of the Hasse diagram restricted to `s`. Empty sets and singletons count
    /// as connected.
    pub fn hasse_connected(&self, s: &ElementSubset) -> bool {
        self.hasse_components(s).len() <= 1
    }

    /// Connected components of the Hasse diagram restricted to `s`, each sorted, listed
    /// by smallest member.
    pub fn hasse_components(&self, s: &ElementSubset) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in &s.members {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in self.lower_covers(x).iter().chain(self.upper_covers(x)) {
                    if s.contains(y) && seen.insert(y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}
