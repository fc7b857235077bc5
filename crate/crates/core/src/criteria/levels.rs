use std::collections::BTreeSet;

use crate::poset::{ElementSubset, PosetError, RankedPoset};

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Components of the graph on `items` with an edge wherever `linked` holds, each sorted and
/// listed by smallest member.
pub(crate) fn find_classes(items: &[usize], linked: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..items.len()).collect();
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if linked(items[i], items[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..items.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(items[i]);
    }
    let mut out: Vec<Vec<usize>> = groups
        .into_values()
        .map(|mut g| {
            g.sort_unstable();
            g
        })
        .collect();
    out.sort();
    out
}

/// Classes of `~^W` on `Γ₊`: lower covers of a common `s ∈ W` are identified, and the
/// relation is closed transitively. Elements not covered by `W` stay singletons.
/// Classes are sorted internally and listed by smallest member.
pub fn sim_w_classes(poset: &RankedPoset, w: &[usize]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..poset.len()).collect();
    for &s in w {
        let covers = poset.lower_covers_plus(s);
        if let Some((&first, rest)) = covers.split_first() {
            for &u in rest {
                let (a, b) = (find(&mut parent, first), find(&mut parent, u));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; poset.len()];
    for x in poset.plus() {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(x);
    }
    classes
}

/// `[z]^W`.
pub fn class_of(poset: &RankedPoset, w: &[usize], z: usize) -> Vec<usize> {
    sim_w_classes(poset, w)
        .into_iter()
        .find(|c| c.contains(&z))
        .unwrap_or_else(|| vec![z])
}

/// `T_n` and `M_n` of a principal ideal, indexed by `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSetFamily {
    pub top: usize,
    pub t: Vec<Vec<ElementSubset>>,
    pub m: Vec<Vec<ElementSubset>>,
}

impl LevelSetFamily {
    pub fn t_level(&self, n: usize) -> &[ElementSubset] {
        n.checked_sub(1).and_then(|i| self.t.get(i)).map_or(&[], |v| v.as_slice())
    }

    pub fn m_level(&self, n: usize) -> &[ElementSubset] {
        n.checked_sub(1).and_then(|i| self.m.get(i)).map_or(&[], |v| v.as_slice())
    }

    /// Names, level by level, for reports.
    pub fn named(&self, poset: &RankedPoset) -> (Vec<Vec<Vec<String>>>, Vec<Vec<Vec<String>>>) {
        let conv = |fam: &Vec<Vec<ElementSubset>>| {
            fam.iter()
                .map(|level| level.iter().map(|s| s.names(poset)).collect())
                .collect()
        };
        (conv(&self.t), conv(&self.m))
    }
}

/// Maximal subsets `W' ⊆ W` for which `Γ(W', 1)` is connected. At level 1 these are the
/// singletons.
pub fn maximally_linked(poset: &RankedPoset, w: &ElementSubset) -> Vec<ElementSubset> {
    let n = poset.rank(w.members[0]);
    if n <= 1 {
        return w
            .members
            .iter()
            .map(|&s| ElementSubset::at_level(vec![s], n))
            .collect();
    }
    let window = poset
        .layer_window(&w.members, 1)
        .expect("level set with n >= 2");
    poset
        .hasse_components(&window)
        .into_iter()
        .map(|comp| {
            let part: Vec<usize> = comp.into_iter().filter(|s| w.contains(*s)).collect();
            ElementSubset::at_level(part, n)
        })
        .filter(|s| !s.is_empty())
        .collect()
}

/// `T(Γ_x)` and `M(Γ_x)`, computed inside `Γ` (the classes only involve elements below `x`).
pub fn tm_sets_at(poset: &RankedPoset, x: usize) -> LevelSetFamily {
    let top_rank = poset.rank(x);
    let mut t: Vec<Vec<ElementSubset>> = vec![Vec::new(); top_rank];
    if top_rank == 0 {
        return LevelSetFamily { top: x, t, m: Vec::new() };
    }
    t[top_rank - 1] = vec![ElementSubset::at_level(vec![x], top_rank)];
    for n in (1..top_rank).rev() {
        let mut seen = BTreeSet::new();
        let mut level = Vec::new();
        for w in &t[n] {
            let classes = sim_w_classes(poset, &w.members);
            for &s in &w.members {
                for &z in poset.lower_covers_plus(s) {
                    let class = classes.iter().find(|c| c.contains(&z)).expect("partition");
                    if seen.insert(class.clone()) {
                        level.push(ElementSubset::at_level(class.clone(), n));
                    }
                }
            }
        }
        level.sort();
        t[n - 1] = level;
    }
    let m = t
        .iter()
        .map(|level| {
            let mut out: Vec<ElementSubset> = level.iter().flat_map(|w| maximally_linked(poset, w)).collect();
            out.sort();
            out.dedup();
            out
        })
        .collect();
    LevelSetFamily { top: x, t, m }
}

pub fn tm_sets(poset: &RankedPoset) -> Result<LevelSetFamily, PosetError> {
    let top = poset.require_cyclic()?;
    Ok(tm_sets_at(poset, top))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixture;

    fn named(p: &RankedPoset, fam: &[ElementSubset]) -> Vec<Vec<String>> {
        fam.iter().map(|s| s.names(p)).collect()
    }

    #[test]
    fn classes() {
        let d = fixture("diamond").unwrap();
        let c = d.index_of("c").unwrap();
        assert_eq!(sim_w_classes(&d, &[c]), vec![vec![1, 2], vec![3]]);
        let p = fixture("pinch").unwrap();
        let x = p.index_of("x").unwrap();
        let uv = class_of(&p, &[x], p.index_of("u").unwrap());
        assert_eq!(p.names_of(&uv), vec!["u", "v"]);
        let w = [p.index_of("u").unwrap(), p.index_of("v").unwrap()];
        let cl = sim_w_classes(&p, &w);
        assert_eq!(cl.len(), p.len() - 1);
    }

    #[test]
    fn diamond_family() {
        let d = fixture("diamond").unwrap();
        let f = tm_sets(&d).unwrap();
        assert_eq!(named(&d, f.t_level(2)), vec![vec!["c"]]);
        assert_eq!(named(&d, f.t_level(1)), vec![vec!["a", "b"]]);
        assert_eq!(named(&d, f.m_level(1)), vec![vec!["a"], vec!["b"]]);
    }

    #[test]
    fn pinch_family() {
        let p = fixture("pinch").unwrap();
        let f = tm_sets(&p).unwrap();
        assert_eq!(named(&p, f.t_level(2)), vec![vec!["u", "v"]]);
        assert_eq!(named(&p, f.m_level(2)), vec![vec!["u"], vec!["v"]]);
        assert_eq!(named(&p, f.t_level(3)), vec![vec!["x"]]);
    }

    #[test]
    fn cycle4_levels_are_whole() {
        let c = fixture("cycle4").unwrap();
        let f = tm_sets(&c).unwrap();
        for n in 2..=3 {
            assert_eq!(f.m_level(n).len(), 1);
            assert_eq!(f.m_level(n)[0].members, c.level(n));
        }
    }

    #[test]
    fn not_cyclic() {
        let c = fixture("cycle4").unwrap();
        let two = RankedPoset::wedge(&c, &c).unwrap();
        assert!(tm_sets(&two).is_err());
    }
}
