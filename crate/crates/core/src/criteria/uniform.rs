use serde::Serialize;

use super::levels::find_classes;
use crate::poset::RankedPoset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformWitness {
    pub element: String,
    pub classes: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformVerdict {
    pub holds: bool,
    pub witnesses: Vec<UniformWitness>,
    /// The class count of `∼_x` and connectivity of `Γ_{x,3}` gave the same answer everywhere.
    pub formulations_agree: bool,
}

/// Classes of `∼_x` on `S_x(1)`: lower covers sharing a lower cover (possibly `*`).
pub fn sim_x_classes(poset: &RankedPoset, x: usize) -> Vec<Vec<usize>> {
    let covers = poset.lower_covers(x).to_vec();
    find_classes(&covers, |u, v| {
        poset
            .lower_covers(u)
            .iter()
            .any(|z| poset.lower_covers(v).contains(z))
    })
}

pub fn is_uniform(poset: &RankedPoset) -> UniformVerdict {
    let mut witnesses = Vec::new();
    let mut agree = true;
    for x in poset.plus() {
        let classes = sim_x_classes(poset, x);
        let single = classes.len() <= 1;
        if poset.rank(x) >= 3 {
            agree &= poset.hasse_connected(&poset.gamma_ai(x, 3)) == single;
        }
        if !single {
            witnesses.push(UniformWitness {
                element: poset.name(x).to_string(),
                classes: classes.iter().map(|c| poset.names_of(c)).collect(),
            });
        }
    }
    UniformVerdict {
        holds: witnesses.is_empty(),
        witnesses,
        formulations_agree: agree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixture;

    #[test]
    fn fixtures() {
        for (name, expect) in [("diamond", true), ("chain3", true), ("cycle4", true), ("pinch", false), ("wedge", false)] {
            let v = is_uniform(&fixture(name).unwrap());
            assert_eq!(v.holds, expect, "{name}");
            assert!(v.formulations_agree);
        }
    }

    #[test]
    fn pinch_witness() {
        let v = is_uniform(&fixture("pinch").unwrap());
        assert_eq!(
            v.witnesses,
            vec![UniformWitness {
                element: "x".into(),
                classes: vec![vec!["u".into()], vec!["v".into()]],
            }]
        );
    }
}
