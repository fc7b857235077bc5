use std::collections::BTreeSet;

use serde::Serialize;

use super::{build_graded, AlgebraError, GradedAlgebra};
use crate::criteria::{sim_w_classes, tm_sets_at};
use crate::exactlin::{Echelon, Field};
use crate::poset::RankedPoset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub rann: usize,
    pub l: usize,
    /// `dim ⊕_C r_C R` over the `~^W` classes.
    pub closed_form: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorReport {
    pub w: Vec<String>,
    pub level: usize,
    pub rows: Vec<DegreeRow>,
    pub equal: bool,
    pub first_failure: Option<usize>,
    /// Ideal-theoretic `L` and the class decomposition span the same space in every degree.
    pub closed_form_agrees: bool,
    /// `rann_1` is spanned by the class indicator vectors.
    pub classes_match_kernel: bool,
    pub l_within_rann: bool,
}

/// `Σ_x a_x r_x · u` in quotient coordinates of degree `1 + |u|`.
fn times_word<F: Field>(alg: &GradedAlgebra<F>, a: &[F::Elem], u: &[usize]) -> Vec<F::Elem> {
    let f = alg.field();
    let d = u.len() + 1;
    let mut v = vec![f.zero(); alg.word_count(d)];
    for (i, coeff) in a.iter().enumerate() {
        if f.is_zero(coeff) {
            continue;
        }
        let x = alg.basis_word(1, i)[0];
        if !u.is_empty() && !alg.poset().covers(x, u[0]) {
            continue;
        }
        let mut w = vec![x];
        w.extend_from_slice(u);
        if let Some(j) = alg.word_index(&w) {
            v[j] = f.add(&v[j], coeff);
        }
    }
    alg.project(d, v)
}

/// The degree-`d` part of the right ideal generated by `gens ⊂ R_1`.
fn right_ideal<F: Field>(alg: &GradedAlgebra<F>, gens: &[Vec<F::Elem>], d: usize) -> Echelon<F> {
    let mut e = Echelon::new(alg.field(), alg.dim(d));
    if d == 0 {
        return e;
    }
    for u in alg.basis_words(d - 1) {
        for a in gens {
            e.insert(times_word(alg, a, u));
        }
    }
    e
}

/// Compares `rann(r_W)` with `L(r_W) = rann_1(r_W) · R` in every degree.
pub fn rann_vs_l<F: Field>(alg: &GradedAlgebra<F>, w: &[usize]) -> Result<AnnihilatorReport, AlgebraError> {
    let poset = alg.poset();
    if w.is_empty() {
        return Err(AlgebraError::EmptyW);
    }
    let level = poset.rank(w[0]);
    if w.iter().any(|&s| poset.rank(s) != level) {
        return Err(AlgebraError::WNotLevel(poset.names_of(w)));
    }
    let f = alg.field();
    let rann: Vec<Echelon<F>> = (0..=alg.top_degree())
        .map(|d| Echelon::from_vectors(f, alg.dim(d), alg.left_sum(w, d).kernel_basis()))
        .collect();
    let gens = rann.get(1).map(|e| e.basis().to_vec()).unwrap_or_default();

    let classes = sim_w_classes(poset, w);
    let indicators: Vec<Vec<F::Elem>> = classes
        .iter()
        .map(|c| {
            let mut v = vec![f.zero(); alg.dim(1)];
            for &u in c {
                v[u - 1] = f.one();
            }
            v
        })
        .collect();
    let classes_match_kernel = alg.top_degree() == 0
        || Echelon::from_vectors(f, alg.dim(1), indicators.clone()).same_space(&rann[1]);

    let mut rows = Vec::new();
    let mut first_failure = None;
    let mut closed_form_agrees = true;
    let mut l_within_rann = true;
    for d in 0..=alg.top_degree() {
        let l = right_ideal(alg, &gens, d);
        let cf = right_ideal(alg, &indicators, d);
        closed_form_agrees &= l.same_space(&cf);
        l_within_rann &= l.is_subspace_of(&rann[d]);
        if first_failure.is_none() && !l.same_space(&rann[d]) {
            first_failure = Some(d);
        }
        rows.push(DegreeRow {
            degree: d,
            rann: rann[d].rank(),
            l: l.rank(),
            closed_form: cf.rank(),
        });
    }
    Ok(AnnihilatorReport {
        w: poset.names_of(w),
        level,
        rows,
        equal: first_failure.is_none(),
        first_failure,
        closed_form_agrees,
        classes_match_kernel,
        l_within_rann,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulWitness {
    /// The principal ideal `Γ_x` whose T-sets produced `W`.
    pub principal: String,
    pub w: Vec<String>,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulVerdict {
    pub koszul: bool,
    /// `"cyclic"` or `"maximal-principal-ideals"`.
    pub mode: String,
    pub checked_sets: usize,
    pub witnesses: Vec<KoszulWitness>,
    pub reports: Vec<AnnihilatorReport>,
}

impl KoszulVerdict {
    pub fn closed_form_mismatches(&self) -> usize {
        self.reports.iter().filter(|r| !r.closed_form_agrees).count()
    }

    pub fn class_kernel_mismatches(&self) -> usize {
        self.reports.iter().filter(|r| !r.classes_match_kernel).count()
    }
}

/// Every `W ∈ 𝒯(Γ) = ∪_x T(Γ_x)` for a cyclic poset, each tagged with its first `x`.
fn script_t(poset: &RankedPoset) -> Vec<(usize, Vec<usize>)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in poset.plus() {
        for level in tm_sets_at(poset, x).t {
            for w in level {
                if seen.insert(w.members.clone()) {
                    out.push((x, w.members));
                }
            }
        }
    }
    out
}

fn decide_cyclic<F: Field>(alg: &GradedAlgebra<F>, principal: &str) -> Result<(usize, Vec<KoszulWitness>, Vec<AnnihilatorReport>), AlgebraError> {
    let poset = alg.poset();
    let sets = script_t(poset);
    let mut witnesses = Vec::new();
    let mut reports = Vec::new();
    for (_, w) in &sets {
        let rep = rann_vs_l(alg, w)?;
        if let Some(degree) = rep.first_failure {
            witnesses.push(KoszulWitness {
                principal: principal.to_string(),
                w: rep.w.clone(),
                degree,
            });
        }
        reports.push(rep);
    }
    Ok((sets.len(), witnesses, reports))
}

/// Koszulity through annihilators. A cyclic poset is checked on all of `𝒯(Γ)`; otherwise
/// each maximal principal ideal is checked on its own algebra.
pub fn koszul_decide<F: Field>(poset: &RankedPoset, field: &F) -> Result<KoszulVerdict, AlgebraError> {
    let (mode, parts) = if poset.is_cyclic() {
        ("cyclic", vec![(poset.clone(), poset.top().map(|t| poset.name(t).to_string())?)])
    } else {
        (
            "maximal-principal-ideals",
            poset
                .maximal_elements()
                .into_iter()
                .filter(|&x| x != 0)
                .map(|x| (poset.principal_ideal(x), poset.name(x).to_string()))
                .collect(),
        )
    };
    let mut checked = 0;
    let mut witnesses = Vec::new();
    let mut reports = Vec::new();
    for (sub, name) in parts {
        let alg = build_graded(&sub, field);
        let (c, w, r) = decide_cyclic(&alg, &name)?;
        checked += c;
        witnesses.extend(w);
        reports.extend(r);
    }
    Ok(KoszulVerdict {
        koszul: witnesses.is_empty(),
        mode: mode.to_string(),
        checked_sets: checked,
        witnesses,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::poset::fixture;

    fn ids(p: &RankedPoset, names: &[&str]) -> Vec<usize> {
        names.iter().map(|n| p.index_of(n).unwrap()).collect()
    }

    #[test]
    fn diamond_top() {
        let p = fixture("diamond").unwrap();
        let alg = build_graded(&p, &Rationals);
        let rep = rann_vs_l(&alg, &ids(&p, &["c"])).unwrap();
        assert!(rep.equal && rep.closed_form_agrees && rep.classes_match_kernel);
        assert_eq!(rep.rows[1].rann, 2);
    }

    #[test]
    fn pinch_middle_level() {
        let p = fixture("pinch").unwrap();
        let alg = build_graded(&p, &Rationals);
        let rep = rann_vs_l(&alg, &ids(&p, &["u", "v"])).unwrap();
        assert!(rep.equal);
        for row in &rep.rows[1..] {
            assert_eq!(row.rann, alg.dim(row.degree));
        }
    }

    #[test]
    fn cycle4_top() {
        let p = fixture("cycle4").unwrap();
        let alg = build_graded(&p, &PrimeField::new(2).unwrap());
        let rep = rann_vs_l(&alg, &ids(&p, &["x"])).unwrap();
        assert!(rep.equal);
        assert_eq!((rep.rows[2].rann, rep.rows[2].l), (2, 2));
    }

    #[test]
    fn bad_w() {
        let p = fixture("pinch").unwrap();
        let alg = build_graded(&p, &Rationals);
        assert_eq!(rann_vs_l(&alg, &[]), Err(AlgebraError::EmptyW));
        assert!(matches!(rann_vs_l(&alg, &ids(&p, &["a", "u"])), Err(AlgebraError::WNotLevel(_))));
    }

    #[test]
    fn fixtures_are_koszul() {
        for name in crate::poset::fixture_names() {
            let p = fixture(name).unwrap();
            let v = koszul_decide(&p, &Rationals).unwrap();
            assert!(v.koszul, "{name}");
            assert_eq!(v.closed_form_mismatches(), 0);
        }
        let c = fixture("cycle4").unwrap();
        let two = RankedPoset::wedge(&c, &c).unwrap();
        let v = koszul_decide(&two, &Rationals).unwrap();
        assert_eq!(v.mode, "maximal-principal-ideals");
        assert!(v.koszul);
    }
}
