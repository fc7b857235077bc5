use serde::Serialize;

use super::HarnessError;
use crate::algebra::{
    build_graded, ext_prefix, hilbert_direct, hilbert_via_cohomology, AlgebraError, AnnihilatorReport, KoszulWitness,
    DEFAULT_DIMENSION_CAP,
};
use crate::criteria::{
    psi_check, verify_theorems, BarCriterion, KPolicy, PrincipalCheck, RelativeKoszul, UniformWitness, WeaklyCmWitness,
};
use crate::exactlin::{Field, FieldSpec};
use crate::poset::RankedPoset;
use crate::topology::{spectral_sequence, IntervalWitness};
use crate::with_field;

pub const REPORT_SCHEMA: &str = "poset-koszul-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conventions {
    pub k_policy: KPolicy,
    /// `Γ(W, k)` never contains `*`.
    pub window_excludes_star: bool,
    pub notes: Vec<String>,
}

impl Conventions {
    pub fn new(policy: KPolicy) -> Self {
        let range = match policy {
            KPolicy::Derived => "2 <= k <= n-1",
            KPolicy::Literal => "0 <= k <= n-1",
        };
        Conventions {
            k_policy: policy,
            window_excludes_star: true,
            notes: vec![
                format!("weakly CM tests H^(k-1)(S(Γ(W,k))) = 0 for W in M_n(Γ_x), {range}"),
                "Γ(W,k) = elements of Γ_W with rank in [n-k, n], * excluded".to_string(),
                "S-complex cochains use the non-augmented convention".to_string(),
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub uniform: bool,
    /// Only defined for cyclic posets.
    pub cm: Option<bool>,
    pub weakly_cm: Option<bool>,
    pub koszul: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hilbert {
    pub direct: Vec<usize>,
    pub via_cohomology: Vec<usize>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorSummary {
    pub checked_sets: usize,
    pub failing_sets: usize,
    pub closed_form_mismatches: usize,
    pub class_kernel_mismatches: usize,
    pub table: Vec<AnnihilatorReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub uniform: Vec<UniformWitness>,
    pub cm: Vec<IntervalWitness>,
    pub weakly_cm: Vec<WeaklyCmWitness>,
    pub koszul: Vec<KoszulWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub name: String,
    pub field: FieldSpec,
    pub elements: usize,
    pub rank: usize,
    pub cyclic: bool,
    pub verdicts: Verdicts,
    pub hilbert: Hilbert,
    pub annihilators: AnnihilatorSummary,
    pub witnesses: Witnesses,
    pub principal_ideals: Vec<PrincipalCheck>,
    pub bar_criterion: Option<BarCriterion>,
    pub relative_koszul: Option<RelativeKoszul>,
    pub consistent: bool,
    pub violations: Vec<String>,
    pub conventions: Conventions,
}

fn analyze_in<F: Field>(
    poset: &RankedPoset,
    name: &str,
    field: &F,
    spec: FieldSpec,
    policy: KPolicy,
) -> Result<AnalysisReport, HarnessError> {
    let t = verify_theorems(poset, field, policy)?;
    let direct = hilbert_direct(&build_graded(poset, field));
    let via_cohomology = hilbert_via_cohomology(poset, field);
    let agree = direct == via_cohomology;
    let mut violations = t.violations.clone();
    if !agree {
        violations.push(format!("hilbert routes disagree: {direct:?} vs {via_cohomology:?}"));
    }
    let k = &t.koszul;
    let annihilators = AnnihilatorSummary {
        checked_sets: k.checked_sets,
        failing_sets: k.witnesses.len(),
        closed_form_mismatches: k.closed_form_mismatches(),
        class_kernel_mismatches: k.class_kernel_mismatches(),
        table: k.reports.clone(),
    };
    Ok(AnalysisReport {
        schema: REPORT_SCHEMA.to_string(),
        name: name.to_string(),
        field: spec,
        elements: poset.len(),
        rank: t.rank,
        cyclic: t.cyclic,
        verdicts: Verdicts {
            uniform: t.uniform.holds,
            cm: t.cm.as_ref().map(|c| c.holds),
            weakly_cm: t.weakly_cm.as_ref().map(|w| w.holds),
            koszul: k.koszul,
        },
        hilbert: Hilbert {
            direct,
            via_cohomology,
            agree,
        },
        annihilators,
        witnesses: Witnesses {
            uniform: t.uniform.witnesses.clone(),
            cm: t.cm.map(|c| c.witnesses).unwrap_or_default(),
            weakly_cm: t.weakly_cm.map(|w| w.witnesses).unwrap_or_default(),
            koszul: t.koszul.witnesses.clone(),
        },
        principal_ideals: t.principal,
        bar_criterion: t.bar_criterion,
        relative_koszul: t.relative,
        consistent: violations.is_empty(),
        violations,
        conventions: Conventions::new(policy),
    })
}

/// Every decider on one poset, gathered into a report document.
pub fn analyze(poset: &RankedPoset, name: &str, field: FieldSpec, policy: KPolicy) -> Result<AnalysisReport, HarnessError> {
    Ok(with_field!(field, f => analyze_in(poset, name, &f, field, policy)?)?)
}

/// Verdicts and every cross-check the corpus sweep asserts, for one poset and field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullCheck {
    pub uniform: bool,
    pub cm: bool,
    pub weakly_cm: bool,
    pub koszul: bool,
    pub violations: Vec<String>,
}

pub fn full_check<F: Field>(poset: &RankedPoset, field: &F, policy: KPolicy) -> Result<FullCheck, HarnessError> {
    let t = verify_theorems(poset, field, policy)?;
    let mut violations = t.violations.clone();
    let alg = build_graded(poset, field);
    let rank = poset.max_rank();

    let direct = hilbert_direct(&alg);
    let via = hilbert_via_cohomology(poset, field);
    if direct != via {
        violations.push(format!("hilbert routes disagree: {direct:?} vs {via:?}"));
    }

    for k in 0..rank {
        let psi = psi_check(&alg, k)?;
        if !psi.passes() || psi.s_dims != psi.r_dims {
            violations.push(format!(
                "psi fails at k = {k}: well_defined {}, commutes {}, bijective {}, dims {:?} vs {:?}",
                psi.well_defined, psi.commutes, psi.bijective, psi.s_dims, psi.r_dims
            ));
        }
    }

    let cm = t.cm.as_ref().is_some_and(|c| c.holds);
    let ss = spectral_sequence(poset, field)?.summary(poset, field);
    if !ss.all_checks_pass() {
        violations.push(format!(
            "spectral checks: e0 {}, e1 intervals {}, pages {}, stabilized {}, converges {}",
            ss.e0_vanishing_ok, ss.e1_matches_intervals, ss.pages_are_cohomology, ss.stabilized, ss.converges
        ));
    }
    if cm && !ss.e1_on_cm_line {
        violations.push("CM poset with E^1 off the line q = m - 2p".to_string());
    }

    match ext_prefix(&alg, rank + 1, DEFAULT_DIMENSION_CAP) {
        Ok(betti) => {
            if betti.linear != t.koszul.koszul {
                violations.push(format!(
                    "resolution linear to degree {} = {} but koszul = {}",
                    rank + 1,
                    betti.linear,
                    t.koszul.koszul
                ));
            }
        }
        Err(e @ AlgebraError::BoundTooLarge { .. }) => violations.push(format!("resolution not computed: {e}")),
        Err(e) => return Err(e.into()),
    }

    Ok(FullCheck {
        uniform: t.uniform.holds,
        cm,
        weakly_cm: t.weakly_cm.is_some_and(|w| w.holds),
        koszul: t.koszul.koszul,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rationals;
    use crate::poset::fixture;

    #[test]
    fn diamond_report() {
        let r = analyze(&fixture("diamond").unwrap(), "diamond", FieldSpec::Rational, KPolicy::Derived).unwrap();
        assert_eq!(r.hilbert.direct, vec![1, 3, 1]);
        assert!(r.hilbert.agree && r.consistent);
        assert_eq!(
            r.verdicts,
            Verdicts {
                uniform: true,
                cm: Some(true),
                weakly_cm: Some(true),
                koszul: true
            }
        );
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["schema"], REPORT_SCHEMA);
        assert_eq!(json["conventions"]["k_policy"], "derived");
    }

    #[test]
    fn fixtures_full_check() {
        for name in crate::poset::fixture_names() {
            let c = full_check(&fixture(name).unwrap(), &Rationals, KPolicy::Derived).unwrap();
            assert!(c.violations.is_empty(), "{name}: {:?}", c.violations);
        }
    }
}
