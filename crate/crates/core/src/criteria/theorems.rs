use serde::Serialize;

use super::levels::tm_sets_at;
use super::uniform::{is_uniform, UniformVerdict};
use super::weakly::{weakly_cm, KPolicy, WeaklyCmVerdict};
use crate::algebra::{build_graded, koszul_decide, r_subcomplex, rann_vs_l, AlgebraError, KoszulVerdict};
use crate::exactlin::Field;
use crate::poset::RankedPoset;
use crate::topology::{is_cm, is_cm_alt, CmVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipalCheck {
    pub element: String,
    pub weakly_cm: bool,
    pub koszul: bool,
}

/// For `Γ = Γ̄'` with every proper principal ideal Cohen-Macaulay: `Γ` is weakly
/// Cohen-Macaulay iff `\overline{Γ_W}` is Cohen-Macaulay for every `W ∈ M_m(Γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarCriterion {
    pub sets: Vec<(Vec<String>, bool)>,
    pub predicted: bool,
    pub direct: bool,
}

/// The three conditions of the relative Koszulity theorem for `Γ = Γ_x`, `Ω = Γ \ {x}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeKoszul {
    pub omega_koszul: bool,
    pub koszul: bool,
    /// `rann = L` for every `W ∈ M(Γ)`.
    pub annihilators: bool,
    /// `H^{n-2}(R_{Γ_W}(•, k)) = 0` for `1 < n <= m`, `W ∈ M_n`, `0 <= k <= n-3`.
    pub cohomology: bool,
    /// The same vanishing with the top level `n = m+1` included.
    pub cohomology_all_levels: bool,
    /// With `R_Ω` Koszul, some condition disagrees with Koszulity.
    pub discrepancy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub cyclic: bool,
    pub rank: usize,
    pub uniform: UniformVerdict,
    pub cm: Option<CmVerdict>,
    pub cm_alt_agrees: Option<bool>,
    pub weakly_cm: Option<WeaklyCmVerdict>,
    pub koszul: KoszulVerdict,
    pub principal: Vec<PrincipalCheck>,
    pub bar_criterion: Option<BarCriterion>,
    pub relative: Option<RelativeKoszul>,
    pub violations: Vec<String>,
}

impl TheoremReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

fn bar_criterion<F: Field>(poset: &RankedPoset, field: &F, direct: bool) -> Result<Option<BarCriterion>, AlgebraError> {
    let top = poset.top()?;
    if poset.rank(top) < 2 {
        return Ok(None);
    }
    let m = poset.rank(top) - 1;
    for x in poset.plus().filter(|&x| x != top) {
        if !is_cm(&poset.principal_ideal(x), field)?.holds {
            return Ok(None);
        }
    }
    let fam = tm_sets_at(poset, top);
    let mut sets = Vec::new();
    for w in fam.m_level(m) {
        let closed = poset.below(&w.members)?.adjoin_top()?;
        sets.push((w.names(poset), is_cm(&closed, field)?.holds));
    }
    Ok(Some(BarCriterion {
        predicted: sets.iter().all(|(_, ok)| *ok),
        sets,
        direct,
    }))
}

fn relative_koszul<F: Field>(poset: &RankedPoset, field: &F, koszul: bool) -> Result<RelativeKoszul, AlgebraError> {
    let top = poset.top()?;
    let m = poset.rank(top) - 1;
    let omega = poset.drop_top()?;
    let omega_koszul = koszul_decide(&omega, field)?.koszul;
    let alg = build_graded(poset, field);
    let fam = tm_sets_at(poset, top);
    let mut annihilators = true;
    let mut cohomology = true;
    let mut cohomology_all_levels = true;
    for n in 1..=m + 1 {
        for w in fam.m_level(n) {
            annihilators &= rann_vs_l(&alg, &w.members)?.equal;
            if n < 2 {
                continue;
            }
            let gw = poset.below(&w.members)?;
            let sub = build_graded(&gw, field);
            for k in 0..n.saturating_sub(2) {
                let h = r_subcomplex(&sub, k)?;
                if h.at(n as i64 - 2) != 0 {
                    cohomology_all_levels = false;
                    if n <= m {
                        cohomology = false;
                    }
                }
            }
        }
    }
    let discrepancy = omega_koszul && (koszul != annihilators || koszul != cohomology);
    Ok(RelativeKoszul {
        omega_koszul,
        koszul,
        annihilators,
        cohomology,
        cohomology_all_levels,
        discrepancy,
    })
}

/// Runs every decider on `Γ` and checks the biconditionals that tie them together.
pub fn verify_theorems<F: Field>(poset: &RankedPoset, field: &F, policy: KPolicy) -> Result<TheoremReport, AlgebraError> {
    let cyclic = poset.is_cyclic();
    let rank = poset.max_rank();
    let uniform = is_uniform(poset);
    let koszul = koszul_decide(poset, field)?;
    let mut violations = Vec::new();
    if !uniform.formulations_agree {
        violations.push("uniform: class count and Γ_{x,3} connectivity disagree".to_string());
    }
    if rank <= 3 && !koszul.koszul {
        violations.push("rank <= 3 but R_Γ is not Koszul".to_string());
    }
    if koszul.closed_form_mismatches() > 0 {
        violations.push("L(r_W) differs from its class decomposition".to_string());
    }
    if koszul.class_kernel_mismatches() > 0 {
        violations.push("~^W classes differ from the degree-1 annihilator".to_string());
    }

    let mut report = TheoremReport {
        cyclic,
        rank,
        uniform,
        cm: None,
        cm_alt_agrees: None,
        weakly_cm: None,
        koszul,
        principal: Vec::new(),
        bar_criterion: None,
        relative: None,
        violations: Vec::new(),
    };

    if cyclic {
        let cm = is_cm(poset, field)?;
        let cm_alt = is_cm_alt(poset, field)?;
        let wcm = weakly_cm(poset, field, policy)?;
        let (c, u, k, w) = (cm.holds, report.uniform.holds, report.koszul.koszul, wcm.holds);
        if cm_alt.holds != c {
            violations.push(format!("is_cm = {c} but the truncation criterion gives {}", cm_alt.holds));
        }
        if w != k {
            violations.push(format!("weakly_cm = {w} but koszul = {k}"));
        }
        if c != (u && k) {
            violations.push(format!("cm = {c} but uniform ∧ koszul = {}", u && k));
        }
        if c != (u && w) {
            violations.push(format!("cm = {c} but uniform ∧ weakly_cm = {}", u && w));
        }
        report.bar_criterion = bar_criterion(poset, field, w)?;
        if let Some(bar) = &report.bar_criterion {
            if bar.predicted != bar.direct {
                violations.push(format!(
                    "bar criterion predicts weakly_cm = {} but the direct check gives {}",
                    bar.predicted, bar.direct
                ));
            }
        }
        if rank >= 1 {
            let rel = relative_koszul(poset, field, k)?;
            if rel.omega_koszul && rel.koszul != rel.annihilators {
                violations.push("R_Ω Koszul, yet Koszulity and rann = L over M(Γ) disagree".to_string());
            }
            report.relative = Some(rel);
        }
        report.cm_alt_agrees = Some(cm_alt.holds == c);
        report.cm = Some(cm);
        report.weakly_cm = Some(wcm);
    } else {
        let mut all = true;
        for x in poset.maximal_elements().into_iter().filter(|&x| x != 0) {
            let sub = poset.principal_ideal(x);
            let w = weakly_cm(&sub, field, policy)?.holds;
            let k = koszul_decide(&sub, field)?.koszul;
            if w != k {
                violations.push(format!("Γ_{}: weakly_cm = {w} but koszul = {k}", poset.name(x)));
            }
            all &= w;
            report.principal.push(PrincipalCheck {
                element: poset.name(x).to_string(),
                weakly_cm: w,
                koszul: k,
            });
        }
        if all != report.koszul.koszul {
            violations.push(format!(
                "every maximal Γ_x weakly CM = {all} but koszul = {}",
                report.koszul.koszul
            ));
        }
    }
    report.violations = violations;
    Ok(report)
}
