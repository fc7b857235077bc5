use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{enumerate_cyclic, EnumerationSpec};
use super::report::{full_check, FullCheck, REPORT_SCHEMA};
use super::HarnessError;
use crate::criteria::KPolicy;
use crate::exactlin::FieldSpec;
use crate::poset::RankedPoset;
use crate::with_field;

/// One-line form of a poset: rank-1 elements by name, the rest as `x>y,z` listing covers.
pub fn describe(poset: &RankedPoset) -> String {
    poset
        .plus()
        .map(|x| {
            let lower = poset.lower_covers_plus(x);
            if lower.is_empty() {
                poset.name(x).to_string()
            } else {
                format!("{}>{}", poset.name(x), poset.names_of(lower).join(","))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FieldTally {
    pub field: String,
    pub posets: usize,
    pub uniform: usize,
    pub cm: usize,
    pub weakly_cm: usize,
    pub koszul: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SweepViolation {
    pub field: String,
    pub poset: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub schema: String,
    pub max_elements: usize,
    pub max_rank: usize,
    pub k_policy: KPolicy,
    pub reject_isomorphs: bool,
    pub corpus_size: usize,
    /// Corpus size keyed by `|Γ|`.
    pub by_size: BTreeMap<usize, usize>,
    pub fields: Vec<FieldTally>,
    pub violations: Vec<SweepViolation>,
}

impl SweepReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs every cross-check on every enumerated poset for every requested field. The result
/// depends only on the spec and policy, never on `jobs`.
pub fn sweep(spec: &EnumerationSpec, policy: KPolicy, jobs: usize) -> Result<SweepReport, HarnessError> {
    let corpus: Vec<RankedPoset> = enumerate_cyclic(spec)?.collect::<Result<_, _>>()?;
    let mut by_size = BTreeMap::new();
    for p in &corpus {
        *by_size.entry(p.len()).or_insert(0) += 1;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| HarnessError::Usage(format!("cannot start worker pool: {e}")))?;
    let fields = if spec.fields.is_empty() {
        vec![FieldSpec::Rational]
    } else {
        spec.fields.clone()
    };
    let mut tallies = Vec::new();
    let mut violations = Vec::new();
    for &field in &fields {
        let checks: Vec<Result<FullCheck, HarnessError>> = pool.install(|| {
            corpus
                .par_iter()
                .map(|p| with_field!(field, f => full_check(p, &f, policy))?)
                .collect()
        });
        let mut tally = FieldTally {
            field: field.tag(),
            ..FieldTally::default()
        };
        for (p, check) in corpus.iter().zip(checks) {
            let c = check?;
            tally.posets += 1;
            tally.uniform += c.uniform as usize;
            tally.cm += c.cm as usize;
            tally.weakly_cm += c.weakly_cm as usize;
            tally.koszul += c.koszul as usize;
            if !c.violations.is_empty() {
                tally.violations += 1;
            }
            for message in c.violations {
                violations.push(SweepViolation {
                    field: field.tag(),
                    poset: describe(p),
                    message,
                });
            }
        }
        tallies.push(tally);
    }
    violations.sort();
    Ok(SweepReport {
        schema: REPORT_SCHEMA.to_string(),
        max_elements: spec.max_elements,
        max_rank: spec.max_rank,
        k_policy: policy,
        reject_isomorphs: spec.reject_isomorphs,
        corpus_size: corpus.len(),
        by_size,
        fields: tallies,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixture;

    #[test]
    fn describe_diamond() {
        assert_eq!(describe(&fixture("diamond").unwrap()), "a b c>a,b");
    }

    #[test]
    fn small_sweep_is_clean_and_thread_independent() {
        let mut spec = EnumerationSpec::new(5, 4);
        spec.fields = vec![FieldSpec::Rational, FieldSpec::Prime(2)];
        let one = sweep(&spec, KPolicy::Derived, 1).unwrap();
        let four = sweep(&spec, KPolicy::Derived, 4).unwrap();
        assert!(one.clean(), "{:?}", one.violations);
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&four).unwrap()
        );
        assert_eq!(one.fields.len(), 2);
    }
}
