//! File formats, poset generation, verification sweeps and witness search.

mod document;
mod enumerate;
mod random;
mod report;
mod search;
mod sweep;

pub use document::{ElementEntry, PosetDocument};
pub use enumerate::{canonical_key, enumerate_cyclic, poset_from_mask, CyclicEnumerator, EnumerationSpec};
pub use random::{random_cm_poset, random_cyclic};
pub use report::{analyze, full_check, AnalysisReport, Conventions, FullCheck, REPORT_SCHEMA};
pub use search::{search_witness, Atom, Predicate, SearchOutcome, SearchWitness};
pub use sweep::{describe, sweep, FieldTally, SweepReport, SweepViolation};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::exactlin::LinalgError;
use crate::poset::PosetError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("BudgetExceeded: profile {profile:?} has {bits} cover bits, budget is {budget}")]
    BudgetExceeded { profile: Vec<usize>, bits: u32, budget: u32 },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
