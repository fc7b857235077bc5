//! Uniformity, the `~^W` classes and level-set families, `S`-complexes with the map `Ψ`,
//! the weakly Cohen-Macaulay decision, and cross-checks between all deciders.

mod levels;
mod scomplex;
mod theorems;
mod uniform;
mod weakly;

pub use levels::{class_of, maximally_linked, sim_w_classes, tm_sets, tm_sets_at, LevelSetFamily};
pub use scomplex::{psi_check, psi_compare, psi_window, s_complex, PsiReport, SComplex};
pub use theorems::{verify_theorems, BarCriterion, PrincipalCheck, RelativeKoszul, TheoremReport};
pub use uniform::{is_uniform, sim_x_classes, UniformVerdict, UniformWitness};
pub use weakly::{weakly_cm, window_cohomology, KPolicy, WeaklyCmVerdict, WeaklyCmWitness};
