//! Order complexes, reduced cohomology, Cohen-Macaulay tests and the interval spectral sequence.

mod cm;
mod complex;
mod spectral;

pub use cm::{is_cm, is_cm_alt, CmAltVerdict, CmVerdict, IntervalWitness, TruncationWitness};
pub use complex::{reduced_cohomology, OrderComplex};
pub use spectral::{spectral_sequence, PageEntry, PageMap, SpectralSequence, SpectralSummary};
