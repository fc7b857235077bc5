//! Exact decision procedures for ranked posets: Cohen-Macaulayness, uniformity, the weakly
//! Cohen-Macaulay property, and Koszulity of the quadratic algebra `R_Γ` attached to a poset.

pub mod algebra;
pub mod criteria;
pub mod exactlin;
pub mod harness;
pub mod poset;
pub mod topology;
