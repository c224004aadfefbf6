//! Exact computations for the principal congruence subgroups Γ_q, the
//! intermediate groups Γ_q^n, their cusps and genera, and the semi-hyperelliptic
//! equations of the curves X_q^n = H*/Γ_q^n.

pub mod arith;
pub mod canonical;
pub mod curve;
pub mod cusps;
pub mod cyclotomic;
pub mod equation;
pub mod error;
pub mod genus;
pub mod group;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
