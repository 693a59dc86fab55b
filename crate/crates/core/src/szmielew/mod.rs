//! The function `d`, Szmielew invariants, and the classifiers built on them.

mod cardinal;
mod classify;
mod dfun;
mod invariants;
mod ulm;

pub use cardinal::Cardinal;
pub use classify::{
    breadth_finite_exponent, classify, AlephSetReport, ClassificationReport, DpWitness, VcBound,
};
pub use dfun::{d_bounds, d_of, d_of_exhaustive, DBounds, DReport};
pub use invariants::{
    AlphaEntry, AlphaTail, ExponentEntry, PrimeEntry, PrimeTemplate, SzmielewInvariants, TailEntry,
};
pub use ulm::{ulm_closed_form, ulm_invariants};
