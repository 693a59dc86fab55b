//! Order-theoretic invariants of finite lattices, p.p.-definable subgroups of
//! finite abelian groups, type counting, and the symbolic classifiers built on them.

pub mod error;
pub mod io;
pub mod lattice;
pub mod ppgroups;
pub mod setsystem;
pub mod sidon;
pub mod szmielew;
pub mod typecount;

pub use error::{Error, Result};

/// Row reduction over `Z_(p)` with machine integers; enough for small exponents.
pub type Echelon128 = ppgroups::padic::Echelon<i128>;
/// Row reduction over `Z_(p)` with arbitrary precision.
pub type EchelonBig = ppgroups::padic::Echelon<num_bigint::BigInt>;
