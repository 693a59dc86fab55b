//! Finite abelian groups, p.p.-definable subgroups and their lattices.

mod abelian;
mod formula;
mod homocyclic;
pub mod padic;
mod pplattice;
mod slow;
mod stabilize;
mod subgroup;

pub use abelian::{
    tuple_index, tuple_parts, CyclicProduct, Factor, FiniteAbelianGroup, DEFAULT_ELEMENT_CAP,
    DEFAULT_TUPLE_CAP,
};
pub use formula::{pp_subgroup, PPFormula};
pub use homocyclic::{homocyclic_compare, SymbolicPP};
pub use pplattice::{
    close_under_meet_and_sum, lattice_of_subgroups, pp_lattice, pp_lattice_direct,
    pp_lattice_power, product_lattice, DEFAULT_LATTICE_CAP,
};
pub use slow::{
    a_mu, chain_partition, lambda_iso, mu_of, p_points, p_poset, slow_tuple_lattice,
    validate_lambda, verify_chain_partition, ChainPartition, SlowTupleLattice, DEFAULT_LAMBDA_CAP,
};
pub use stabilize::{
    conjunction_log_size, stabilize, stabilize_agrees_brute, stabilize_pp_conjunction,
    StabilizeReport,
};
pub use subgroup::Subgroup;

pub(crate) use abelian::is_prime;
