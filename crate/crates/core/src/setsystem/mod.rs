//! Finite set systems: shatter functions, VC dimension, breadth, coset
//! systems and bipartite graphs.

mod bigraph;
mod nsets;
mod system;

pub use bigraph::{Bigraph, KrrWitness, MAX_R};
pub use nsets::gen_n_sets;
pub use system::{
    breadth_of_system, coset_system, shatter_profile, subgroup_system, vc_dim, CappedCount,
    SetSystem, ShatterMode, ShatterProfile, ShatterRow, DEFAULT_SUBSET_CAP, MAX_TRACE_POINTS,
};

pub(crate) use system::binomial;
