//! Finite orders and lattices and their order-theoretic invariants.

mod breadth;
mod dimension;
mod iso;
#[allow(clippy::module_inception)]
mod lattice;
mod poset;
mod width;

pub use breadth::{breadth, breadth_irredundant, is_irredundant};
pub use dimension::{
    critical_pairs, is_realizer, order_dimension, order_dimension_brute, Dimension,
    DEFAULT_CRITICAL_PAIR_CAP, DEFAULT_NODE_BUDGET,
};
pub use iso::{find_isomorphism, is_order_isomorphism, isomorphic, DEFAULT_ISO_BUDGET};
pub use lattice::{
    classify, count_downsets, downset_lattice, goldie_dims, is_join_independent, join_irreducibles,
    Lattice, LatticeClass,
};
pub use poset::Poset;
pub use width::{height, max_antichain_brute, width, ChainCover};

/// Default cap on the number of down-sets enumerated by [`downset_lattice`].
pub const DEFAULT_DOWNSET_CAP: usize = 1 << 16;
