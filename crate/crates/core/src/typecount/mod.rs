//! Counting `Δ`-types over finite parameter sets in finite abelian groups.

mod fit;
mod formulas;
mod pistar;
mod witness;

pub use fit::{least_squares_slope, loglog_slope};
pub use formulas::{Atom, Combo, FormulaSet, TypeCounter};
pub use pistar::{
    greedy_params, greedy_profile, pi_star, pi_star_profile, CountMode, PiStarMode,
    TypeCountReport, TypeCountRow, DEFAULT_PARAM_SUBSET_CAP,
};
pub use witness::{
    bigraph_of_formula, breadth_type_bound, direct_sum_product_check, lower_bound_witness,
    LowerBoundWitness, ProductCheck,
};

use crate::error::Result;
use crate::ppgroups::{FiniteAbelianGroup, DEFAULT_ELEMENT_CAP};

/// `|S^Δ(B)|` for parameter tuples `B` (indices into `A^{n_y}`).
pub fn count_types(g: &FiniteAbelianGroup, fs: &FormulaSet, params: &[u64]) -> Result<usize> {
    TypeCounter::new(g, fs, DEFAULT_ELEMENT_CAP)?.count(params)
}
