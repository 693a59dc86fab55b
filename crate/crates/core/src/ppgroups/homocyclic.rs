use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Representatives of the commensurability classes of p.p. subgroups of
/// `⊕_{i>0} Z(p^i)^{(α_{i-1})}` with infinitely many `α` nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolicPP {
    Zero,
    /// `A[p^d]`; `Torsion(0)` is `Zero`.
    Torsion(u32),
    /// `p^e A`; `Divisible(0)` is `A`.
    Divisible(u32),
}

impl SymbolicPP {
    /// Position in the chain `0 < A[p] < A[p^2] < ... < p^2 A < pA < A`, as a
    /// pair `(part, key)` ordered lexicographically.
    fn rank(self) -> (u8, i64) {
        match self {
            SymbolicPP::Zero | SymbolicPP::Torsion(0) => (0, 0),
            SymbolicPP::Torsion(d) => (0, d as i64),
            SymbolicPP::Divisible(e) => (1, -(e as i64)),
        }
    }
}

/// Comparison up to commensurability (`Less` means strictly dominated).
pub fn homocyclic_compare(x: SymbolicPP, y: SymbolicPP) -> Ordering {
    x.rank().cmp(&y.rank())
}
