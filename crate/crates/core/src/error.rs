use thiserror::Error;

/// Errors raised by the vcdlab library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order relation: {0}")]
    InvalidOrder(String),

    #[error("not a lattice: {0}")]
    NotALattice(String),

    #[error("{what} exceeds cap: needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("invalid group description: {0}")]
    InvalidGroup(String),

    #[error("({i}, {j}) is not a point of P(lambda)")]
    OutOfP { i: usize, j: usize },

    #[error("invalid lambda: {0}")]
    InvalidLambda(String),

    #[error("empty input")]
    EmptyInput,

    #[error("group does not have finite exponent: {0}")]
    NotFiniteExponent(String),

    #[error("insufficient index: {0}")]
    InsufficientIndex(String),

    #[error("set too small: need at least {need} elements, got {got}")]
    TooSmall { need: usize, got: usize },

    #[error("not a subset: {0}")]
    NotSubset(String),

    #[error("arithmetic overflow while {0}")]
    Overflow(String),

    #[error("isomorphism check failed: {0}")]
    IsoFailure(String),

    #[error("direct summands must have coprime exponents")]
    NotCoprime,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn cap_check(what: &'static str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::CapExceeded { what, needed, cap })
    } else {
        Ok(())
    }
}
