use fixedbitset::FixedBitSet;
use itertools::Itertools;

use super::system::{binomial, SetSystem};
use crate::error::{cap_check, Error, Result};

/// `classes` disjoint blocks of `2n` points; every `n`-subset of every block is a set.
pub fn gen_n_sets(n: usize, classes: usize, cap: u128) -> Result<SetSystem> {
    if n == 0 || classes == 0 {
        return Err(Error::TooSmall {
            need: 1,
            got: n.min(classes),
        });
    }
    let block = 2 * n;
    cap_check(
        "n-sets",
        binomial(block, n).saturating_mul(classes as u128),
        cap,
    )?;
    let base = block * classes;
    let mut sets = Vec::new();
    let mut tags = Vec::new();
    for c in 0..classes {
        for x in (0..block).combinations(n) {
            let mut s = FixedBitSet::with_capacity(base);
            s.extend(x.iter().map(|&i| c * block + i));
            tags.push(format!("class {c}: {x:?}"));
            sets.push(s);
        }
    }
    SetSystem::from_bitsets(base, sets)?.with_tags(tags)
}
