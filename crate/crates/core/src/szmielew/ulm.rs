use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use crate::ppgroups::FiniteAbelianGroup;

/// `U(p, i; A) = |(p^i A)[p] / (p^{i+1} A)[p]|` by enumeration, for every prime
/// `p` dividing `|A|` and `0 <= i < exponent`. Larger `i` give `1`.
pub fn ulm_invariants(g: &FiniteAbelianGroup) -> BTreeMap<(u64, u32), u64> {
    let space = g.space();
    let order = space.order() as usize;
    let mut out = BTreeMap::new();
    for p in g.primes() {
        let e = g.exponent_at(p);
        // socle sizes |(p^i A)[p]| for i = 0..=e
        let mut socle = Vec::with_capacity(e as usize + 1);
        let mut image = FixedBitSet::with_capacity(order);
        image.insert_range(..);
        for _ in 0..=e {
            let size = image
                .ones()
                .filter(|&x| space.scale(p as i64, x as u64) == 0)
                .count() as u64;
            socle.push(size);
            let mut next = FixedBitSet::with_capacity(order);
            for x in image.ones() {
                next.insert(space.scale(p as i64, x as u64) as usize);
            }
            image = next;
        }
        for i in 0..e {
            out.insert((p, i), socle[i as usize] / socle[i as usize + 1]);
        }
    }
    out
}

/// `p^{α_{p,i}}` with `α_{p,i}` the number of `Z(p^{i+1})` summands.
pub fn ulm_closed_form(g: &FiniteAbelianGroup) -> BTreeMap<(u64, u32), u64> {
    let mut out = BTreeMap::new();
    for p in g.primes() {
        for i in 0..g.exponent_at(p) {
            let mult: u32 = g
                .factors()
                .iter()
                .filter(|f| f.p == p && f.e == i + 1)
                .map(|f| f.mult)
                .sum();
            out.insert((p, i), p.pow(mult));
        }
    }
    out
}
