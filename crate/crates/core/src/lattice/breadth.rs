use fixedbitset::FixedBitSet;

use super::lattice::Lattice;
use crate::error::{cap_check, Result};

/// Breadth via meet-embeddings of Boolean cubes.
///
/// A family is irredundant iff its `2^k` sub-meets are pairwise distinct, and
/// such a family may be taken among meet-irreducibles. The search grows a family
/// one meet-irreducible at a time and keeps the set of sub-meets injective.
pub fn breadth(l: &Lattice) -> usize {
    let mi = l.meet_irreducible_elements();
    let mut submeets = FixedBitSet::with_capacity(l.len());
    submeets.insert(l.top());
    let mut list = vec![l.top()];
    let mut best = 0;
    grow_cube(l, &mi, 0, 0, &mut submeets, &mut list, &mut best);
    best
}

fn grow_cube(
    l: &Lattice,
    cand: &[usize],
    from: usize,
    depth: usize,
    submeets: &mut FixedBitSet,
    list: &mut Vec<usize>,
    best: &mut usize,
) {
    *best = (*best).max(depth);
    if depth + (cand.len() - from) <= *best {
        return;
    }
    for k in from..cand.len() {
        if depth + (cand.len() - k) <= *best {
            return;
        }
        let x = cand[k];
        let old = list.len();
        let mut ok = true;
        for idx in 0..old {
            let m = l.meet(list[idx], x);
            if submeets.contains(m) {
                ok = false;
                break;
            }
            submeets.insert(m);
            list.push(m);
        }
        if ok {
            grow_cube(l, cand, k + 1, depth + 1, submeets, list, best);
        }
        for &m in &list[old..] {
            submeets.set(m, false);
        }
        list.truncate(old);
    }
}

/// Breadth by exhaustive search for irredundant families over all non-top
/// elements, checking every leave-one-out meet. Refuses lattices above `cap`.
pub fn breadth_irredundant(l: &Lattice, cap: usize) -> Result<usize> {
    cap_check("breadth oracle elements", l.len() as u128, cap as u128)?;
    let elems: Vec<usize> = (0..l.len()).filter(|&x| x != l.top()).collect();
    let mut best = 0;
    let mut chosen = Vec::new();
    irredundant_dfs(l, &elems, 0, &mut chosen, &mut best);
    Ok(best)
}

fn irredundant_dfs(
    l: &Lattice,
    elems: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    best: &mut usize,
) {
    for k in from..elems.len() {
        chosen.push(elems[k]);
        if is_irredundant(l, chosen) {
            *best = (*best).max(chosen.len());
            irredundant_dfs(l, elems, k + 1, chosen, best);
        }
        chosen.pop();
    }
}

/// Every member is needed: dropping any one strictly raises the meet.
pub fn is_irredundant(l: &Lattice, family: &[usize]) -> bool {
    let all = l.meet_all(family.iter().copied());
    (0..family.len()).all(|i| {
        let rest = l.meet_all(
            family
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &x)| x),
        );
        rest != all
    })
}
