use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::poset::Poset;
use crate::error::{cap_check, Error, Result};

/// A finite lattice with explicit meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

/// Outcome of the exhaustive identity checks in [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum LatticeClass {
    Distributive,
    ModularNotDistributive,
    NonModular,
}

fn extremum(candidates: &FixedBitSet, rows: &[FixedBitSet]) -> Option<usize> {
    // The extremum of `candidates` is the candidate whose row covers all of them.
    let best = candidates
        .ones()
        .max_by_key(|&c| rows[c].intersection_count(candidates))?;
    candidates.is_subset(&rows[best]).then_some(best)
}

impl Lattice {
    /// Computes meets and joins of a finite poset; fails unless every pair
    /// has a greatest lower and a least upper bound.
    pub fn from_poset(poset: Poset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::NotALattice("empty order".into()));
        }
        let downs: Vec<FixedBitSet> = (0..n).map(|i| poset.down_set(i).clone()).collect();
        let ups: Vec<FixedBitSet> = (0..n).map(|i| poset.up_set(i).clone()).collect();
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let mut lower = downs[a].clone();
                lower.intersect_with(&downs[b]);
                // the greatest common lower bound has every lower bound below it
                let m = extremum(&lower, &downs).ok_or_else(|| {
                    Error::NotALattice(format!("{a} and {b} have no greatest lower bound"))
                })?;
                let mut upper = ups[a].clone();
                upper.intersect_with(&ups[b]);
                let j = extremum(&upper, &ups).ok_or_else(|| {
                    Error::NotALattice(format!("{a} and {b} have no least upper bound"))
                })?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
        let bottom = (0..n)
            .find(|&i| poset.up_set(i).count_ones(..) == n)
            .ok_or_else(|| Error::NotALattice("no bottom".into()))?;
        let top = (0..n)
            .find(|&i| poset.down_set(i).count_ones(..) == n)
            .ok_or_else(|| Error::NotALattice("no top".into()))?;
        Ok(Self {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Wraps precomputed tables after checking them against the order:
    /// `down(a ∧ b) = down(a) ∩ down(b)` and `up(a ∨ b) = up(a) ∩ up(b)`.
    pub fn from_tables(poset: Poset, meet: Vec<u32>, join: Vec<u32>) -> Result<Self> {
        let n = poset.len();
        if n == 0 || meet.len() != n * n || join.len() != n * n {
            return Err(Error::NotALattice("table shape".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let m = meet[a * n + b] as usize;
                let j = join[a * n + b] as usize;
                if m >= n || j >= n {
                    return Err(Error::NotALattice("table entry out of range".into()));
                }
                let mut lower = poset.down_set(a).clone();
                lower.intersect_with(poset.down_set(b));
                if &lower != poset.down_set(m) {
                    return Err(Error::NotALattice(format!(
                        "meet({a}, {b}) = {m} is not the glb"
                    )));
                }
                let mut upper = poset.up_set(a).clone();
                upper.intersect_with(poset.up_set(b));
                if &upper != poset.up_set(j) {
                    return Err(Error::NotALattice(format!(
                        "join({a}, {b}) = {j} is not the lub"
                    )));
                }
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x] as usize);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x] as usize);
        Ok(Self {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn chain(n: usize) -> Self {
        Self::from_poset(Poset::chain(n)).expect("chains are lattices")
    }

    /// `2^[n]`: element `s` is the subset with bitmask `s`.
    pub fn boolean(n: usize) -> Self {
        let size = 1usize << n;
        let meet = (0..size * size)
            .map(|k| ((k / size) & (k % size)) as u32)
            .collect();
        let join = (0..size * size)
            .map(|k| ((k / size) | (k % size)) as u32)
            .collect();
        Self::from_tables(Poset::boolean(n), meet, join).expect("boolean lattice")
    }

    /// The diamond: bottom 0, atoms 1..=3, top 4.
    pub fn m3() -> Self {
        let p = Poset::from_generating_pairs(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
            .expect("M3 order");
        Self::from_poset(p).expect("M3 is a lattice")
    }

    /// The pentagon: 0 < 1 < 2 < 4 and 0 < 3 < 4.
    pub fn n5() -> Self {
        let p = Poset::from_generating_pairs(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
            .expect("N5 order");
        Self::from_poset(p).expect("N5 is a lattice")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn dual(&self) -> Self {
        Self {
            poset: self.poset.dual(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Elements with exactly one lower cover (the non-bottom join-irreducibles).
    pub fn join_irreducible_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.poset.lower_covers(i).len() == 1)
            .collect()
    }

    /// Elements with exactly one upper cover.
    pub fn meet_irreducible_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.poset.upper_covers(i).len() == 1)
            .collect()
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.poset.upper_covers(self.bottom)
    }

    pub fn coatoms(&self) -> Vec<usize> {
        self.poset.lower_covers(self.top)
    }
}

/// The join-irreducible elements as an induced subposet, together with the
/// lattice index of each of its points.
pub fn join_irreducibles(l: &Lattice) -> (Poset, Vec<usize>) {
    let elems = l.join_irreducible_elements();
    (l.poset().induced(&elems), elems)
}

/// The lattice of down-sets of `p` under inclusion, with the down-sets
/// themselves (as subsets of `p`) in lattice index order.
pub fn downset_lattice(p: &Poset, cap: usize) -> Result<(Lattice, Vec<FixedBitSet>)> {
    let n = p.len();
    let order = p.linear_extension();
    let mut sets: Vec<FixedBitSet> = Vec::new();
    let mut current = FixedBitSet::with_capacity(n);
    let mut overflow = false;
    enumerate_downsets(p, &order, 0, &mut current, &mut sets, cap, &mut overflow);
    if overflow {
        return Err(Error::CapExceeded {
            what: "down-sets",
            needed: cap as u128 + 1,
            cap: cap as u128,
        });
    }
    sets.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    let index: HashMap<FixedBitSet, u32> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i as u32))
        .collect();
    let m = sets.len();
    let mut up = vec![FixedBitSet::with_capacity(m); m];
    let mut meet = vec![0u32; m * m];
    let mut join = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            if sets[a].is_subset(&sets[b]) {
                up[a].insert(b);
            }
            if b < a {
                continue;
            }
            let mut i = sets[a].clone();
            i.intersect_with(&sets[b]);
            let mut u = sets[a].clone();
            u.union_with(&sets[b]);
            let (mi, ji) = (index[&i], index[&u]);
            meet[a * m + b] = mi;
            meet[b * m + a] = mi;
            join[a * m + b] = ji;
            join[b * m + a] = ji;
        }
    }
    let poset = Poset::from_up_rows(up)?;
    let lattice = Lattice::from_tables(poset, meet, join)?;
    Ok((lattice, sets))
}

fn enumerate_downsets(
    p: &Poset,
    order: &[usize],
    pos: usize,
    current: &mut FixedBitSet,
    out: &mut Vec<FixedBitSet>,
    cap: usize,
    overflow: &mut bool,
) {
    if *overflow {
        return;
    }
    if pos == order.len() {
        if out.len() >= cap {
            *overflow = true;
        } else {
            out.push(current.clone());
        }
        return;
    }
    let x = order[pos];
    enumerate_downsets(p, order, pos + 1, current, out, cap, overflow);
    // x may join only if everything strictly below it is already present
    let mut below = p.down_set(x).clone();
    below.set(x, false);
    if below.is_subset(current) {
        current.insert(x);
        enumerate_downsets(p, order, pos + 1, current, out, cap, overflow);
        current.set(x, false);
    }
}

/// Exhaustive check of the distributive and modular identities over all triples.
pub fn classify(l: &Lattice) -> LatticeClass {
    let n = l.len();
    let mut distributive = true;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let ac = l.meet(a, c);
                let lhs = l.join(ac, l.meet(b, c));
                let rhs = l.meet(l.join(ac, b), c);
                if lhs != rhs {
                    return LatticeClass::NonModular;
                }
                if distributive && l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), l.join(a, c)) {
                    distributive = false;
                }
            }
        }
    }
    if distributive {
        LatticeClass::Distributive
    } else {
        LatticeClass::ModularNotDistributive
    }
}

/// Goldie dimension and dual Goldie dimension.
///
/// Shrinking members of a join-independent set keeps it join-independent, so
/// the search runs over atoms only: a set of atoms is independent iff no atom
/// lies below the join of the others in any subset.
pub fn goldie_dims(l: &Lattice) -> (usize, usize) {
    (goldie_dim(l), goldie_dim(&l.dual()))
}

fn goldie_dim(l: &Lattice) -> usize {
    let atoms = l.atoms();
    let mut best = 0;
    let mut chosen = Vec::new();
    grow_independent(l, &atoms, 0, &mut chosen, &mut best);
    best
}

fn grow_independent(
    l: &Lattice,
    atoms: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    best: &mut usize,
) {
    *best = (*best).max(chosen.len());
    if chosen.len() + (atoms.len() - from) <= *best {
        return;
    }
    for k in from..atoms.len() {
        chosen.push(atoms[k]);
        if is_join_independent(l, chosen) {
            grow_independent(l, atoms, k + 1, chosen, best);
        }
        chosen.pop();
    }
}

/// Literal definition: `(∨ A') ∧ a = 0` for every `A' ⊆ A` and `a ∈ A \ A'`.
pub fn is_join_independent(l: &Lattice, set: &[usize]) -> bool {
    let k = set.len();
    if set.iter().any(|&a| a == l.bottom()) {
        return false;
    }
    for mask in 0u64..(1u64 << k) {
        let joined = l.join_all((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| set[i]));
        for (i, &a) in set.iter().enumerate() {
            if mask >> i & 1 == 0 && l.meet(joined, a) != l.bottom() {
                return false;
            }
        }
    }
    true
}

/// Number of down-sets, refusing to enumerate past `cap`.
pub fn count_downsets(p: &Poset, cap: usize) -> Result<usize> {
    let order = p.linear_extension();
    let mut count = 0usize;
    let mut current = FixedBitSet::with_capacity(p.len());
    fn go(
        p: &Poset,
        order: &[usize],
        pos: usize,
        cur: &mut FixedBitSet,
        count: &mut usize,
        cap: usize,
    ) -> bool {
        if pos == order.len() {
            *count += 1;
            return *count <= cap;
        }
        if !go(p, order, pos + 1, cur, count, cap) {
            return false;
        }
        let x = order[pos];
        let mut below = p.down_set(x).clone();
        below.set(x, false);
        if below.is_subset(cur) {
            cur.insert(x);
            let ok = go(p, order, pos + 1, cur, count, cap);
            cur.set(x, false);
            return ok;
        }
        true
    }
    if !go(p, &order, 0, &mut current, &mut count, cap) {
        cap_check("down-sets", count as u128, cap as u128)?;
    }
    Ok(count)
}
