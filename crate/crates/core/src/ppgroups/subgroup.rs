use fixedbitset::FixedBitSet;

use super::abelian::CyclicProduct;
use crate::error::{Error, Result};

/// A subgroup of a cyclic product, stored as a membership set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    space: CyclicProduct,
    members: FixedBitSet,
}

impl Subgroup {
    pub fn trivial(space: &CyclicProduct) -> Self {
        let mut members = FixedBitSet::with_capacity(space.order() as usize);
        members.insert(0);
        Self {
            space: space.clone(),
            members,
        }
    }

    pub fn whole(space: &CyclicProduct) -> Self {
        let mut members = FixedBitSet::with_capacity(space.order() as usize);
        members.insert_range(..);
        Self {
            space: space.clone(),
            members,
        }
    }

    /// Checks closure under subtraction and nonemptiness.
    pub fn from_members(space: &CyclicProduct, members: FixedBitSet) -> Result<Self> {
        if members.len() != space.order() as usize {
            return Err(Error::NotASubgroup(
                "membership set has the wrong length".into(),
            ));
        }
        if !members.contains(0) {
            return Err(Error::NotASubgroup("0 missing".into()));
        }
        let elems: Vec<usize> = members.ones().collect();
        for &x in &elems {
            for &y in &elems {
                if !members.contains(space.sub(x as u64, y as u64) as usize) {
                    return Err(Error::NotASubgroup(format!("{x} - {y} missing")));
                }
            }
        }
        Ok(Self {
            space: space.clone(),
            members,
        })
    }

    /// Trusts the caller; used where closure holds by construction.
    pub(crate) fn from_members_unchecked(space: &CyclicProduct, members: FixedBitSet) -> Self {
        Self {
            space: space.clone(),
            members,
        }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(space: &CyclicProduct, gens: impl IntoIterator<Item = u64>) -> Self {
        let mut h = Self::trivial(space);
        for g in gens {
            if !h.contains(g) {
                h = h.add_cyclic(g);
            }
        }
        h
    }

    /// `H + <g>`.
    fn add_cyclic(&self, g: u64) -> Self {
        let s = &self.space;
        let mut multiples = vec![0u64];
        let mut x = g;
        while x != 0 {
            multiples.push(x);
            x = s.add(x, g);
        }
        let mut members = FixedBitSet::with_capacity(self.members.len());
        for h in self.members.ones() {
            for &c in &multiples {
                members.insert(s.add(h as u64, c) as usize);
            }
        }
        Self {
            space: s.clone(),
            members,
        }
    }

    pub fn space(&self) -> &CyclicProduct {
        &self.space
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn order(&self) -> u64 {
        self.members.count_ones(..) as u64
    }

    pub fn index(&self) -> u64 {
        self.space.order() / self.order()
    }

    #[inline]
    pub fn contains(&self, x: u64) -> bool {
        self.members.contains(x as usize)
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Self {
            space: self.space.clone(),
            members,
        }
    }

    /// `H + K`, enumerated from the smaller side's coset representatives.
    pub fn sum(&self, other: &Self) -> Self {
        if self.is_subgroup_of(other) {
            return other.clone();
        }
        if other.is_subgroup_of(self) {
            return self.clone();
        }
        let (big, small) = if self.order() >= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let s = &self.space;
        let mut members = big.members.clone();
        for k in small.members.ones() {
            if members.contains(k) {
                continue;
            }
            for h in big.members.ones() {
                members.insert(s.add(h as u64, k as u64) as usize);
            }
        }
        Self {
            space: s.clone(),
            members,
        }
    }

    /// Label of the coset of `x`: the smallest element of `x + H`.
    pub fn coset_rep(&self, x: u64) -> u64 {
        let s = &self.space;
        self.members
            .ones()
            .map(|h| s.add(x, h as u64))
            .min()
            .unwrap_or(x)
    }

    /// Coset labels for every element: `labels[x] = labels[y]` iff `x - y ∈ H`.
    pub fn coset_labels(&self) -> Vec<u32> {
        let n = self.space.order() as usize;
        let mut labels = vec![u32::MAX; n];
        let mut next = 0u32;
        let s = &self.space;
        for x in 0..n {
            if labels[x] != u32::MAX {
                continue;
            }
            for h in self.members.ones() {
                labels[s.add(x as u64, h as u64) as usize] = next;
            }
            next += 1;
        }
        labels
    }

    /// The elements of each coset, in order of their smallest element.
    pub fn cosets(&self) -> Vec<FixedBitSet> {
        let labels = self.coset_labels();
        let count = labels.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut out = vec![FixedBitSet::with_capacity(labels.len()); count];
        for (x, &l) in labels.iter().enumerate() {
            out[l as usize].insert(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ppgroups::FiniteAbelianGroup;

    #[test]
    fn generation_and_lattice_ops() {
        let g = FiniteAbelianGroup::parse("2^1,2^3").unwrap();
        let s = g.space();
        let h = Subgroup::generated(s, [s.encode(&[0, 2])]);
        assert_eq!(h.order(), 4);
        let k = Subgroup::generated(s, [s.encode(&[1, 0])]);
        let hk = h.sum(&k);
        assert_eq!(hk.order(), 8);
        assert_eq!(h.intersection(&k).order(), 1);
        assert_eq!(hk.index(), 2);
        assert!(Subgroup::from_members(s, hk.members().clone()).is_ok());
    }

    #[test]
    fn rejects_non_subgroups() {
        let g = FiniteAbelianGroup::parse("2^2").unwrap();
        let mut m = FixedBitSet::with_capacity(4);
        m.insert(0);
        m.insert(1);
        assert!(Subgroup::from_members(g.space(), m).is_err());
    }

    #[test]
    fn cosets_partition() {
        let g = FiniteAbelianGroup::parse("3^2").unwrap();
        let h = Subgroup::generated(g.space(), [3]);
        let cs = h.cosets();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.count_ones(..) == 3));
    }
}
