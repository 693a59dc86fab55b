use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A finite partial order on `0..n`.
///
/// Row `up[i]` holds every `j` with `i <= j`, row `down[i]` every `j` with
/// `j <= i`. Both rows are reflexive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
}

impl Poset {
    /// Builds a poset from a `leq` predicate and checks the order axioms.
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.insert(j);
                }
            }
        }
        Self::from_up_rows(up)
    }

    /// Builds the order generated by `pairs` (each `(i, j)` meaning `i <= j`),
    /// taking the reflexive-transitive closure. Fails on cycles.
    pub fn from_generating_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidOrder(format!(
                    "pair ({i}, {j}) out of range 0..{n}"
                )));
            }
            up[i].insert(j);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Self::from_up_rows(up)
    }

    /// Checks reflexivity, antisymmetry and transitivity of the given rows.
    pub fn from_up_rows(up: Vec<FixedBitSet>) -> Result<Self> {
        let n = up.len();
        for (i, row) in up.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidOrder(format!(
                    "row {i} has width {}",
                    row.len()
                )));
            }
            if !row.contains(i) {
                return Err(Error::InvalidOrder(format!("not reflexive at {i}")));
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(Error::InvalidOrder(format!(
                        "{i} and {j} violate antisymmetry"
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::InvalidOrder(format!(
                        "not transitive through {i} <= {j}"
                    )));
                }
            }
        }
        Ok(Self {
            up,
            down,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} elements",
                labels.len(),
                self.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i <= j).expect("chain is an order")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j).expect("antichain is an order")
    }

    /// Subsets of `[n]` under inclusion; element `s` is the bitmask `s`.
    pub fn boolean(n: usize) -> Self {
        Self::from_fn(1 << n, |a, b| a & !b == 0).expect("inclusion is an order")
    }

    /// The standard example `St_d`: minimal `x_0..x_{d-1}` (indices `0..d`),
    /// maximal `y_0..y_{d-1}` (indices `d..2d`), with `x_i < y_j` iff `i != j`.
    pub fn standard_example(d: usize) -> Self {
        Self::from_fn(2 * d, |a, b| a == b || (a < d && b >= d && a != b - d))
            .expect("standard example is an order")
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.up[i].contains(j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// `{ j : i <= j }`.
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// `{ j : j <= i }`.
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    pub fn dual(&self) -> Self {
        Self {
            up: self.down.clone(),
            down: self.up.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Restriction of the order to `elems`, re-indexed in the given order.
    pub fn induced(&self, elems: &[usize]) -> Self {
        let k = elems.len();
        let mut up = vec![FixedBitSet::with_capacity(k); k];
        for (a, &i) in elems.iter().enumerate() {
            for (b, &j) in elems.iter().enumerate() {
                if self.leq(i, j) {
                    up[a].insert(b);
                }
            }
        }
        let mut p = Self::from_up_rows(up).expect("induced order of an order");
        if let Some(labels) = &self.labels {
            p.labels = Some(elems.iter().map(|&i| labels[i].clone()).collect());
        }
        p
    }

    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        self.up[i]
            .ones()
            .filter(|&j| j != i && self.up[i].intersection_count(&self.down[j]) == 2)
            .collect()
    }

    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        self.down[i]
            .ones()
            .filter(|&j| j != i && self.down[i].intersection_count(&self.up[j]) == 2)
            .collect()
    }

    /// A linear extension: elements sorted by the size of their down-set.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].count_ones(..), i));
        order
    }

    /// All `(i, j)` with `i <= j`, for serialization.
    pub fn leq_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.up[i].ones().map(move |j| (i, j)))
            .collect()
    }

    /// Pairs `(i, j)` with `j` an upper cover of `i`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.upper_covers(i).into_iter().map(move |j| (i, j)))
            .collect()
    }

    /// True when every pair in `elems` is incomparable.
    pub fn is_antichain(&self, elems: &[usize]) -> bool {
        elems
            .iter()
            .enumerate()
            .all(|(a, &i)| elems[a + 1..].iter().all(|&j| !self.comparable(i, j)))
    }

    /// True when every pair in `elems` is comparable.
    pub fn is_chain(&self, elems: &[usize]) -> bool {
        elems
            .iter()
            .enumerate()
            .all(|(a, &i)| elems[a + 1..].iter().all(|&j| self.comparable(i, j)))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.down[i].count_ones(..) == 1)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.up[i].count_ones(..) == 1)
            .collect()
    }
}
