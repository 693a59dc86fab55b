use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `r` accepted by [`Bigraph::contains_krr`].
pub const MAX_R: usize = 6;

/// A bipartite graph `(X, Y, Φ)` with `Φ ⊆ X × Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BigraphJson", into = "BigraphJson")]
pub struct Bigraph {
    left: usize,
    right: usize,
    /// `adj[x]` is the neighbourhood of the left vertex `x`.
    adj: Vec<FixedBitSet>,
}

#[derive(Serialize, Deserialize)]
struct BigraphJson {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<BigraphJson> for Bigraph {
    type Error = Error;

    fn try_from(j: BigraphJson) -> Result<Self> {
        Bigraph::new(j.left, j.right, &j.edges)
    }
}

impl From<Bigraph> for BigraphJson {
    fn from(b: Bigraph) -> Self {
        BigraphJson {
            left: b.left,
            right: b.right,
            edges: b.edges(),
        }
    }
}

/// Vertex sets spanning a complete sub-bigraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrrWitness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bigraph {
    pub fn new(left: usize, right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![FixedBitSet::with_capacity(right); left];
        for &(x, y) in edges {
            if x >= left || y >= right {
                return Err(Error::ShapeMismatch(format!(
                    "edge ({x}, {y}) outside {left} x {right}"
                )));
            }
            adj[x].insert(y);
        }
        Ok(Self { left, right, adj })
    }

    pub fn from_fn(left: usize, right: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let adj = (0..left)
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(right);
                row.extend((0..right).filter(|&y| f(x, y)));
                row
            })
            .collect();
        Self { left, right, adj }
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj[x].contains(y)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones(..)).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.ones().map(move |y| (x, y)))
            .collect()
    }

    pub fn transpose(&self) -> Bigraph {
        Bigraph::from_fn(self.right, self.left, |y, x| self.has_edge(x, y))
    }

    /// Some `K_{r,r}` with `r` vertices on each side, if one exists.
    pub fn contains_krr(&self, r: usize) -> Result<Option<KrrWitness>> {
        if r > MAX_R {
            return Err(Error::CapExceeded {
                what: "r",
                needed: r as u128,
                cap: MAX_R as u128,
            });
        }
        if r == 0 {
            return Ok(Some(KrrWitness {
                left: vec![],
                right: vec![],
            }));
        }
        // branch on the smaller side
        if self.right < self.left {
            return Ok(self.transpose().contains_krr(r)?.map(|w| KrrWitness {
                left: w.right,
                right: w.left,
            }));
        }
        let candidates: Vec<usize> = (0..self.left)
            .filter(|&x| self.adj[x].count_ones(..) >= r)
            .collect();
        let mut all = FixedBitSet::with_capacity(self.right);
        all.insert_range(..);
        let mut chosen = Vec::with_capacity(r);
        Ok(self.search(&candidates, 0, &all, r, &mut chosen))
    }

    fn search(
        &self,
        cands: &[usize],
        start: usize,
        common: &FixedBitSet,
        r: usize,
        chosen: &mut Vec<usize>,
    ) -> Option<KrrWitness> {
        if chosen.len() == r {
            return Some(KrrWitness {
                left: chosen.clone(),
                right: common.ones().take(r).collect(),
            });
        }
        let need = r - chosen.len();
        for k in start..cands.len() {
            if cands.len() - k < need {
                break;
            }
            let x = cands[k];
            let mut next = common.clone();
            next.intersect_with(&self.adj[x]);
            if next.count_ones(..) < r {
                continue;
            }
            chosen.push(x);
            if let Some(w) = self.search(cands, k + 1, &next, r, chosen) {
                return Some(w);
            }
            chosen.pop();
        }
        None
    }
}
