use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::poset::Poset;
use super::width::width;
use crate::error::{cap_check, Result};

/// Default ceiling on critical pairs for [`order_dimension`].
pub const DEFAULT_CRITICAL_PAIR_CAP: usize = 256;
/// Default ceiling on search nodes before giving up with `Unknown`.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Dimension {
    /// The dimension with a realizer (each entry a linear extension, bottom first).
    Exact {
        dim: usize,
        realizer: Vec<Vec<usize>>,
    },
    /// The search budget ran out; the true value lies in `lower..=upper`.
    Unknown { lower: usize, upper: usize },
}

impl Dimension {
    pub fn value(&self) -> Option<usize> {
        match self {
            Dimension::Exact { dim, .. } => Some(*dim),
            Dimension::Unknown { .. } => None,
        }
    }
}

/// Pairs `(a, b)` of incomparable elements with every strict lower bound of
/// `a` below `b` and every strict upper bound of `b` above `a`.
pub fn critical_pairs(p: &Poset) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut out = Vec::new();
    for a in 0..n {
        let mut below_a = p.down_set(a).clone();
        below_a.set(a, false);
        for b in 0..n {
            if p.comparable(a, b) {
                continue;
            }
            let mut above_b = p.up_set(b).clone();
            above_b.set(b, false);
            if below_a.is_subset(p.down_set(b)) && above_b.is_subset(p.up_set(a)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Order dimension by colouring critical pairs into reversible classes.
///
/// A class is reversible when adding `b < a` for each of its pairs keeps the
/// order acyclic; each class then extends to one linear extension and the
/// extensions realize `p`. Classes are tried from a clique lower bound up to
/// the width. Fails when there are more than `pair_cap` critical pairs.
pub fn order_dimension(p: &Poset, pair_cap: usize, node_budget: u64) -> Result<Dimension> {
    let n = p.len();
    if n == 0 {
        return Ok(Dimension::Exact {
            dim: 0,
            realizer: vec![],
        });
    }
    let pairs = critical_pairs(p);
    if pairs.is_empty() {
        return Ok(Dimension::Exact {
            dim: 1,
            realizer: vec![p.linear_extension()],
        });
    }
    cap_check("critical pairs", pairs.len() as u128, pair_cap as u128)?;
    let conflict = conflict_graph(p, &pairs);
    let lower = clique_lower_bound(&conflict, node_budget).max(2);
    let upper = width(p).0;
    let mut budget = node_budget;
    for k in lower..=upper {
        let mut search = Search {
            p,
            pairs: &pairs,
            conflict: &conflict,
            classes: Vec::new(),
            colour: vec![usize::MAX; pairs.len()],
            budget: &mut budget,
        };
        match search.run(k) {
            Some(classes) => {
                let realizer = classes.iter().map(extension_of).collect();
                return Ok(Dimension::Exact { dim: k, realizer });
            }
            None if budget == 0 => return Ok(Dimension::Unknown { lower: k, upper }),
            None => {}
        }
    }
    // Unreachable for valid orders: `width` chains always give a realizer.
    Ok(Dimension::Unknown {
        lower: upper,
        upper,
    })
}

/// `(a, b)` and `(c, d)` cannot be reversed together when `a <= d` and `c <= b`.
fn conflict_graph(p: &Poset, pairs: &[(usize, usize)]) -> Vec<FixedBitSet> {
    let m = pairs.len();
    let mut g = vec![FixedBitSet::with_capacity(m); m];
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if p.leq(a, d) && p.leq(c, b) {
                g[i].insert(j);
                g[j].insert(i);
            }
        }
    }
    g
}

fn clique_lower_bound(g: &[FixedBitSet], budget: u64) -> usize {
    let m = g.len();
    let mut best = 0;
    let mut nodes = budget.min(200_000);
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    fn expand(
        g: &[FixedBitSet],
        size: usize,
        cand: FixedBitSet,
        best: &mut usize,
        nodes: &mut u64,
    ) {
        if size > *best {
            *best = size;
        }
        if *nodes == 0 {
            return;
        }
        *nodes -= 1;
        if size + cand.count_ones(..) <= *best {
            return;
        }
        let mut cand = cand;
        while let Some(v) = cand.ones().next() {
            if size + cand.count_ones(..) <= *best {
                return;
            }
            let mut next = cand.clone();
            next.intersect_with(&g[v]);
            expand(g, size + 1, next, best, nodes);
            cand.set(v, false);
        }
    }
    expand(g, 0, all, &mut best, &mut nodes);
    best
}

/// Transitive closure of the order extended by the reversed pairs in a class.
#[derive(Clone)]
struct Class {
    up: Vec<FixedBitSet>,
}

impl Class {
    fn new(p: &Poset) -> Self {
        Self {
            up: (0..p.len()).map(|i| p.up_set(i).clone()).collect(),
        }
    }

    /// Adds `b <= a`; returns false if that would close a cycle.
    fn try_reverse(&mut self, a: usize, b: usize) -> bool {
        if self.up[a].contains(b) {
            return false;
        }
        let above_a = self.up[a].clone();
        for row in self.up.iter_mut() {
            if row.contains(b) {
                row.union_with(&above_a);
            }
        }
        true
    }

    fn admits(&self, a: usize, b: usize) -> bool {
        !self.up[a].contains(b)
    }
}

fn extension_of(c: &Class) -> Vec<usize> {
    let n = c.up.len();
    // elements with more successors come first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(c.up[i].count_ones(..)), i));
    order
}

struct Search<'a> {
    p: &'a Poset,
    pairs: &'a [(usize, usize)],
    conflict: &'a [FixedBitSet],
    classes: Vec<Class>,
    colour: Vec<usize>,
    budget: &'a mut u64,
}

impl Search<'_> {
    fn run(&mut self, k: usize) -> Option<Vec<Class>> {
        self.classes = vec![Class::new(self.p); k];
        if self.assign(k, 0) {
            Some(std::mem::take(&mut self.classes))
        } else {
            None
        }
    }

    /// DSATUR-style: pick the uncoloured pair with fewest admissible classes.
    fn pick(&self, k: usize) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (i, &(a, b)) in self.pairs.iter().enumerate() {
            if self.colour[i] != usize::MAX {
                continue;
            }
            let options: Vec<usize> = (0..k).filter(|&c| self.classes[c].admits(a, b)).collect();
            let better = match &best {
                None => true,
                Some((_, o)) => options.len() < o.len(),
            };
            if better {
                let done = options.len() <= 1;
                best = Some((i, options));
                if done {
                    break;
                }
            }
        }
        best
    }

    fn assign(&mut self, k: usize, used: usize) -> bool {
        let Some((i, options)) = self.pick(k) else {
            return true;
        };
        if *self.budget == 0 {
            return false;
        }
        *self.budget -= 1;
        let (a, b) = self.pairs[i];
        let mut tried_fresh = false;
        for c in options {
            // empty classes are interchangeable
            if c >= used {
                if tried_fresh {
                    continue;
                }
                tried_fresh = true;
            }
            if self.conflict[i].ones().any(|j| self.colour[j] == c) {
                continue;
            }
            let saved = self.classes[c].clone();
            if !self.classes[c].try_reverse(a, b) {
                continue;
            }
            self.colour[i] = c;
            if self.assign(k, used.max(c + 1)) {
                return true;
            }
            self.colour[i] = usize::MAX;
            self.classes[c] = saved;
            if *self.budget == 0 {
                return false;
            }
        }
        false
    }
}

/// True when the extensions are linear extensions of `p` whose intersection is `p`.
pub fn is_realizer(p: &Poset, realizer: &[Vec<usize>]) -> bool {
    let n = p.len();
    let mut positions = Vec::new();
    for ext in realizer {
        if ext.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (k, &x) in ext.iter().enumerate() {
            if x >= n || pos[x] != usize::MAX {
                return false;
            }
            pos[x] = k;
        }
        positions.push(pos);
    }
    for a in 0..n {
        for b in 0..n {
            let all_below = positions.iter().all(|pos| pos[a] <= pos[b]);
            if all_below != p.leq(a, b) {
                return false;
            }
        }
    }
    true
}

/// Dimension by trying every tuple of linear extensions; test oracle for tiny posets.
pub fn order_dimension_brute(p: &Poset) -> usize {
    let n = p.len();
    if n == 0 {
        return 0;
    }
    let mut exts = Vec::new();
    let mut cur = Vec::new();
    let mut placed = vec![false; n];
    all_extensions(p, &mut cur, &mut placed, &mut exts);
    (1..=n)
        .find(|&d| some_realizer(p, &exts, d, 0, &mut Vec::new()))
        .unwrap_or(n)
}

fn some_realizer(
    p: &Poset,
    exts: &[Vec<usize>],
    d: usize,
    from: usize,
    chosen: &mut Vec<Vec<usize>>,
) -> bool {
    if chosen.len() == d {
        return is_realizer(p, chosen);
    }
    for i in from..exts.len() {
        chosen.push(exts[i].clone());
        if some_realizer(p, exts, d, i, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn all_extensions(p: &Poset, cur: &mut Vec<usize>, placed: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let n = p.len();
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for x in 0..n {
        if placed[x] || p.down_set(x).ones().any(|y| y != x && !placed[y]) {
            continue;
        }
        placed[x] = true;
        cur.push(x);
        all_extensions(p, cur, placed, out);
        cur.pop();
        placed[x] = false;
    }
}
