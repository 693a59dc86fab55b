use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::abelian::FiniteAbelianGroup;
use super::pplattice::pp_lattice;
use super::subgroup::Subgroup;
use crate::error::{cap_check, Error, Result};
use crate::lattice::{Lattice, Poset};
use crate::szmielew::d_of;

/// Default cap on `|Λ|`.
pub const DEFAULT_LAMBDA_CAP: usize = 1 << 16;

pub fn validate_lambda(lambda: &[u32]) -> Result<()> {
    if lambda.is_empty() {
        return Err(Error::InvalidLambda("empty".into()));
    }
    if lambda[0] == 0 {
        return Err(Error::InvalidLambda("entries must be positive".into()));
    }
    if lambda.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidLambda(format!(
            "{lambda:?} is not strictly increasing"
        )));
    }
    Ok(())
}

/// The lattice of tuples `μ` with `0 <= μ_i - μ_{i-1} <= λ_i - λ_{i-1}`.
#[derive(Clone, Debug)]
pub struct SlowTupleLattice {
    pub lambda: Vec<u32>,
    pub elements: Vec<Vec<u32>>,
    pub lattice: Lattice,
    index: HashMap<Vec<u32>, usize>,
}

impl SlowTupleLattice {
    pub fn new(lambda: &[u32], cap: usize) -> Result<Self> {
        validate_lambda(lambda)?;
        let mut elements = Vec::new();
        let mut cur = Vec::with_capacity(lambda.len());
        enumerate(lambda, &mut cur, &mut elements, cap)?;
        // sorted by coordinate sum, so index 0 is the bottom
        elements.sort_by_key(|mu| (mu.iter().sum::<u32>(), mu.clone()));
        let index: HashMap<Vec<u32>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let n = elements.len();
        let poset = Poset::from_fn(n, |a, b| {
            elements[a].iter().zip(&elements[b]).all(|(x, y)| x <= y)
        })?;
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let lo: Vec<u32> = elements[a]
                    .iter()
                    .zip(&elements[b])
                    .map(|(x, y)| *x.min(y))
                    .collect();
                let hi: Vec<u32> = elements[a]
                    .iter()
                    .zip(&elements[b])
                    .map(|(x, y)| *x.max(y))
                    .collect();
                meet[a * n + b] = *index
                    .get(&lo)
                    .ok_or_else(|| Error::NotALattice("min leaves Λ".into()))?
                    as u32;
                join[a * n + b] = *index
                    .get(&hi)
                    .ok_or_else(|| Error::NotALattice("max leaves Λ".into()))?
                    as u32;
            }
        }
        let lattice = Lattice::from_tables(poset, meet, join)?;
        Ok(Self {
            lambda: lambda.to_vec(),
            elements,
            lattice,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, mu: &[u32]) -> Option<usize> {
        self.index.get(mu).copied()
    }

    /// `μ* = λ - μ`.
    pub fn star(&self, mu: &[u32]) -> Vec<u32> {
        self.lambda.iter().zip(mu).map(|(l, m)| l - m).collect()
    }

    /// `<k>_i = min(λ_i, k)`.
    pub fn angle(&self, k: u32) -> Vec<u32> {
        self.lambda.iter().map(|&l| l.min(k)).collect()
    }
}

fn enumerate(
    lambda: &[u32],
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
    cap: usize,
) -> Result<()> {
    let i = cur.len();
    if i == lambda.len() {
        cap_check("slowly growing tuples", out.len() as u128 + 1, cap as u128)?;
        out.push(cur.clone());
        return Ok(());
    }
    let (prev_mu, prev_l) = if i == 0 {
        (0, 0)
    } else {
        (cur[i - 1], lambda[i - 1])
    };
    for step in 0..=(lambda[i] - prev_l) {
        cur.push(prev_mu + step);
        enumerate(lambda, cur, out, cap)?;
        cur.pop();
    }
    Ok(())
}

pub fn slow_tuple_lattice(lambda: &[u32]) -> Result<SlowTupleLattice> {
    SlowTupleLattice::new(lambda, DEFAULT_LAMBDA_CAP)
}

/// `μ(i, j)` for `(i, j) ∈ P(λ)`, 1-based: `λ_k ∸ (λ_j - i)` below `j`, `i` from `j` on.
pub fn mu_of(i: u32, j: usize, lambda: &[u32]) -> Result<Vec<u32>> {
    validate_lambda(lambda)?;
    if j == 0 || j > lambda.len() || i == 0 || i > lambda[j - 1] {
        return Err(Error::OutOfP { i: i as usize, j });
    }
    let shift = lambda[j - 1] - i;
    Ok((1..=lambda.len())
        .map(|k| {
            if k < j {
                lambda[k - 1].saturating_sub(shift)
            } else {
                i
            }
        })
        .collect())
}

/// The points of `P(λ)`, `(i, j)` with `j ∈ [n]`, `i ∈ [λ_j]`, row by row.
pub fn p_points(lambda: &[u32]) -> Vec<(u32, usize)> {
    lambda
        .iter()
        .enumerate()
        .flat_map(|(k, &l)| (1..=l).map(move |i| (i, k + 1)))
        .collect()
}

/// `P(λ)` ordered by `(i,j) <= (i',j')` iff `i <= i'` and `λ_j - i >= λ_j' - i'`.
/// Labels are `"(i,j)"`; the element order is that of [`p_points`].
pub fn p_poset(lambda: &[u32]) -> Result<Poset> {
    validate_lambda(lambda)?;
    let pts = p_points(lambda);
    let lam = |j: usize| lambda[j - 1] as i64;
    let poset = Poset::from_fn(pts.len(), |a, b| {
        let ((i, j), (i2, j2)) = (pts[a], pts[b]);
        i <= i2 && lam(j) - i as i64 >= lam(j2) - i2 as i64
    })?;
    poset.with_labels(pts.iter().map(|(i, j)| format!("({i},{j})")).collect())
}

/// The chains `C_1..C_d` and the antichain `{(k, j(k))}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPartition {
    pub chains: Vec<Vec<(u32, usize)>>,
    pub antichain: Vec<(u32, usize)>,
}

/// Builds each `C_k` from its down, sideways and up-right pieces, with
/// `j(d+1) = n + 1`, and verifies the result against `P(λ)`.
pub fn chain_partition(lambda: &[u32]) -> Result<ChainPartition> {
    validate_lambda(lambda)?;
    let n = lambda.len();
    let set: Vec<u64> = lambda.iter().map(|&x| x as u64).collect();
    let report = d_of(&set);
    let d = report.d;
    let mut js = report.j_sequence.clone();
    js.push(n + 1);
    let lam = |j: usize| lambda[j - 1];
    let mut chains = Vec::with_capacity(d);
    for k in 1..=d {
        let kk = k as u32;
        let (jk, jnext) = (js[k - 1], js[k]);
        let mut c: Vec<(u32, usize)> = Vec::new();
        for j in jk..=n {
            c.push((kk, j));
        }
        if lam(jk) + 1 >= kk {
            for i in kk..=(lam(jk) + 1 - kk) {
                for j in jk..jnext {
                    c.push((i, j));
                }
            }
        }
        for j in jk..=n {
            c.push((lam(j) + 1 - kk, j));
        }
        c.sort_unstable();
        c.dedup();
        chains.push(c);
    }
    let antichain = (1..=d).map(|k| (k as u32, js[k - 1])).collect();
    let part = ChainPartition { chains, antichain };
    verify_chain_partition(lambda, &part)?;
    Ok(part)
}

/// Disjoint chains covering `P(λ)` and an antichain with one point per chain.
pub fn verify_chain_partition(lambda: &[u32], part: &ChainPartition) -> Result<()> {
    let pts = p_points(lambda);
    let pos: HashMap<(u32, usize), usize> = pts.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let poset = p_poset(lambda)?;
    let mut seen = vec![false; pts.len()];
    let lookup = |x: &(u32, usize)| {
        pos.get(x).copied().ok_or(Error::OutOfP {
            i: x.0 as usize,
            j: x.1,
        })
    };
    for c in &part.chains {
        let idx: Vec<usize> = c.iter().map(lookup).collect::<Result<_>>()?;
        if !poset.is_chain(&idx) {
            return Err(Error::InvalidOrder(format!("{c:?} is not a chain")));
        }
        for k in idx {
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidOrder(format!(
                    "{:?} lies in two chains",
                    pts[k]
                )));
            }
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidOrder(format!("{:?} is not covered", pts[k])));
    }
    let anti: Vec<usize> = part.antichain.iter().map(lookup).collect::<Result<_>>()?;
    if !poset.is_antichain(&anti) || anti.len() != part.chains.len() {
        return Err(Error::InvalidOrder("antichain certificate fails".into()));
    }
    Ok(())
}

/// `A_μ = { a : p^{μ_i} a_i = 0 }` in `⊕ Z(p^{λ_i})`.
pub fn a_mu(g: &FiniteAbelianGroup, p: u64, mu: &[u32]) -> Subgroup {
    let s = g.space();
    let mut members = fixedbitset::FixedBitSet::with_capacity(s.order() as usize);
    for x in 0..s.order() {
        let r = s.decode(x);
        let killed = r
            .iter()
            .zip(mu)
            .zip(s.moduli())
            .all(|((&a, &m), &q)| (a as u128 * (p as u128).pow(m)).is_multiple_of(q as u128));
        if killed {
            members.insert(x as usize);
        }
    }
    Subgroup::from_members_unchecked(s, members)
}

/// Checks that `μ ↦ A_μ` is a bijection `Λ → PP(A)` preserving meets and joins,
/// for `A = ⊕ Z(p^{λ_k})`.
pub fn lambda_iso(p: u64, lambda: &[u32]) -> Result<usize> {
    let g = FiniteAbelianGroup::from_exponents(p, lambda)?;
    let slow = slow_tuple_lattice(lambda)?;
    let (pp, subs) = pp_lattice(&g, super::abelian::DEFAULT_ELEMENT_CAP)?;
    if pp.len() != slow.len() {
        return Err(Error::IsoFailure(format!(
            "|Λ| = {} but |PP(A)| = {}",
            slow.len(),
            pp.len()
        )));
    }
    let index: HashMap<&fixedbitset::FixedBitSet, usize> = subs
        .iter()
        .enumerate()
        .map(|(k, h)| (h.members(), k))
        .collect();
    let mut map = Vec::with_capacity(slow.len());
    for mu in &slow.elements {
        let h = a_mu(&g, p, mu);
        let k = *index
            .get(h.members())
            .ok_or_else(|| Error::IsoFailure(format!("A_{mu:?} is not p.p.-definable")))?;
        map.push(k);
    }
    let mut hit = vec![false; pp.len()];
    for &k in &map {
        if std::mem::replace(&mut hit[k], true) {
            return Err(Error::IsoFailure(
                "two tuples give the same subgroup".into(),
            ));
        }
    }
    let l = &slow.lattice;
    for a in 0..l.len() {
        for b in 0..l.len() {
            if map[l.meet(a, b)] != pp.meet(map[a], map[b])
                || map[l.join(a, b)] != pp.join(map[a], map[b])
            {
                return Err(Error::IsoFailure(format!(
                    "{:?}, {:?}",
                    slow.elements[a], slow.elements[b]
                )));
            }
        }
    }
    Ok(slow.len())
}
