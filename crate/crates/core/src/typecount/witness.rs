use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::formulas::{Atom, FormulaSet, TypeCounter};
use super::pistar::greedy_params;
use crate::error::{cap_check, Error, Result};
use crate::ppgroups::{pp_subgroup, CyclicProduct, FiniteAbelianGroup, Subgroup};
use crate::setsystem::{binomial, breadth_of_system, Bigraph, CappedCount};

/// Parameters `b_{ij}` and realizers `a_j = Σ_i b_{i j(i)}` for the formulas
/// `φ_i(x; y) := x - y ∈ H_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LowerBoundWitness {
    pub d: usize,
    pub t: usize,
    /// `params[i * t + j] = b_{ij}`.
    pub params: Vec<u64>,
    /// One realizer per `j ∈ [t]^d`, in lexicographic order.
    pub realizers: Vec<u64>,
    /// `[H_{≠i} : H]` for each `i`, where `H = ∩ H_i`.
    pub indices: Vec<u64>,
    /// How the infinite-index hypothesis was read at finite scale.
    pub scale_note: String,
}

fn intersect_all(space: &CyclicProduct, hs: &[&Subgroup]) -> Subgroup {
    hs.iter()
        .fold(Subgroup::whole(space), |acc, h| acc.intersection(h))
}

/// Builds the witness; needs `[H_{≠i} : H] >= t` for every `i`.
pub fn lower_bound_witness(
    g: &FiniteAbelianGroup,
    hs: &[Subgroup],
    t: usize,
) -> Result<LowerBoundWitness> {
    let space = g.space();
    if hs.iter().any(|h| h.space() != space) {
        return Err(Error::NotASubgroup(
            "witness subgroups must live in the group".into(),
        ));
    }
    let d = hs.len();
    let all: Vec<&Subgroup> = hs.iter().collect();
    let h = intersect_all(space, &all);
    let labels = h.coset_labels();
    let mut params = Vec::with_capacity(d * t);
    let mut indices = Vec::with_capacity(d);
    for i in 0..d {
        let others: Vec<&Subgroup> = hs
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, x)| x)
            .collect();
        let hi = intersect_all(space, &others);
        indices.push(hi.order() / h.order());
        // first element of each H-coset inside H_{≠i}
        let reps: Vec<u64> = hi
            .members()
            .ones()
            .unique_by(|&x| labels[x])
            .take(t)
            .map(|x| x as u64)
            .collect();
        if reps.len() < t {
            return Err(Error::InsufficientIndex(format!(
                "[H_(!={i}) : H] = {} is smaller than t = {t}",
                indices[i]
            )));
        }
        params.extend(reps);
    }
    cap_check("realizers", (t as u128).saturating_pow(d as u32), 1 << 24)?;
    let realizers = (0..d)
        .map(|_| 0..t)
        .multi_cartesian_product()
        .map(|js| {
            js.iter()
                .enumerate()
                .fold(0, |acc, (i, &j)| space.add(acc, params[i * t + j]))
        })
        .collect::<Vec<u64>>();
    // d = 0 gives the single empty tuple
    let realizers = if d == 0 { vec![0] } else { realizers };
    Ok(LowerBoundWitness {
        d,
        t,
        params,
        realizers,
        indices,
        scale_note: format!("infinite index read as index >= t = {t}"),
    })
}

impl LowerBoundWitness {
    pub fn formulas(&self, hs: &[Subgroup]) -> FormulaSet {
        FormulaSet::cosets_of(hs.to_vec())
    }

    /// `(types over the whole group, types among the realizers)`.
    pub fn verify(&self, g: &FiniteAbelianGroup, hs: &[Subgroup]) -> Result<(usize, usize)> {
        let c = TypeCounter::from_subgroups(g.space(), hs)?;
        Ok((
            c.count(&self.params)?,
            c.count_among(&self.realizers, &self.params)?,
        ))
    }
}

/// Counts on each summand and on the direct sum with the lifted formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProductCheck {
    pub left: usize,
    pub right: usize,
    pub combined: usize,
    pub holds: bool,
}

fn atom_subgroups(g: &FiniteAbelianGroup, fs: &FormulaSet, cap: u64) -> Result<Vec<Subgroup>> {
    if fs.m != 1 || !fs.combos.is_empty() {
        return Err(Error::ShapeMismatch(
            "only one-variable coset atoms lift to direct sums".into(),
        ));
    }
    fs.atoms
        .iter()
        .map(|a| match a {
            Atom::Coset(f) => pp_subgroup(g, 1, f, cap),
            Atom::Subgroup(h) => Ok(h.clone()),
            Atom::Pp(_) => Err(Error::ShapeMismatch(
                "only coset atoms lift to direct sums".into(),
            )),
        })
        .collect()
}

/// Checks `|S^{Δ∪Δ'}(B ∪ B')| >= |S^Δ(B)| |S^{Δ'}(B')|` in `g ⊕ g'` for greedily
/// chosen `B`, `B'` of size `t`.
pub fn direct_sum_product_check(
    g: &FiniteAbelianGroup,
    g2: &FiniteAbelianGroup,
    fs: &FormulaSet,
    fs2: &FormulaSet,
    t: usize,
    cap: u64,
) -> Result<ProductCheck> {
    let (hs, hs2) = (atom_subgroups(g, fs, cap)?, atom_subgroups(g2, fs2, cap)?);
    let c1 = TypeCounter::from_subgroups(g.space(), &hs)?;
    let c2 = TypeCounter::from_subgroups(g2.space(), &hs2)?;
    let b1 = greedy_params(&c1, t, 256, 0)?;
    let b2 = greedy_params(&c2, t, 256, 0)?;
    let (left, right) = (c1.count(&b1)?, c2.count(&b2)?);

    let (n1, n2) = (g.order(), g2.order());
    let moduli: Vec<u64> = g
        .space()
        .moduli()
        .iter()
        .chain(g2.space().moduli())
        .copied()
        .collect();
    let sum = CyclicProduct::new(moduli, cap)?;
    let lift = |members: &mut FixedBitSet, x: u64, y: u64| members.insert((x + n1 * y) as usize);
    let mut lifted = Vec::with_capacity(hs.len() + hs2.len());
    for h in &hs {
        let mut m = FixedBitSet::with_capacity(sum.order() as usize);
        for x in h.members().ones() {
            (0..n2).for_each(|y| lift(&mut m, x as u64, y));
        }
        lifted.push(Subgroup::from_members(&sum, m)?);
    }
    for h in &hs2 {
        let mut m = FixedBitSet::with_capacity(sum.order() as usize);
        for y in h.members().ones() {
            (0..n1).for_each(|x| lift(&mut m, x, y as u64));
        }
        lifted.push(Subgroup::from_members(&sum, m)?);
    }
    let c = TypeCounter::from_subgroups(&sum, &lifted)?;
    let params: Vec<u64> = b1
        .iter()
        .copied()
        .chain(b2.iter().map(|&y| n1 * y))
        .collect();
    let combined = c.count(&params)?;
    Ok(ProductCheck {
        left,
        right,
        combined,
        holds: combined >= left * right,
    })
}

/// `G_{A,A',φ}`: `(a, a')` is an edge iff some parameter cuts exactly
/// `{a, a'}` out of `A ∪ A'`. Scans the whole parameter space.
pub fn bigraph_of_formula(
    c: &TypeCounter,
    formula: usize,
    left: &[u64],
    right: &[u64],
    cap: u64,
) -> Result<Bigraph> {
    cap_check("parameters", c.param_size() as u128, cap as u128)?;
    if formula >= c.formula_count() {
        return Err(Error::ShapeMismatch(format!(
            "formula {formula} of {}",
            c.formula_count()
        )));
    }
    let mut points: Vec<u64> = left.iter().chain(right).copied().collect();
    points.sort_unstable();
    points.dedup();
    let mut edges = Vec::new();
    for b in 0..c.param_size() {
        let mut hit = points.iter().filter(|&&a| c.truth(formula, a, b));
        let (Some(&x), y, None) = (hit.next(), hit.next().copied(), hit.next()) else {
            continue;
        };
        let cut = [Some(x), y];
        for (i, &a) in left.iter().enumerate() {
            for (j, &a2) in right.iter().enumerate() {
                let pair = if a == a2 {
                    [Some(a), None]
                } else {
                    [Some(a.min(a2)), Some(a.max(a2))]
                };
                if pair == cut {
                    edges.push((i, j));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Bigraph::new(left.len(), right.len(), &edges)
}

/// Breadth `d` of the instance system of `B` and the resulting bound
/// `Σ_{i<=d} C(N, i)` on `|S^Δ(B)|`, `N` the number of distinct instances.
///
/// A type is fixed by the intersection of the instances it satisfies, which
/// is already the intersection of at most `d` of them.
pub fn breadth_type_bound(
    c: &TypeCounter,
    params: &[u64],
    cap: usize,
) -> Result<(CappedCount, Option<u128>)> {
    let sys = c.instance_system(params)?;
    let breadth = breadth_of_system(&sys, cap);
    let n = sys.distinct_sets().len();
    let bound = match breadth {
        CappedCount::Exact(d) => Some((0..=d).map(|i| binomial(n, i)).sum()),
        CappedCount::AtLeast(_) => None,
    };
    Ok((breadth, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ppgroups::{PPFormula, DEFAULT_ELEMENT_CAP};
    use crate::typecount::Combo;

    #[test]
    fn single_subgroup_translates() {
        let g = FiniteAbelianGroup::parse("7^1").unwrap();
        let hs = vec![Subgroup::trivial(g.space())];
        let w = lower_bound_witness(&g, &hs, 5).unwrap();
        let (all, among) = w.verify(&g, &hs).unwrap();
        assert_eq!(among, 5);
        assert_eq!(all, 6);
        assert!(lower_bound_witness(&g, &hs, 8).is_err());
    }

    #[test]
    fn two_primes_give_a_square() {
        // Z(2)^2 + Z(3)^2 with H_1 = A[3], H_2 = A[2]
        let g = FiniteAbelianGroup::parse("2^1x2,3^1x2").unwrap();
        let hs: Vec<Subgroup> = [3u64, 2]
            .iter()
            .map(|&q| pp_subgroup(&g, 1, &PPFormula::tau(q, 1), DEFAULT_ELEMENT_CAP).unwrap())
            .collect();
        let w = lower_bound_witness(&g, &hs, 4).unwrap();
        let (all, among) = w.verify(&g, &hs).unwrap();
        assert_eq!(among, 16);
        assert!(all >= 16);
    }

    #[test]
    fn product_of_torsion_atoms() {
        let g = FiniteAbelianGroup::parse("2^2x3").unwrap();
        let g2 = FiniteAbelianGroup::parse("3^2x3").unwrap();
        let fs = FormulaSet::new(1, 1, vec![Atom::Coset(PPFormula::tau(2, 1))], vec![]).unwrap();
        let fs2 = FormulaSet::new(1, 1, vec![Atom::Coset(PPFormula::tau(3, 1))], vec![]).unwrap();
        let r = direct_sum_product_check(&g, &g2, &fs, &fs2, 3, DEFAULT_ELEMENT_CAP).unwrap();
        assert!(r.holds, "{r:?}");
        let eq = FormulaSet::new(1, 1, vec![Atom::equality(1)], vec![]).unwrap();
        let r = direct_sum_product_check(&g, &g2, &eq, &eq, 3, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!((r.left, r.right), (4, 4));
        assert!(r.combined >= 16);
        let trivial = FormulaSet::new(1, 1, vec![], vec![]).unwrap();
        let r = direct_sum_product_check(&g, &g2, &trivial, &eq, 3, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(r.left, 1);
        assert!(r.holds);
    }

    #[test]
    fn unsatisfiable_formula_has_no_edges() {
        let g = FiniteAbelianGroup::parse("3^1").unwrap();
        // x = y ∧ ¬(x = y)
        let fs = FormulaSet::new(
            1,
            1,
            vec![Atom::equality(1)],
            vec![Combo::And(vec![
                Combo::Atom(0),
                Combo::Not(Box::new(Combo::Atom(0))),
            ])],
        )
        .unwrap();
        let c = TypeCounter::new(&g, &fs, DEFAULT_ELEMENT_CAP).unwrap();
        let b = bigraph_of_formula(&c, 0, &[0, 1], &[2], DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(b.edge_count(), 0);
    }

    #[test]
    fn two_prime_disjunction_contains_k22() {
        // φ(x; y1, y2) := 3(x - y1) = 0 ∨ 2(x - y2) = 0 on Z(2)^2 + Z(3)^2
        let g = FiniteAbelianGroup::parse("2^1x2,3^1x2").unwrap();
        let a0 = Atom::Pp(PPFormula::new(3, vec![vec![3, -3, 0]], vec![]).unwrap());
        let a1 = Atom::Pp(PPFormula::new(3, vec![vec![2, 0, -2]], vec![]).unwrap());
        let fs = FormulaSet::new(
            1,
            2,
            vec![a0, a1],
            vec![Combo::Or(vec![Combo::Atom(0), Combo::Atom(1)])],
        )
        .unwrap();
        let c = TypeCounter::new(&g, &fs, DEFAULT_ELEMENT_CAP).unwrap();
        // u_j in the 2-part, v_k in the 3-part; points u_j + v_k
        let s = g.space();
        let u: Vec<u64> = (0..4).map(|j| s.encode(&[j & 1, j >> 1, 0, 0])).collect();
        let v: Vec<u64> = (0..4).map(|k| s.encode(&[0, 0, k % 3, k / 3])).collect();
        let r = 2;
        let left: Vec<u64> = (0..r).map(|j| s.add(u[j], v[r + j])).collect();
        let right: Vec<u64> = (0..r).map(|k| s.add(u[r + k], v[k])).collect();
        let b = bigraph_of_formula(&c, 0, &left, &right, DEFAULT_ELEMENT_CAP).unwrap();
        assert!(b.contains_krr(2).unwrap().is_some());
        let n = left.len() + right.len();
        assert!(b.edge_count() * 4 <= n * n);
    }

    #[test]
    fn breadth_bound_holds() {
        let g = FiniteAbelianGroup::parse("2^1,2^3").unwrap();
        let fs = FormulaSet::new(
            1,
            1,
            vec![
                Atom::equality(1),
                Atom::Coset(PPFormula::tau(2, 1)),
                Atom::Coset(PPFormula::delta(2, 0, 2)),
            ],
            vec![],
        )
        .unwrap();
        let c = TypeCounter::new(&g, &fs, DEFAULT_ELEMENT_CAP).unwrap();
        let params = [1, 2, 5, 11];
        let (breadth, bound) = breadth_type_bound(&c, &params, 8).unwrap();
        assert!(breadth.is_exact());
        assert!(c.count(&params).unwrap() as u128 <= bound.unwrap());
    }
}
