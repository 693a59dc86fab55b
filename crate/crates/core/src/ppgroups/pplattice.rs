use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::abelian::{CyclicProduct, FiniteAbelianGroup};
use super::formula::{pp_subgroup, PPFormula};
use super::subgroup::Subgroup;
use crate::error::{cap_check, Result};
use crate::lattice::{Lattice, Poset};

/// Default cap on the number of subgroups produced by a closure.
pub const DEFAULT_LATTICE_CAP: usize = 20_000;

/// Closes `gens` under intersection and sum.
///
/// Sums are found without enumeration when possible: `|H + K| = |H||K| / |H ∩ K|`,
/// so an already known `X ⊇ H ∪ K` of that order is `H + K`.
pub fn close_under_meet_and_sum(
    space: &CyclicProduct,
    gens: Vec<Subgroup>,
    cap: usize,
) -> Result<Vec<Subgroup>> {
    let mut fam = Family {
        list: Vec::new(),
        index: HashMap::new(),
        by_order: HashMap::new(),
        cap,
    };
    for g in gens {
        fam.push(g)?;
    }
    if fam.list.is_empty() {
        fam.push(Subgroup::trivial(space))?;
    }
    let mut j = 0;
    while j < fam.list.len() {
        for i in 0..j {
            let (h, k) = (&fam.list[i], &fam.list[j]);
            if h.is_subgroup_of(k) || k.is_subgroup_of(h) {
                continue;
            }
            let meet = h.intersection(k);
            let target = h.order() * k.order() / meet.order();
            let join = if fam.find_above(target, h, k) {
                None
            } else {
                Some(h.sum(k))
            };
            fam.push(meet)?;
            if let Some(s) = join {
                fam.push(s)?;
            }
        }
        j += 1;
    }
    Ok(fam.list)
}

struct Family {
    list: Vec<Subgroup>,
    index: HashMap<FixedBitSet, usize>,
    by_order: HashMap<u64, Vec<usize>>,
    cap: usize,
}

impl Family {
    fn push(&mut self, h: Subgroup) -> Result<()> {
        if self.index.contains_key(h.members()) {
            return Ok(());
        }
        cap_check(
            "p.p. subgroups",
            self.list.len() as u128 + 1,
            self.cap as u128,
        )?;
        self.index.insert(h.members().clone(), self.list.len());
        self.by_order
            .entry(h.order())
            .or_default()
            .push(self.list.len());
        self.list.push(h);
        Ok(())
    }

    fn find_above(&self, order: u64, h: &Subgroup, k: &Subgroup) -> bool {
        self.by_order.get(&order).is_some_and(|c| {
            c.iter()
                .any(|&x| h.is_subgroup_of(&self.list[x]) && k.is_subgroup_of(&self.list[x]))
        })
    }
}

/// Lattice of a family of subgroups under inclusion, subgroups sorted by order.
pub fn lattice_of_subgroups(mut subs: Vec<Subgroup>) -> Result<(Lattice, Vec<Subgroup>)> {
    subs.sort_by_key(Subgroup::order);
    let n = subs.len();
    let poset = Poset::from_fn(n, |i, j| subs[i].is_subgroup_of(&subs[j]))?;
    let lattice = Lattice::from_poset(poset)?;
    Ok((lattice, subs))
}

/// The generators `A[p^d]` and `p^e A` for every prime and exponent.
fn torsion_and_divisibility(g: &FiniteAbelianGroup, cap: u64) -> Result<Vec<Subgroup>> {
    let mut gens = Vec::new();
    for p in g.primes() {
        for d in 0..=g.exponent_at(p) {
            gens.push(pp_subgroup(g, 1, &PPFormula::tau(p, d), cap)?);
            gens.push(pp_subgroup(g, 1, &PPFormula::delta(p, 0, d), cap)?);
        }
    }
    Ok(gens)
}

/// `PP(A)` by closing all torsion and divisibility subgroups of the whole group.
pub fn pp_lattice_direct(g: &FiniteAbelianGroup, cap: u64) -> Result<(Lattice, Vec<Subgroup>)> {
    let gens = torsion_and_divisibility(g, cap)?;
    lattice_of_subgroups(close_under_meet_and_sum(
        g.space(),
        gens,
        DEFAULT_LATTICE_CAP,
    )?)
}

/// `PP(A)`: one closure per primary component, then the product.
pub fn pp_lattice(g: &FiniteAbelianGroup, cap: u64) -> Result<(Lattice, Vec<Subgroup>)> {
    let mut parts = Vec::new();
    for p in g.primes() {
        let gp = g.primary_component(p)?;
        let (l, subs) = pp_lattice_direct(&gp, cap)?;
        parts.push((gp, l, subs));
    }
    let mut lattice = parts[0].1.clone();
    let mut subs = parts[0].2.clone();
    let mut offset = parts[0].0.order();
    for (gp, l, s) in parts.iter().skip(1) {
        cap_check(
            "p.p. subgroups",
            (subs.len() * s.len()) as u128,
            DEFAULT_LATTICE_CAP as u128,
        )?;
        let space = prefix_space(g, offset * gp.order(), cap);
        let mut combined = Vec::with_capacity(subs.len() * s.len());
        for h in &subs {
            for k in s {
                // primes occupy contiguous component blocks, lower primes less significant
                let mut members = FixedBitSet::with_capacity(space.order() as usize);
                for y in k.members().ones() {
                    for x in h.members().ones() {
                        members.insert(x + y * offset as usize);
                    }
                }
                combined.push(Subgroup::from_members_unchecked(&space, members));
            }
        }
        lattice = product_lattice(&lattice, l)?;
        offset *= gp.order();
        subs = combined;
    }
    Ok((lattice, subs))
}

/// The cyclic product formed by the leading components of `g`, of the given order.
fn prefix_space(g: &FiniteAbelianGroup, order: u64, cap: u64) -> CyclicProduct {
    let mut acc = 1;
    let mut moduli = Vec::new();
    for &q in g.space().moduli() {
        if acc == order {
            break;
        }
        acc *= q;
        moduli.push(q);
    }
    CyclicProduct::new(moduli, cap).expect("prefix of a valid group")
}

/// `L x M` with componentwise operations; `(a, b)` has index `a * |M| + b`.
pub fn product_lattice(a: &Lattice, b: &Lattice) -> Result<Lattice> {
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let poset = Poset::from_fn(n, |x, y| a.leq(x / nb, y / nb) && b.leq(x % nb, y % nb))?;
    let mut meet = vec![0u32; n * n];
    let mut join = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            meet[x * n + y] = (a.meet(x / nb, y / nb) * nb + b.meet(x % nb, y % nb)) as u32;
            join[x * n + y] = (a.join(x / nb, y / nb) * nb + b.join(x % nb, y % nb)) as u32;
        }
    }
    Lattice::from_tables(poset, meet, join)
}

/// `PP_m(A)` for `m >= 1` on small groups.
///
/// Every p.p. formula is a conjunction of `c·x ∈ qA` and `c·x = 0` over
/// coefficient vectors `c` modulo the exponent, so closing these atoms under
/// intersection (and sum, for good measure) yields the whole lattice.
pub fn pp_lattice_power(
    g: &FiniteAbelianGroup,
    m: usize,
    cap: u64,
) -> Result<(Lattice, Vec<Subgroup>)> {
    let space = g.power(m, cap)?;
    let exponent: u64 = g
        .primes()
        .iter()
        .map(|&p| p.pow(g.exponent_at(p)))
        .product();
    let divisors: Vec<u64> = (1..=exponent)
        .filter(|q| exponent.is_multiple_of(*q))
        .collect();
    let vectors = (exponent as u128).pow(m as u32);
    cap_check("coefficient vectors", vectors, 4096)?;
    let mut gens = Vec::new();
    for code in 0..vectors as u64 {
        let mut c = Vec::with_capacity(m);
        let mut rest = code;
        for _ in 0..m {
            c.push((rest % exponent) as i64);
            rest /= exponent;
        }
        gens.push(pp_subgroup(
            g,
            m,
            &PPFormula {
                m,
                a: vec![c.clone()],
                b: vec![],
            },
            cap,
        )?);
        for &q in &divisors {
            gens.push(pp_subgroup(
                g,
                m,
                &PPFormula {
                    m,
                    a: vec![c.clone()],
                    b: vec![vec![q as i64]],
                },
                cap,
            )?);
        }
    }
    let mut seen = std::collections::HashSet::new();
    gens.retain(|h| seen.insert(h.members().clone()));
    lattice_of_subgroups(close_under_meet_and_sum(&space, gens, DEFAULT_LATTICE_CAP)?)
}
