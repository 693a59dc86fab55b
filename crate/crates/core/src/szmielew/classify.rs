use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::dfun::d_of;
use super::invariants::{Model, SzmielewInvariants};
use crate::error::{Error, Result};

/// `lower <= vc(m) <= upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcBound {
    pub m: u64,
    pub lower: u64,
    pub upper: u64,
}

/// `U_{>=ℵ0}(p)` in exponent form (`n` such that `Z(p^n)` occurs `ℵ0` times).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlephSetReport {
    pub p: u64,
    /// `None` when the set is infinite.
    pub exponents: Option<Vec<u64>>,
    pub d: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DpWitness {
    /// The structure is finite.
    Finite,
    /// Non-singular group plus a single-prime part with every `α` finite.
    NonSingularPlusFiniteAlpha,
    /// `Z(p^k)^(α) ⊕ Z(p^{k+1})^(β) ⊕ B`, `B` finite.
    TwoConsecutiveExponents { p: u64, k: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    /// The strict form the classification ran on.
    pub strict: SzmielewInvariants,
    pub strictness_violations: Vec<String>,
    pub infinite: bool,
    /// Explicitly listed singular primes.
    pub singular_primes: Vec<u64>,
    /// Every prime is singular (through the all-primes summand).
    pub all_primes_singular: bool,
    pub u_aleph0: Vec<AlephSetReport>,
    pub has_uniform_vc_bound: bool,
    /// `Σ_p d(U_{>=ℵ0}(p))`, when finite.
    pub d: Option<usize>,
    pub vc_bounds: Vec<VcBound>,
    /// `vc(m) = slope * m` for every `m`, when known exactly.
    pub vc_exact_slope: Option<u64>,
    pub dp_minimal: bool,
    pub dp_witness: Option<DpWitness>,
    pub non_singular: bool,
    pub u_rank_one: bool,
    pub rules: Vec<String>,
}

/// Classifies the group with the given invariants; `max_m` bounds are listed
/// for `m = 1..=max_m`.
pub fn classify(s: &SzmielewInvariants, max_m: u64) -> Result<ClassificationReport> {
    let mut model = Model::new(s)?;
    let strictness_violations = model.normalize();
    let mut rules = Vec::new();

    let infinite = !model.is_finite_group();
    let singular_primes: Vec<u64> = model
        .primes
        .iter()
        .filter(|(_, part)| part.is_singular())
        .map(|(&p, _)| p)
        .collect();
    let all_primes_singular = model.template.is_singular();
    rules.push("singular: dim A[p] or dim A/pA infinite".to_string());

    let u_aleph0: Vec<AlephSetReport> = model
        .primes
        .iter()
        .filter_map(|(&p, part)| {
            let set = part.u_aleph0();
            if set.as_ref().is_some_and(BTreeSet::is_empty) {
                return None;
            }
            let exponents: Option<Vec<u64>> = set.map(|s| s.into_iter().collect());
            let d = exponents.as_deref().map(|e| d_of(e).d);
            Some(AlephSetReport { p, exponents, d })
        })
        .collect();

    let has_uniform_vc_bound =
        !all_primes_singular && u_aleph0.iter().all(|u| u.exponents.is_some());
    rules.push("uniform bound: finitely many singular primes, each U_aleph0 finite".to_string());

    let (d, vc_bounds) = if has_uniform_vc_bound {
        let d: usize = u_aleph0.iter().filter_map(|u| u.d).sum();
        let pc = singular_primes.len() as u64;
        let d64 = d as u64;
        let bounds = (1..=max_m)
            .map(|m| VcBound {
                m,
                lower: d64.max(pc) * m,
                upper: (d64 + pc + 1) * m,
            })
            .collect();
        rules.push("bounds: max(d, |P^c|) m <= vc(m) <= (d + |P^c| + 1) m".to_string());
        (Some(d), bounds)
    } else {
        (None, Vec::new())
    };

    let non_singular = singular_primes.is_empty() && !all_primes_singular;
    let vc_exact_slope = if model.has_finite_exponent() {
        rules.push("finite exponent: vc(m) = d m".to_string());
        Some(d.expect("finite exponent has finite U sets") as u64)
    } else if non_singular && infinite {
        rules.push("infinite non-singular: vc(m) = m".to_string());
        Some(1)
    } else {
        None
    };

    let dp_witness = if !infinite {
        Some(DpWitness::Finite)
    } else if let Some(w) = two_consecutive(&model) {
        rules.push("dp-minimal: two consecutive aleph0 exponents plus a finite group".to_string());
        Some(w)
    } else if !all_primes_singular
        && singular_primes.len() <= 1
        && singular_primes
            .iter()
            .all(|p| model.primes[p].u_aleph0().is_some_and(|u| u.is_empty()))
    {
        rules.push("dp-minimal: non-singular plus one prime with finite alpha".to_string());
        Some(DpWitness::NonSingularPlusFiniteAlpha)
    } else {
        None
    };
    let dp_minimal = dp_witness.is_some();

    let u_rank_one = infinite && (non_singular || single_aleph_exponent(&model, 1).is_some());
    rules.push("U-rank 1: non-singular or Z(p)^(aleph0) plus a finite group".to_string());

    Ok(ClassificationReport {
        strict: model.to_invariants(),
        strictness_violations,
        infinite,
        singular_primes,
        all_primes_singular,
        u_aleph0,
        has_uniform_vc_bound,
        d,
        vc_bounds,
        vc_exact_slope,
        dp_minimal,
        dp_witness,
        non_singular,
        u_rank_one,
        rules,
    })
}

/// `Some(p)` when `U_{>=ℵ0}` is nonempty at exactly one prime `p`, the group
/// has finite exponent, and every other `α` is finite: then `A` is the
/// `ℵ0`-part at `p` plus a finite group.
fn aleph_part_plus_finite(model: &Model) -> Option<(u64, BTreeSet<u64>)> {
    if !model.has_finite_exponent() {
        return None;
    }
    let mut hits = model
        .primes
        .iter()
        .filter_map(|(&p, part)| part.u_aleph0().filter(|u| !u.is_empty()).map(|u| (p, u)));
    let first = hits.next()?;
    hits.next().is_none().then_some(first)
}

fn two_consecutive(model: &Model) -> Option<DpWitness> {
    let (p, u) = aleph_part_plus_finite(model)?;
    let v: Vec<u64> = u.into_iter().collect();
    let ok = v.len() == 1 || (v.len() == 2 && v[1] == v[0] + 1);
    ok.then(|| DpWitness::TwoConsecutiveExponents { p, k: v[0] as u32 })
}

fn single_aleph_exponent(model: &Model, n: u64) -> Option<u64> {
    let (p, u) = aleph_part_plus_finite(model)?;
    (u.len() == 1 && u.contains(&n)).then_some(p)
}

/// `Σ_p d({n : α_{p,n-1} != 0})` for a group of finite exponent.
pub fn breadth_finite_exponent(s: &SzmielewInvariants) -> Result<usize> {
    let model = Model::new(s)?;
    if !model.has_finite_exponent() {
        return Err(Error::NotFiniteExponent(
            "beta, gamma, delta must vanish and only finitely many alpha may be nonzero".into(),
        ));
    }
    Ok(model
        .primes
        .values()
        .map(|part| d_of(&part.support().into_iter().collect::<Vec<_>>()).d)
        .sum())
}
