use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{cap_check, Error, Result};
use crate::ppgroups::{FiniteAbelianGroup, Subgroup};

/// Traces are packed into `u128`, so shatter sets have at most this many points.
pub const MAX_TRACE_POINTS: usize = 128;
/// Default cap on the number of `t`-subsets enumerated per `t` in exact mode.
pub const DEFAULT_SUBSET_CAP: u128 = 2_000_000;

/// A count that is either exact or only known to be at least the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CappedCount {
    Exact(usize),
    AtLeast(usize),
}

impl CappedCount {
    pub fn value(self) -> usize {
        match self {
            CappedCount::Exact(v) | CappedCount::AtLeast(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, CappedCount::Exact(_))
    }
}

/// A finite family of subsets of `[0, base)`. Duplicates are kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SetSystemJson", into = "SetSystemJson")]
pub struct SetSystem {
    base: usize,
    sets: Vec<FixedBitSet>,
    tags: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SetSystemJson {
    base: usize,
    sets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    tags: Vec<String>,
}

impl TryFrom<SetSystemJson> for SetSystem {
    type Error = Error;

    fn try_from(j: SetSystemJson) -> Result<Self> {
        SetSystem::new(j.base, &j.sets)?.with_tags(j.tags)
    }
}

impl From<SetSystem> for SetSystemJson {
    fn from(s: SetSystem) -> Self {
        SetSystemJson {
            base: s.base,
            sets: s.sets.iter().map(|b| b.ones().collect()).collect(),
            tags: s.tags,
        }
    }
}

impl SetSystem {
    pub fn new(base: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut out = Vec::with_capacity(sets.len());
        for s in sets {
            let mut b = FixedBitSet::with_capacity(base);
            for &x in s {
                if x >= base {
                    return Err(Error::NotSubset(format!(
                        "point {x} outside base of size {base}"
                    )));
                }
                b.insert(x);
            }
            out.push(b);
        }
        Ok(Self {
            base,
            sets: out,
            tags: Vec::new(),
        })
    }

    pub fn from_bitsets(base: usize, sets: Vec<FixedBitSet>) -> Result<Self> {
        if let Some(s) = sets.iter().find(|s| s.ones().any(|x| x >= base)) {
            return Err(Error::NotSubset(format!(
                "set {:?} outside base of size {base}",
                s.ones().collect::<Vec<_>>()
            )));
        }
        let sets = sets
            .into_iter()
            .map(|mut s| {
                s.grow(base);
                s
            })
            .collect();
        Ok(Self {
            base,
            sets,
            tags: Vec::new(),
        })
    }

    /// Attaches one label per set (or none).
    pub fn with_tags(mut self, tags: Vec<String>) -> Result<Self> {
        if !tags.is_empty() && tags.len() != self.sets.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} tags for {} sets",
                tags.len(),
                self.sets.len()
            )));
        }
        self.tags = tags;
        Ok(self)
    }

    pub fn base_size(&self) -> usize {
        self.base
    }

    pub fn sets(&self) -> &[FixedBitSet] {
        &self.sets
    }

    pub fn tags(&self) -> &[String] {
        &self.tags
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Number of sets equal to an earlier set.
    pub fn duplicate_count(&self) -> usize {
        self.sets.len() - self.distinct_sets().len()
    }

    /// Distinct sets in first-occurrence order.
    pub fn distinct_sets(&self) -> Vec<FixedBitSet> {
        let mut seen = HashSet::new();
        self.sets
            .iter()
            .filter(|s| seen.insert((*s).clone()))
            .cloned()
            .collect()
    }

    /// Number of distinct traces `S ∩ A` on the points `A`.
    pub fn trace_count(&self, points: &[usize]) -> Result<usize> {
        if points.len() > MAX_TRACE_POINTS {
            return Err(Error::CapExceeded {
                what: "trace points",
                needed: points.len() as u128,
                cap: MAX_TRACE_POINTS as u128,
            });
        }
        Ok(self.traces(points).len())
    }

    fn traces(&self, points: &[usize]) -> HashSet<u128> {
        self.sets
            .iter()
            .map(|s| {
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| s.contains(x))
                    .fold(0u128, |k, (i, _)| k | 1 << i)
            })
            .collect()
    }

    /// For every point, the indices of the sets containing it.
    pub fn dual(&self) -> SetSystem {
        let m = self.sets.len();
        let mut rows = vec![FixedBitSet::with_capacity(m); self.base];
        for (i, s) in self.sets.iter().enumerate() {
            for x in s.ones() {
                rows[x].insert(i);
            }
        }
        SetSystem {
            base: m,
            sets: rows,
            tags: Vec::new(),
        }
    }
}

/// How [`shatter_profile`] evaluates each `π(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ShatterMode {
    /// Every `t`-subset; fails when there are more than `subset_cap`.
    Exact { subset_cap: u128 },
    /// Random `t`-subsets plus a greedy pass; exact whenever all subsets fit
    /// in the sample budget.
    Sampled { samples: usize, seed: u64 },
}

/// `π(t)` for `t = 0..=t_max`, with per-value exactness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterProfile {
    pub values: Vec<u64>,
    /// `exact[t]` is false when `values[t]` is only a lower bound.
    pub exact: Vec<bool>,
}

/// One CSV row: `t,pi,exact`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterRow {
    pub t: usize,
    pub pi: u64,
    pub exact: bool,
}

impl ShatterProfile {
    pub fn rows(&self) -> Vec<ShatterRow> {
        self.values
            .iter()
            .zip(&self.exact)
            .enumerate()
            .map(|(t, (&pi, &exact))| ShatterRow { t, pi, exact })
            .collect()
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// `π(t) = max_{|A| = t} |{S ∩ A}|`. For `t > base` the maximum is over `A = base`.
pub fn shatter_profile(s: &SetSystem, t_max: usize, mode: ShatterMode) -> Result<ShatterProfile> {
    let n = s.base;
    let distinct = s.distinct_sets().len() as u64;
    let mut values = Vec::with_capacity(t_max + 1);
    let mut exact = Vec::with_capacity(t_max + 1);
    let mut rng = match mode {
        ShatterMode::Sampled { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        ShatterMode::Exact { .. } => None,
    };
    for t in 0..=t_max {
        let tt = t.min(n);
        if tt > MAX_TRACE_POINTS {
            return Err(Error::CapExceeded {
                what: "trace points",
                needed: tt as u128,
                cap: MAX_TRACE_POINTS as u128,
            });
        }
        let ceiling = distinct.min(if tt >= 64 { u64::MAX } else { 1 << tt });
        let subsets = binomial(n, tt);
        let (v, ex) = match (mode, rng.as_mut()) {
            (ShatterMode::Exact { subset_cap }, _) => {
                cap_check("t-subsets", subsets, subset_cap)?;
                (max_over_all(s, n, tt, ceiling), true)
            }
            (ShatterMode::Sampled { samples, .. }, Some(rng)) => {
                if subsets <= samples as u128 {
                    (max_over_all(s, n, tt, ceiling), true)
                } else {
                    let mut best = greedy_traces(s, tt);
                    for _ in 0..samples {
                        if best == ceiling {
                            break;
                        }
                        let pts = sample(rng, n, tt).into_vec();
                        best = best.max(s.traces(&pts).len() as u64);
                    }
                    (best, best == ceiling)
                }
            }
            (ShatterMode::Sampled { .. }, None) => unreachable!("rng exists in sampled mode"),
        };
        values.push(v);
        exact.push(ex);
    }
    Ok(ShatterProfile { values, exact })
}

fn max_over_all(s: &SetSystem, n: usize, t: usize, ceiling: u64) -> u64 {
    let mut best = 0;
    for pts in (0..n).combinations(t) {
        best = best.max(s.traces(&pts).len() as u64);
        if best == ceiling {
            break;
        }
    }
    best
}

/// Adds, one at a time, the point that most increases the trace count.
fn greedy_traces(s: &SetSystem, t: usize) -> u64 {
    let mut pts: Vec<usize> = Vec::with_capacity(t);
    let mut used = FixedBitSet::with_capacity(s.base);
    let mut best = s.traces(&[]).len() as u64;
    for _ in 0..t {
        let (x, v) = (0..s.base)
            .filter(|&x| !used.contains(x))
            .map(|x| {
                pts.push(x);
                let v = s.traces(&pts).len() as u64;
                pts.pop();
                (x, v)
            })
            .max_by_key(|&(x, v)| (v, std::cmp::Reverse(x)))
            .expect("t <= base");
        pts.push(x);
        used.insert(x);
        best = v;
    }
    best
}

fn is_shattered(s: &SetSystem, pts: &[usize]) -> bool {
    s.traces(pts).len() as u128 == 1u128 << pts.len()
}

/// Largest `d <= cap` such that some `d`-set is shattered; `AtLeast(cap)`
/// when a `cap`-set is shattered. The empty family gets `0`.
pub fn vc_dim(s: &SetSystem, cap: usize) -> CappedCount {
    let cap = cap.min(MAX_TRACE_POINTS - 1);
    let distinct = s.distinct_sets().len() as u128;
    // shattered sets form a down-closed family: grow them one point at a time
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    let mut d = 0;
    while d < cap && (1u128 << (d + 1)) <= distinct {
        let next: Vec<Vec<usize>> = level
            .iter()
            .flat_map(|a| {
                let start = a.last().map_or(0, |&x| x + 1);
                (start..s.base).map(move |x| {
                    let mut b = a.clone();
                    b.push(x);
                    b
                })
            })
            .filter(|b| is_shattered(s, b))
            .collect();
        if next.is_empty() {
            return CappedCount::Exact(d);
        }
        level = next;
        d += 1;
    }
    if d == cap && d > 0 {
        CappedCount::AtLeast(d)
    } else {
        CappedCount::Exact(d)
    }
}

/// Largest irredundant subfamily with nonempty intersection, searched up to
/// `cap` sets. Duplicates are collapsed first.
pub fn breadth_of_system(s: &SetSystem, cap: usize) -> CappedCount {
    let sets = s.distinct_sets();
    let mut full = FixedBitSet::with_capacity(s.base);
    full.insert_range(..);
    let mut best = 0;
    let mut chosen: Vec<usize> = Vec::new();
    let mut leave_out: Vec<FixedBitSet> = Vec::new();
    irredundant_dfs(&sets, 0, &full, &mut chosen, &mut leave_out, cap, &mut best);
    if best >= cap && cap > 0 {
        CappedCount::AtLeast(cap)
    } else {
        CappedCount::Exact(best)
    }
}

/// `leave_out[i]` is the intersection of the chosen sets other than `chosen[i]`.
fn irredundant_dfs(
    sets: &[FixedBitSet],
    start: usize,
    inter: &FixedBitSet,
    chosen: &mut Vec<usize>,
    leave_out: &mut Vec<FixedBitSet>,
    cap: usize,
    best: &mut usize,
) {
    *best = (*best).max(chosen.len());
    if *best >= cap {
        return;
    }
    for k in start..sets.len() {
        let b = &sets[k];
        let mut new_inter = inter.clone();
        new_inter.intersect_with(b);
        if new_inter.is_clear() || new_inter == *inter {
            continue;
        }
        let new_leave: Vec<FixedBitSet> = leave_out
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.intersect_with(b);
                l
            })
            .collect();
        if new_leave.contains(&new_inter) {
            continue;
        }
        let saved = std::mem::replace(leave_out, new_leave);
        leave_out.push(inter.clone());
        chosen.push(k);
        irredundant_dfs(sets, k + 1, &new_inter, chosen, leave_out, cap, best);
        chosen.pop();
        *leave_out = saved;
        if *best >= cap {
            return;
        }
    }
}

/// The subgroups themselves as subsets of the group.
pub fn subgroup_system(g: &FiniteAbelianGroup, subs: &[Subgroup]) -> Result<SetSystem> {
    check_ambient(g, subs)?;
    let tags = (0..subs.len()).map(|k| format!("H{k}")).collect();
    SetSystem::from_bitsets(
        g.order() as usize,
        subs.iter().map(|h| h.members().clone()).collect(),
    )?
    .with_tags(tags)
}

/// Every coset of every listed subgroup, tagged `H{k}+{rep}`.
pub fn coset_system(g: &FiniteAbelianGroup, subs: &[Subgroup]) -> Result<SetSystem> {
    check_ambient(g, subs)?;
    let mut sets = Vec::new();
    let mut tags = Vec::new();
    for (k, h) in subs.iter().enumerate() {
        for c in h.cosets() {
            tags.push(format!(
                "H{k}+{}",
                c.minimum().expect("cosets are nonempty")
            ));
            sets.push(c);
        }
    }
    SetSystem::from_bitsets(g.order() as usize, sets)?.with_tags(tags)
}

fn check_ambient(g: &FiniteAbelianGroup, subs: &[Subgroup]) -> Result<()> {
    match subs.iter().position(|h| h.space() != g.space()) {
        Some(k) => Err(Error::NotASubgroup(format!(
            "subgroup {k} lives in a different group"
        ))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singletons(n: usize) -> SetSystem {
        SetSystem::new(n, &(0..n).map(|x| vec![x]).collect::<Vec<_>>()).unwrap()
    }

    fn power_set(n: usize) -> SetSystem {
        let sets: Vec<Vec<usize>> = (0..1usize << n)
            .map(|m| (0..n).filter(|&x| m >> x & 1 == 1).collect())
            .collect();
        SetSystem::new(n, &sets).unwrap()
    }

    const EXACT: ShatterMode = ShatterMode::Exact {
        subset_cap: DEFAULT_SUBSET_CAP,
    };

    #[test]
    fn singleton_profile() {
        let p = shatter_profile(&singletons(5), 5, EXACT).unwrap();
        // at t points: the t singletons met plus the empty trace, except at t = 5
        assert_eq!(p.values, vec![1, 2, 3, 4, 5, 5]);
        assert_eq!(vc_dim(&singletons(5), 10), CappedCount::Exact(1));
    }

    #[test]
    fn pairs_shatter_two_points() {
        let pairs: Vec<Vec<usize>> = (0..6).combinations(2).collect();
        let s = SetSystem::new(6, &pairs).unwrap();
        let p = shatter_profile(&s, 3, EXACT).unwrap();
        assert_eq!(p.values[2], 4);
        assert_eq!(vc_dim(&s, 10), CappedCount::Exact(2));
    }

    #[test]
    fn power_set_is_fully_shattered() {
        assert_eq!(vc_dim(&power_set(4), 10), CappedCount::Exact(4));
        assert_eq!(vc_dim(&power_set(4), 3), CappedCount::AtLeast(3));
    }

    #[test]
    fn chain_has_breadth_one() {
        let chain: Vec<Vec<usize>> = (1..=5).map(|k| (0..k).collect()).collect();
        assert_eq!(
            breadth_of_system(&SetSystem::new(5, &chain).unwrap(), 10),
            CappedCount::Exact(1)
        );
    }

    #[test]
    fn hyperplanes_of_the_plane() {
        let g = FiniteAbelianGroup::parse("2^1x2").unwrap();
        let s = g.space();
        let subs: Vec<Subgroup> = [1u64, 2, 3]
            .iter()
            .map(|&x| Subgroup::generated(s, [x]))
            .collect();
        let sys = subgroup_system(&g, &subs).unwrap();
        assert_eq!(breadth_of_system(&sys, 10), CappedCount::Exact(2));
        let cos = coset_system(&g, &subs).unwrap();
        assert_eq!(cos.len(), 6);
        assert_eq!(breadth_of_system(&cos, 10), CappedCount::Exact(2));
    }

    #[test]
    fn sampled_mode_is_a_lower_bound() {
        let s = power_set(8);
        let exact = shatter_profile(&s, 6, EXACT).unwrap();
        let sampled = shatter_profile(
            &s,
            6,
            ShatterMode::Sampled {
                samples: 5,
                seed: 7,
            },
        )
        .unwrap();
        for t in 0..=6 {
            assert!(sampled.values[t] <= exact.values[t]);
        }
        // the power set reaches the ceiling everywhere
        assert_eq!(sampled.values, exact.values);
    }

    #[test]
    fn dual_of_dual() {
        let s = SetSystem::new(4, &[vec![0, 1], vec![1, 2, 3], vec![], vec![0, 3]]).unwrap();
        assert_eq!(s.dual().dual(), s);
        assert_eq!(singletons(4).dual(), singletons(4));
    }

    #[test]
    fn json_round_trip() {
        let s = SetSystem::new(3, &[vec![0, 2], vec![1]]).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"base":3,"sets":[[0,2],[1]]}"#);
        assert_eq!(serde_json::from_str::<SetSystem>(&js).unwrap(), s);
        assert!(serde_json::from_str::<SetSystem>(r#"{"base":2,"sets":[[5]]}"#).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(30, 15), 155_117_520);
    }
}
