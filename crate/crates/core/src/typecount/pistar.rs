use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fit::loglog_slope;
use super::formulas::TypeCounter;
use crate::error::{cap_check, Result};
use crate::setsystem::binomial;

/// Default cap on parameter subsets enumerated in exact mode.
pub const DEFAULT_PARAM_SUBSET_CAP: u128 = 200_000;

/// How `π*_Δ(t)` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PiStarMode {
    /// Maximum over every `t`-subset of parameters.
    Exact { subset_cap: u128 },
    /// Maximum over `trials` random `t`-subsets.
    Sampled { trials: usize, seed: u64 },
    /// Grows one parameter set, adding the best of `pool` random candidates
    /// (all parameters when there are at most `pool`).
    Greedy { pool: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CountMode {
    Exact,
    SampledLowerBound,
    GreedyLowerBound,
}

/// One row `(t, count, mode, seed)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCountRow {
    pub t: usize,
    pub count: usize,
    pub mode: CountMode,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TypeCountReport {
    pub rows: Vec<TypeCountRow>,
    /// Least-squares slope of `ln count` against `ln t` over `window`.
    pub fit_slope: Option<f64>,
    pub window: Option<(usize, usize)>,
}

impl TypeCountReport {
    pub fn from_rows(rows: Vec<TypeCountRow>, window: Option<(usize, usize)>) -> Self {
        let fit_slope = window.and_then(|(lo, hi)| {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.t >= lo && r.t <= hi)
                .map(|r| (r.t as f64, r.count as f64))
                .collect();
            loglog_slope(&pts)
        });
        Self {
            rows,
            fit_slope,
            window,
        }
    }
}

/// `π*_Δ(t)` (exact) or a flagged lower bound.
pub fn pi_star(c: &TypeCounter, t: usize, mode: PiStarMode) -> Result<TypeCountRow> {
    Ok(match mode {
        PiStarMode::Exact { subset_cap } => {
            let n = c.param_size() as usize;
            cap_check("parameter subsets", binomial(n, t), subset_cap)?;
            let ceiling = c.class_count();
            let mut best = 0;
            for b in (0..n as u64).combinations(t.min(n)) {
                best = best.max(c.count(&b)?);
                if best == ceiling {
                    break;
                }
            }
            TypeCountRow {
                t,
                count: best,
                mode: CountMode::Exact,
                seed: None,
            }
        }
        PiStarMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = c.param_size() as usize;
            let t = t.min(n);
            let mut best = 0;
            for _ in 0..trials.max(1) {
                let b: Vec<u64> = sample(&mut rng, n, t)
                    .into_iter()
                    .map(|x| x as u64)
                    .collect();
                best = best.max(c.count(&b)?);
            }
            TypeCountRow {
                t,
                count: best,
                mode: CountMode::SampledLowerBound,
                seed: Some(seed),
            }
        }
        PiStarMode::Greedy { pool, seed } => greedy_profile(c, t, pool, seed)?
            .pop()
            .expect("profile covers t = 0"),
    })
}

/// Greedy counts for `t = 0..=t_max` from one growing parameter set.
pub fn greedy_profile(
    c: &TypeCounter,
    t_max: usize,
    pool: usize,
    seed: u64,
) -> Result<Vec<TypeCountRow>> {
    Ok(greedy_grow(c, t_max, pool, seed)?.0)
}

/// The parameter set grown greedily to size `t` (or the whole parameter space).
pub fn greedy_params(c: &TypeCounter, t: usize, pool: usize, seed: u64) -> Result<Vec<u64>> {
    Ok(greedy_grow(c, t, pool, seed)?.1)
}

fn greedy_grow(
    c: &TypeCounter,
    t_max: usize,
    pool: usize,
    seed: u64,
) -> Result<(Vec<TypeCountRow>, Vec<u64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = c.param_size() as usize;
    let mut chosen: Vec<u64> = Vec::new();
    let mut used = HashSet::new();
    let row = |t, count| TypeCountRow {
        t,
        count,
        mode: CountMode::GreedyLowerBound,
        seed: Some(seed),
    };
    let mut rows = vec![row(0, c.count(&[])?)];
    for t in 1..=t_max.min(n) {
        let cands: Vec<u64> = if n <= pool {
            (0..n as u64).filter(|b| !used.contains(b)).collect()
        } else {
            sample(&mut rng, n, pool)
                .into_iter()
                .map(|x| x as u64)
                .filter(|b| !used.contains(b))
                .collect()
        };
        let mut best: Option<(usize, u64)> = None;
        for b in cands {
            chosen.push(b);
            let v = c.count(&chosen)?;
            chosen.pop();
            if best.is_none_or(|(bv, _)| v > bv) {
                best = Some((v, b));
            }
        }
        let Some((v, b)) = best else { break };
        chosen.push(b);
        used.insert(b);
        rows.push(row(t, v));
    }
    Ok((rows, chosen))
}

/// Rows for every `t` in `ts`, with the slope fitted over `window`.
pub fn pi_star_profile(
    c: &TypeCounter,
    ts: &[usize],
    mode: PiStarMode,
    window: Option<(usize, usize)>,
) -> Result<TypeCountReport> {
    let rows = match mode {
        PiStarMode::Greedy { pool, seed } => {
            let all = greedy_profile(c, ts.iter().copied().max().unwrap_or(0), pool, seed)?;
            ts.iter().filter_map(|&t| all.get(t).cloned()).collect()
        }
        _ => ts
            .iter()
            .map(|&t| pi_star(c, t, mode))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(TypeCountReport::from_rows(rows, window))
}
