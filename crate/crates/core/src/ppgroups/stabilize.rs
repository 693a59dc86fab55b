use num_traits::{FromPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::padic::{kernel_log_size, Echelon, PInt};
use crate::error::{Error, Result};

/// Extra exponents checked beyond the five guaranteed ones.
const EXTRA_CHECKS: u32 = 3;

/// Outcome of [`stabilize_pp_conjunction`]. Indices refer to the input lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilizeReport {
    pub kept_kills: Vec<usize>,
    pub kept_divs: Vec<usize>,
    /// Common divisibility exponent after equalizing.
    pub d: u32,
    /// Torsion exponent of `M/N`.
    pub e: u32,
    /// Full and reduced conjunctions agree in `Z(p^i)^m` for all `i >= threshold`.
    pub threshold: u32,
    /// Exponents at which equality was re-checked from the Smith form.
    pub verified_range: (u32, u32),
}

/// Rows defining the conjunction in `Z(p^i)^m`, `i >= d`: each kill `a` as is,
/// each divisibility `p^{d_j} | b x` as `p^{i-d} (p^{d-d_j} b)`.
fn conjunction_rows<T: PInt>(
    p: &T,
    kills: &[Vec<T>],
    divs: &[Vec<T>],
    i: u32,
    d: u32,
) -> Vec<Vec<T>> {
    let scale: T = num_traits::pow(p.clone(), (i - d) as usize);
    let mut rows: Vec<Vec<T>> = kills.to_vec();
    rows.extend(
        divs.iter()
            .map(|b| b.iter().map(|x| x.clone() * scale.clone()).collect()),
    );
    rows
}

/// Selects `r` kills spanning `N = Σ R a_j` and `s` divisibilities whose
/// `p^e`-multiples span `M_e / N`, with `r + s <= m`, over `R = Z_(p)`.
///
/// `kills` are integer vectors `a` (the formula `a·x = 0`); `divs` are pairs
/// `(b, d_j)` (the formula `p^{d_j} | b·x`).
pub fn stabilize_pp_conjunction<T: PInt>(
    p: u64,
    m: usize,
    kills: &[Vec<i64>],
    divs: &[(Vec<i64>, u32)],
) -> Result<StabilizeReport> {
    if kills.iter().any(|a| a.len() != m) || divs.iter().any(|(b, _)| b.len() != m) {
        return Err(Error::ShapeMismatch(format!(
            "all vectors must have length {m}"
        )));
    }
    let pt = T::from_u64(p).ok_or_else(|| Error::Overflow("converting p".into()))?;
    let conv = |v: &[i64]| -> Vec<T> {
        v.iter()
            .map(|&x| T::from_i64(x).expect("i64 fits"))
            .collect()
    };
    let a: Vec<Vec<T>> = kills.iter().map(|v| conv(v)).collect();
    let d = divs.iter().map(|(_, dj)| *dj).max().unwrap_or(0);
    let b: Vec<Vec<T>> = divs
        .iter()
        .map(|(v, dj)| {
            let s: T = num_traits::pow(pt.clone(), (d - dj) as usize);
            conv(v).into_iter().map(|x| x * s.clone()).collect()
        })
        .collect();

    let kept_kills = minimal_generators(&pt, m, &[], &a);
    let n_basis: Vec<Vec<T>> = kept_kills.iter().map(|&k| a[k].clone()).collect();

    // e: exponent of the torsion of M/N, read from N in coordinates of a basis of M
    let mut m_gens = a.clone();
    m_gens.extend(b.iter().cloned());
    let m_ech = Echelon::new(&pt, m, &m_gens);
    let coords: Vec<Vec<T>> = n_basis
        .iter()
        .map(|v| {
            let (rest, c) = m_ech.reduce(v);
            debug_assert!(rest.iter().all(Zero::is_zero));
            c
        })
        .collect();
    let e = super::padic::smith_valuations(&pt, &coords)
        .into_iter()
        .max()
        .unwrap_or(0);

    let pe: T = num_traits::pow(pt.clone(), e as usize);
    let scaled: Vec<Vec<T>> = b
        .iter()
        .map(|v| v.iter().map(|x| x.clone() * pe.clone()).collect())
        .collect();
    let kept_divs = minimal_generators(&pt, m, &n_basis, &scaled);
    if kept_kills.len() + kept_divs.len() > m {
        return Err(Error::Invariant(format!(
            "selected {} + {} generators in rank {m}",
            kept_kills.len(),
            kept_divs.len()
        )));
    }

    let threshold = d + e;
    let hi = threshold + 4 + EXTRA_CHECKS;
    let kk: Vec<Vec<T>> = kept_kills.iter().map(|&k| a[k].clone()).collect();
    let kd: Vec<Vec<T>> = kept_divs.iter().map(|&k| b[k].clone()).collect();
    for i in threshold.max(d)..=hi {
        let full = kernel_log_size(&pt, &conjunction_rows(&pt, &a, &b, i, d), m, i);
        let reduced = kernel_log_size(&pt, &conjunction_rows(&pt, &kk, &kd, i, d), m, i);
        if full != reduced {
            return Err(Error::Invariant(format!(
                "conjunctions differ at i = {i}: p^{full} vs p^{reduced}"
            )));
        }
    }
    Ok(StabilizeReport {
        kept_kills,
        kept_divs,
        d,
        e,
        threshold,
        verified_range: (threshold, hi),
    })
}

/// Indices of a subset of `cands` that, together with `base`, generates the
/// same module as `base ∪ cands` and is minimal under inclusion. By Nakayama
/// such a subset maps to a basis of the quotient by `base`.
fn minimal_generators<T: PInt>(p: &T, m: usize, base: &[Vec<T>], cands: &[Vec<T>]) -> Vec<usize> {
    let mut kept: Vec<usize> = (0..cands.len())
        .filter(|&k| cands[k].iter().any(|x| !x.is_zero()))
        .collect();
    let mut k = 0;
    while k < kept.len() {
        let mut others: Vec<Vec<T>> = base.to_vec();
        others.extend(
            kept.iter()
                .filter(|&&j| j != kept[k])
                .map(|&j| cands[j].clone()),
        );
        if Echelon::new(p, m, &others).contains(&cands[kept[k]]) {
            kept.remove(k);
        } else {
            k += 1;
        }
    }
    kept
}

/// Convenience: `i128` arithmetic.
pub fn stabilize(
    p: u64,
    m: usize,
    kills: &[Vec<i64>],
    divs: &[(Vec<i64>, u32)],
) -> Result<StabilizeReport> {
    stabilize_pp_conjunction::<i128>(p, m, kills, divs)
}

/// Enumerates `(Z/p^i)^m` and compares the full conjunction with the one kept
/// by `report`, formula by formula.
pub fn stabilize_agrees_brute(
    p: u64,
    m: usize,
    kills: &[Vec<i64>],
    divs: &[(Vec<i64>, u32)],
    report: &StabilizeReport,
    i: u32,
    cap: u64,
) -> Result<bool> {
    let q = p
        .checked_pow(i)
        .ok_or_else(|| Error::Overflow(format!("{p}^{i}")))?;
    let size = (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    crate::error::cap_check("brute-force tuples", size, cap as u128)?;
    let q = q as i128;
    let dot = |v: &[i64], x: &[i128]| {
        v.iter()
            .zip(x)
            .map(|(&a, &b)| a as i128 * b)
            .sum::<i128>()
            .rem_euclid(q)
    };
    let kill_ok = |k: usize, x: &[i128]| dot(&kills[k], x) == 0;
    // `p^dj` divides `r` in `Z/p^i` iff `r` has valuation `>= dj` (or `r = 0`)
    let div_ok = |k: usize, x: &[i128]| {
        let (b, dj) = &divs[k];
        let r = dot(b, x);
        r == 0 || (*dj < i && r % (p as i128).pow(*dj) == 0)
    };
    let mut x = vec![0i128; m];
    for _ in 0..size {
        let full =
            (0..kills.len()).all(|k| kill_ok(k, &x)) && (0..divs.len()).all(|k| div_ok(k, &x));
        let kept = report.kept_kills.iter().all(|&k| kill_ok(k, &x))
            && report.kept_divs.iter().all(|&k| div_ok(k, &x));
        if full != kept {
            return Ok(false);
        }
        for c in x.iter_mut() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    Ok(true)
}

/// `log_p |{x ∈ (Z/p^i)^m : conjunction}|` computed from the Smith form; exposed
/// for callers that want to compare against their own enumeration.
pub fn conjunction_log_size(
    p: u64,
    m: usize,
    kills: &[Vec<i64>],
    divs: &[(Vec<i64>, u32)],
    i: u32,
) -> u64 {
    let pt = i128::from_u64(p).expect("small prime");
    let conv = |v: &[i64]| -> Vec<i128> { v.iter().map(|&x| x as i128).collect() };
    let mut rows: Vec<Vec<i128>> = kills.iter().map(|v| conv(v)).collect();
    for (b, dj) in divs {
        let k = i.saturating_sub(*dj);
        let s = pt.pow(k);
        rows.push(b.iter().map(|&x| x as i128 * s).collect());
    }
    kernel_log_size(&pt, &rows, m, i)
}
