//! Linear algebra over the localization `Z_(p)`, on integer matrices.
//!
//! Rows may be multiplied by integers prime to `p` (units of `Z_(p)`), which
//! keeps every computation inside the integers. Generic over the integer type
//! so the same code runs on `i128` and on `BigInt`.

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, Zero};

/// Integer types usable for `p`-local arithmetic.
pub trait PInt: Integer + Signed + Clone + FromPrimitive + std::fmt::Debug {}
impl<T: Integer + Signed + Clone + FromPrimitive + std::fmt::Debug> PInt for T {}

/// `v_p(x)`, `None` for zero.
pub fn valuation<T: PInt>(x: &T, p: &T) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut y = x.clone();
    while (y.clone() % p.clone()).is_zero() {
        y = y / p.clone();
        v += 1;
    }
    Some(v)
}

fn pow<T: PInt>(p: &T, k: u32) -> T {
    num_traits::pow(p.clone(), k as usize)
}

/// Divides a row by the part of its content prime to `p`.
fn strip_unit_content<T: PInt>(row: &mut [T], p: &T) {
    let g = row.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let mut unit = g;
    while (unit.clone() % p.clone()).is_zero() {
        unit = unit / p.clone();
    }
    if !unit.is_one() {
        for x in row.iter_mut() {
            *x = x.clone() / unit.clone();
        }
    }
}

/// `target := u * target - q * pivot_row`, where `pivot = p^v u` and the
/// target entry is `x = q p^v`, clearing the entry at `col`.
fn eliminate<T: PInt>(target: &mut [T], pivot_row: &[T], col: usize, p: &T) {
    let piv = pivot_row[col].clone();
    let v = valuation(&piv, p).expect("pivot is nonzero");
    let pv = pow(p, v);
    let u = piv / pv.clone();
    let q = target[col].clone() / pv;
    for (t, r) in target.iter_mut().zip(pivot_row) {
        *t = u.clone() * t.clone() - q.clone() * r.clone();
    }
    strip_unit_content(target, p);
}

/// Row echelon form of a submodule of `Z_(p)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<T> {
    pub p: T,
    pub m: usize,
    /// Nonzero rows; row `k` has its leading entry in column `pivots[k]` and
    /// zeros before it, and later rows are zero in earlier pivot columns.
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
}

impl<T: PInt> Echelon<T> {
    pub fn new(p: &T, m: usize, gens: &[Vec<T>]) -> Self {
        let mut work: Vec<Vec<T>> = gens
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        for r in work.iter_mut() {
            strip_unit_content(r, p);
        }
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..m {
            // the smallest valuation in this column becomes the pivot
            let best = work
                .iter()
                .enumerate()
                .filter_map(|(k, r)| valuation(&r[col], p).map(|v| (v, k)))
                .min();
            let Some((_, k)) = best else { continue };
            let pivot = work.swap_remove(k);
            for r in work.iter_mut() {
                if !r[col].is_zero() {
                    eliminate(r, &pivot, col, p);
                }
            }
            work.retain(|r| r.iter().any(|x| !x.is_zero()));
            rows.push(pivot);
            pivots.push(col);
        }
        Self {
            p: p.clone(),
            m,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the rows; returns the remainder and the coefficients
    /// `c` with `unit * v = Σ c_k rows_k + remainder`.
    pub fn reduce(&self, v: &[T]) -> (Vec<T>, Vec<T>) {
        let p = &self.p;
        let mut x = v.to_vec();
        let mut coeffs = vec![T::zero(); self.rows.len()];
        for (k, (row, &col)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if x[col].is_zero() {
                continue;
            }
            let vp = valuation(&row[col], p).expect("pivot nonzero");
            let vx = valuation(&x[col], p).expect("entry nonzero");
            if vx < vp {
                continue;
            }
            let pv = pow(p, vp);
            let u = row[col].clone() / pv.clone();
            let q = x[col].clone() / pv;
            for c in coeffs.iter_mut() {
                *c = c.clone() * u.clone();
            }
            coeffs[k] = coeffs[k].clone() + q.clone();
            for (t, r) in x.iter_mut().zip(row) {
                *t = u.clone() * t.clone() - q.clone() * r.clone();
            }
        }
        (x, coeffs)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).0.iter().all(Zero::is_zero)
    }
}

/// Valuations of the nonzero elementary divisors of `mat` over `Z_(p)`,
/// sorted increasingly (Smith form at `p`).
pub fn smith_valuations<T: PInt>(p: &T, mat: &[Vec<T>]) -> Vec<u32> {
    let mut a: Vec<Vec<T>> = mat.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(t) {
            for (c, x) in row.iter().enumerate().skip(t) {
                if let Some(v) = valuation(x, p) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                    }
                }
            }
        }
        let Some((v, r, c)) = best else { break };
        a.swap(t, r);
        for row in a.iter_mut() {
            row.swap(t, c);
        }
        let pivot = a[t].clone();
        for r in t + 1..rows {
            if !a[r][t].is_zero() {
                eliminate(&mut a[r], &pivot, t, p);
            }
        }
        // column operations: the pivot divides (p-locally) every entry of its row
        let pv = pow(p, v);
        let u = a[t][t].clone() / pv.clone();
        for c in t + 1..cols {
            if a[t][c].is_zero() {
                continue;
            }
            let q = a[t][c].clone() / pv.clone();
            for row in a.iter_mut() {
                let new = u.clone() * row[c].clone() - q.clone() * row[t].clone();
                row[c] = new;
            }
        }
        out.push(v);
        t += 1;
    }
    out.sort_unstable();
    out
}

/// `log_p` of the number of `x ∈ (Z/p^i)^m` with `K x = 0`, from the Smith form.
pub fn kernel_log_size<T: PInt>(p: &T, mat: &[Vec<T>], m: usize, i: u32) -> u64 {
    let vals = smith_valuations(p, mat);
    let rank = vals.len();
    vals.iter().map(|&v| v.min(i) as u64).sum::<u64>() + (m - rank) as u64 * i as u64
}
