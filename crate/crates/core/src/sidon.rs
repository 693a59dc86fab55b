//! Sidon and weak Sidon sets of integers, good pairs, and named sequences.
//!
//! Representations are unordered pairs with repetition: `2u` counts as `u + u`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted distinct integers with a provenance tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawIntSet")]
pub struct IntSet {
    values: Vec<i64>,
    tag: String,
}

#[derive(Deserialize)]
struct RawIntSet {
    values: Vec<i64>,
    #[serde(default = "custom_tag")]
    tag: String,
}

fn custom_tag() -> String {
    "custom".into()
}

impl TryFrom<RawIntSet> for IntSet {
    type Error = Error;
    fn try_from(r: RawIntSet) -> Result<Self> {
        Ok(IntSet::new(r.values).with_tag(r.tag))
    }
}

impl IntSet {
    /// Sorts and deduplicates.
    pub fn new(mut values: Vec<i64>) -> Self {
        values.sort_unstable();
        values.dedup();
        IntSet {
            values,
            tag: custom_tag(),
        }
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.tag = tag.into();
        self
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.values.binary_search(&x).is_ok()
    }

    /// Sum -> representations `(u, v)` with `u <= v`, both in increasing order.
    fn representations(&self) -> BTreeMap<i128, Vec<(i64, i64)>> {
        let mut reps: BTreeMap<i128, Vec<(i64, i64)>> = BTreeMap::new();
        for (i, &u) in self.values.iter().enumerate() {
            for &v in &self.values[i..] {
                reps.entry(u as i128 + v as i128).or_default().push((u, v));
            }
        }
        reps
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SidonKind {
    Sidon,
    WeakSidon,
    Neither,
}

/// `u + v = u' + v'` with `{u, v} != {u', v'}`, each pair sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadruple {
    pub first: (i64, i64),
    pub second: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SidonReport {
    pub kind: SidonKind,
    /// Breaks the Sidon property (present unless `kind` is `Sidon`).
    pub not_sidon: Option<Quadruple>,
    /// Breaks the weak Sidon property (present iff `kind` is `Neither`).
    pub not_weak_sidon: Option<Quadruple>,
}

pub fn sidon_class(u: &IntSet) -> Result<SidonReport> {
    if u.len() < 2 {
        return Err(Error::TooSmall {
            need: 2,
            got: u.len(),
        });
    }
    let quad = |first, second| Quadruple { first, second };
    let mut not_sidon = None;
    let mut not_weak_sidon = None;
    for reps in u.representations().into_values() {
        if reps.len() < 2 {
            continue;
        }
        not_sidon.get_or_insert(quad(reps[0], reps[1]));
        // weak Sidon allows any number of doubles but only one proper pair per sum
        let proper: Vec<_> = reps.iter().filter(|(a, b)| a != b).collect();
        if proper.len() >= 2 && not_weak_sidon.is_none() {
            not_weak_sidon = Some(quad(*proper[0], *proper[1]));
        }
    }
    let kind = match (not_sidon, not_weak_sidon) {
        (None, _) => SidonKind::Sidon,
        (Some(_), None) => SidonKind::WeakSidon,
        _ => SidonKind::Neither,
    };
    Ok(SidonReport {
        kind,
        not_sidon,
        not_weak_sidon,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GoodPairStats {
    pub good_count: usize,
    pub total_pairs: usize,
    /// Largest number of bad pairs sharing one element of `u`.
    pub per_element_max_bad: usize,
    pub bad_pairs: Vec<(i64, i64)>,
}

/// A 2-subset `{a, b}` of `u` is good when `a + b` has no other representation in `v + v`.
pub fn good_pair_stats(u: &IntSet, v: &IntSet) -> Result<GoodPairStats> {
    if let Some(x) = u.values().iter().find(|&&x| !v.contains(x)) {
        return Err(Error::NotSubset(format!("{x} is in u but not in v")));
    }
    let reps = v.representations();
    let vals = u.values();
    let mut bad_per = vec![0usize; vals.len()];
    let mut bad_pairs = Vec::new();
    let mut total = 0;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            total += 1;
            if reps[&(vals[i] as i128 + vals[j] as i128)].len() > 1 {
                bad_pairs.push((vals[i], vals[j]));
                bad_per[i] += 1;
                bad_per[j] += 1;
            }
        }
    }
    Ok(GoodPairStats {
        good_count: total - bad_pairs.len(),
        total_pairs: total,
        per_element_max_bad: bad_per.into_iter().max().unwrap_or(0),
        bad_pairs,
    })
}

/// `F_0 = F_1 = 1`, `F_{n+2} = F_{n+1} + F_n`; `F_90` is the last that fits.
pub fn fibonacci(n: usize) -> Result<u64> {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 0..n {
        let c = a
            .checked_add(b)
            .ok_or_else(|| Error::Overflow(format!("F_{n}")))?;
        (a, b) = (b, c);
    }
    Ok(a)
}

pub const MAX_DOUBLE_REP_INDEX: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleRep {
    pub a: u64,
    /// Every representation `x + y`, `x <= y`.
    pub reps: Vec<(u64, u64)>,
}

/// All `a <= bound` with at least two representations as a sum of two
/// Fibonacci numbers. Fails with `Invariant` unless these are exactly the
/// `2F_n` (`n >= 2`) with second representation `F_{n+1} + F_{n-2}`.
pub fn fibonacci_double_reps(bound: u64) -> Result<Vec<DoubleRep>> {
    let limit = fibonacci(MAX_DOUBLE_REP_INDEX)?;
    if bound > limit {
        return Err(Error::CapExceeded {
            what: "fibonacci bound",
            needed: bound as u128,
            cap: limit as u128,
        });
    }
    // F_1, F_2, ...: the distinct values
    let fib: Vec<u64> = (1..)
        .map_while(|n| fibonacci(n).ok().filter(|&f| f <= bound))
        .collect();
    let mut reps: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for (i, &x) in fib.iter().enumerate() {
        for &y in &fib[i..] {
            if x + y <= bound {
                reps.entry(x + y).or_default().push((x, y));
            }
        }
    }
    let out: Vec<DoubleRep> = reps
        .into_iter()
        .filter(|(_, r)| r.len() >= 2)
        .map(|(a, reps)| DoubleRep { a, reps })
        .collect();

    let mut expected = Vec::new();
    for n in 2.. {
        let f = fibonacci(n)?;
        if 2 * f > bound {
            break;
        }
        let mut want = vec![(f, f), (fibonacci(n - 2)?, fibonacci(n + 1)?)];
        want.sort_unstable();
        expected.push(DoubleRep {
            a: 2 * f,
            reps: want,
        });
    }
    if out != expected {
        let first = out
            .iter()
            .zip(&expected)
            .find(|(x, y)| x != y)
            .map(|(x, _)| x.a);
        return Err(Error::Invariant(format!(
            "double representations differ from 2F_n near {first:?}"
        )));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SequenceKind {
    Powers { base: u64 },
    NPlusPower { base: u64 },
    Factorials,
    Fibonacci,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::Powers { base } => write!(f, "powers:{base}"),
            SequenceKind::NPlusPower { base } => write!(f, "nplus:{base}"),
            SequenceKind::Factorials => f.write_str("factorials"),
            SequenceKind::Fibonacci => f.write_str("fibonacci"),
        }
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    /// `powers:B`, `nplus:B`, `factorials`, `fibonacci`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = s.split_once(':').map_or((s, None), |(a, b)| (a, Some(b)));
        let base = || -> Result<u64> {
            let b: u64 = arg
                .ok_or_else(|| Error::Parse(format!("`{name}` needs a base, e.g. {name}:2")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad base in `{s}`")))?;
            if b < 2 {
                return Err(Error::Parse(format!("base must be > 1 in `{s}`")));
            }
            Ok(b)
        };
        match name {
            "powers" => Ok(SequenceKind::Powers { base: base()? }),
            "nplus" | "nPlusPower" => Ok(SequenceKind::NPlusPower { base: base()? }),
            "factorials" => Ok(SequenceKind::Factorials),
            "fibonacci" => Ok(SequenceKind::Fibonacci),
            _ => Err(Error::Parse(format!("unknown sequence `{s}`"))),
        }
    }
}

/// The first `count` distinct terms (`0! = 1!` and `F_0 = F_1` collapse).
pub fn generate(kind: SequenceKind, count: usize) -> Result<IntSet> {
    let overflow = || Error::Overflow(format!("{count} terms of {kind}"));
    let mut out: Vec<i64> = Vec::with_capacity(count);
    let mut n: u32 = 0;
    let mut acc: u64 = 1;
    while out.len() < count {
        let term = match kind {
            SequenceKind::Powers { base } => base.checked_pow(n),
            SequenceKind::NPlusPower { base } => {
                base.checked_pow(n).and_then(|p| p.checked_add(n as u64))
            }
            SequenceKind::Factorials => {
                if n > 0 {
                    acc = acc.checked_mul(n as u64).ok_or_else(overflow)?;
                }
                Some(acc)
            }
            SequenceKind::Fibonacci => fibonacci(n as usize).ok(),
        };
        let term = term
            .and_then(|t| i64::try_from(t).ok())
            .ok_or_else(overflow)?;
        if out.last() != Some(&term) {
            out.push(term);
        }
        n += 1;
    }
    Ok(IntSet::new(out).with_tag(kind.to_string()))
}
