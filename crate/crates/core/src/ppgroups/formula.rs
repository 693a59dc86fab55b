use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::abelian::{tuple_parts, FiniteAbelianGroup};
use super::subgroup::Subgroup;
use crate::error::{cap_check, Error, Result};

/// `∃y (A x = B y)` with `A` of shape `k x m` and `B` of shape `k x n'`.
///
/// JSON: `{"m":2,"A":[[..]],"B":[[..]]}`, `{"tau":[p,d]}` or `{"delta":[p,d,d']}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFormula")]
pub struct PPFormula {
    pub m: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum RawFormula {
    Tau {
        tau: (u64, u32),
    },
    Delta {
        delta: (u64, u32, u32),
    },
    Matrix {
        m: usize,
        #[serde(rename = "A", alias = "a")]
        a: Vec<Vec<i64>>,
        #[serde(rename = "B", alias = "b", default)]
        b: Vec<Vec<i64>>,
    },
}

impl TryFrom<RawFormula> for PPFormula {
    type Error = Error;
    fn try_from(r: RawFormula) -> Result<Self> {
        let checked = |p: u64, d: u32| {
            i64::try_from(p)
                .ok()
                .and_then(|p| p.checked_pow(d))
                .ok_or_else(|| Error::Overflow(format!("{p}^{d}")))
        };
        match r {
            RawFormula::Tau { tau: (p, d) } => {
                checked(p, d)?;
                Ok(Self::tau(p, d))
            }
            RawFormula::Delta { delta: (p, d, d2) } => {
                checked(p, d.max(d2))?;
                Ok(Self::delta(p, d, d2))
            }
            RawFormula::Matrix { m, a, b } => Self::new(m, a, b),
        }
    }
}

impl PPFormula {
    pub fn new(m: usize, a: Vec<Vec<i64>>, b: Vec<Vec<i64>>) -> Result<Self> {
        let f = Self { m, a, b };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.iter().any(|r| r.len() != self.m) {
            return Err(Error::ShapeMismatch(format!(
                "rows of A must have length {}",
                self.m
            )));
        }
        if !self.b.is_empty() && self.b.len() != self.a.len() {
            return Err(Error::ShapeMismatch(
                "A and B need the same number of rows".into(),
            ));
        }
        if let Some(w) = self.b.first().map(Vec::len) {
            if self.b.iter().any(|r| r.len() != w) {
                return Err(Error::ShapeMismatch("ragged B".into()));
            }
        }
        Ok(())
    }

    /// `p^d x = 0`.
    pub fn tau(p: u64, d: u32) -> Self {
        Self {
            m: 1,
            a: vec![vec![(p as i64).pow(d)]],
            b: vec![],
        }
    }

    /// `p^{d'} | p^d x`.
    pub fn delta(p: u64, d: u32, d2: u32) -> Self {
        Self {
            m: 1,
            a: vec![vec![(p as i64).pow(d)]],
            b: vec![vec![(p as i64).pow(d2)]],
        }
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    fn existential_width(&self) -> usize {
        self.b.first().map_or(0, Vec::len)
    }
}

/// `{B y : y}` inside `A^k`, closed from the column-times-unit generators.
fn image_of_b(g: &FiniteAbelianGroup, f: &PPFormula, cap: u64) -> Result<Subgroup> {
    let k = f.rows();
    let ak = g.power(k, cap)?;
    let c = g.space().components();
    let mut gens = Vec::new();
    for col in 0..f.existential_width() {
        for unit in 0..c {
            // B_{.,col} * e_unit, spread across the k copies
            let mut residues = vec![0i64; k * c];
            for row in 0..k {
                residues[row * c + unit] = f.b[row][col];
            }
            gens.push(ak.encode_signed(&residues));
        }
    }
    Ok(Subgroup::generated(&ak, gens))
}

/// `{ a ∈ A^m : ∃b  A a = B b }`.
pub fn pp_subgroup(g: &FiniteAbelianGroup, m: usize, f: &PPFormula, cap: u64) -> Result<Subgroup> {
    f.validate()?;
    if f.m != m {
        return Err(Error::ShapeMismatch(format!(
            "formula has arity {}, asked for {m}",
            f.m
        )));
    }
    let am = g.power(m, cap)?;
    let k = f.rows();
    let image = image_of_b(g, f, cap)?;
    let ak = image.space().clone();
    let c = g.space().components();
    let order = g.order();
    let mut members = FixedBitSet::with_capacity(am.order() as usize);
    cap_check("tuple elements", am.order() as u128, cap as u128)?;
    for x in 0..am.order() {
        let parts = tuple_parts(order, m, x);
        let res: Vec<Vec<u64>> = parts.iter().map(|&a| g.space().decode(a)).collect();
        let mut out = vec![0i64; k * c];
        for row in 0..k {
            for comp in 0..c {
                let q = g.space().moduli()[comp] as i128;
                let mut acc: i128 = 0;
                for (col, r) in res.iter().enumerate() {
                    acc += f.a[row][col] as i128 * r[comp] as i128;
                }
                out[row * c + comp] = acc.rem_euclid(q) as i64;
            }
        }
        if image.contains(ak.encode_signed(&out)) {
            members.insert(x as usize);
        }
    }
    Ok(Subgroup::from_members_unchecked(&am, members))
}
