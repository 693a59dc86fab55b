use serde::{Deserialize, Serialize};

use crate::error::{cap_check, Error, Result};

/// Default element cap for a group (`m = 1`).
pub const DEFAULT_ELEMENT_CAP: u64 = 1 << 20;
/// Default element cap for tuple spaces `A^m`, `m > 1`.
pub const DEFAULT_TUPLE_CAP: u64 = 1 << 16;

/// `Z(p^e)^mult`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub p: u64,
    pub e: u32,
    pub mult: u32,
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// A product of cyclic groups `Z(n_0) x ... x Z(n_{c-1})`, elements indexed in
/// mixed radix with component 0 least significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicProduct {
    moduli: Vec<u64>,
    strides: Vec<u64>,
    order: u64,
}

impl CyclicProduct {
    pub fn new(moduli: Vec<u64>, cap: u64) -> Result<Self> {
        let mut order: u128 = 1;
        let mut strides = Vec::with_capacity(moduli.len());
        for &q in &moduli {
            if q == 0 {
                return Err(Error::InvalidGroup("zero modulus".into()));
            }
            strides.push(order as u64);
            order = order.saturating_mul(q as u128);
            cap_check("group elements", order, cap as u128)?;
        }
        Ok(Self {
            moduli,
            strides,
            order: order as u64,
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn components(&self) -> usize {
        self.moduli.len()
    }

    pub fn decode(&self, x: u64) -> Vec<u64> {
        self.moduli
            .iter()
            .zip(&self.strides)
            .map(|(&q, &s)| (x / s) % q)
            .collect()
    }

    pub fn encode(&self, residues: &[u64]) -> u64 {
        residues
            .iter()
            .zip(&self.moduli)
            .zip(&self.strides)
            .map(|((&r, &q), &s)| (r % q) * s)
            .sum()
    }

    /// Encodes an integer vector, reducing each coordinate mod its modulus.
    pub fn encode_signed(&self, v: &[i64]) -> u64 {
        v.iter()
            .zip(&self.moduli)
            .zip(&self.strides)
            .map(|((&r, &q), &s)| (r.rem_euclid(q as i64) as u64) * s)
            .sum()
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let mut out = 0;
        for (&q, &s) in self.moduli.iter().zip(&self.strides) {
            let a = (x / s) % q;
            let b = (y / s) % q;
            out += ((a + b) % q) * s;
        }
        out
    }

    pub fn neg(&self, x: u64) -> u64 {
        let mut out = 0;
        for (&q, &s) in self.moduli.iter().zip(&self.strides) {
            let a = (x / s) % q;
            out += ((q - a) % q) * s;
        }
        out
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        self.add(x, self.neg(y))
    }

    pub fn scale(&self, k: i64, x: u64) -> u64 {
        let mut out = 0;
        for (&q, &s) in self.moduli.iter().zip(&self.strides) {
            let a = ((x / s) % q) as i128;
            out += ((a * k as i128).rem_euclid(q as i128) as u64) * s;
        }
        out
    }

    /// The generator of component `c`.
    pub fn unit(&self, c: usize) -> u64 {
        if self.moduli[c] == 1 {
            0
        } else {
            self.strides[c]
        }
    }
}

/// A finite abelian group `⊕ Z(p^e)^mult` with canonically sorted factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<Factor>,
    space: CyclicProduct,
    /// `(p, e)` of every cyclic component, in index order.
    comps: Vec<(u64, u32)>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        Self::with_cap(factors, DEFAULT_ELEMENT_CAP)
    }

    /// Validates primes and exponents, merges repeated `(p, e)` and sorts.
    pub fn with_cap(mut factors: Vec<Factor>, cap: u64) -> Result<Self> {
        for f in &factors {
            if !is_prime(f.p) {
                return Err(Error::InvalidGroup(format!("{} is not prime", f.p)));
            }
            if f.e == 0 || f.mult == 0 {
                return Err(Error::InvalidGroup(format!(
                    "factor {}^{} x{} is degenerate",
                    f.p, f.e, f.mult
                )));
            }
        }
        factors.sort_by_key(|f| (f.p, f.e));
        let mut merged: Vec<Factor> = Vec::new();
        for f in factors {
            match merged.last_mut() {
                Some(g) if g.p == f.p && g.e == f.e => g.mult += f.mult,
                _ => merged.push(f),
            }
        }
        let mut moduli = Vec::new();
        let mut comps = Vec::new();
        for f in &merged {
            let q =
                f.p.checked_pow(f.e)
                    .ok_or_else(|| Error::Overflow(format!("computing {}^{}", f.p, f.e)))?;
            for _ in 0..f.mult {
                moduli.push(q);
                comps.push((f.p, f.e));
            }
        }
        let space = CyclicProduct::new(moduli, cap)?;
        Ok(Self {
            factors: merged,
            space,
            comps,
        })
    }

    /// `⊕_k Z(p^{λ_k})`.
    pub fn from_exponents(p: u64, lambda: &[u32]) -> Result<Self> {
        Self::new(lambda.iter().map(|&e| Factor { p, e, mult: 1 }).collect())
    }

    /// Parses `"2^1,2^3,3^2x4"` (`x` gives a multiplicity).
    pub fn parse(spec: &str) -> Result<Self> {
        Self::parse_with_cap(spec, DEFAULT_ELEMENT_CAP)
    }

    pub fn parse_with_cap(spec: &str, cap: u64) -> Result<Self> {
        let mut factors = Vec::new();
        for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (base, mult) = match tok.split_once('x') {
                Some((b, m)) => (
                    b,
                    m.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in {tok}")))?,
                ),
                None => (tok, 1),
            };
            let (p, e) = match base.split_once('^') {
                Some((p, e)) => (
                    p,
                    e.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok}")))?,
                ),
                None => (base, 1),
            };
            let p = p
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad prime in {tok}")))?;
            factors.push(Factor { p, e, mult });
        }
        if factors.is_empty() {
            return Err(Error::EmptyInput);
        }
        Self::with_cap(factors, cap)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn space(&self) -> &CyclicProduct {
        &self.space
    }

    pub fn order(&self) -> u64 {
        self.space.order()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().map(|f| f.p).collect();
        ps.dedup();
        ps
    }

    /// `(p, e)` of each cyclic component in index order.
    pub fn component_types(&self) -> &[(u64, u32)] {
        &self.comps
    }

    /// Largest exponent at `p` (0 if `p` does not divide the order).
    pub fn exponent_at(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .filter(|f| f.p == p)
            .map(|f| f.e)
            .max()
            .unwrap_or(0)
    }

    /// Distinct exponents at `p`, increasing.
    pub fn exponents_at(&self, p: u64) -> Vec<u32> {
        self.factors
            .iter()
            .filter(|f| f.p == p)
            .map(|f| f.e)
            .collect()
    }

    /// The `p`-primary component as a group of its own.
    pub fn primary_component(&self, p: u64) -> Result<Self> {
        let fs: Vec<Factor> = self.factors.iter().copied().filter(|f| f.p == p).collect();
        if fs.is_empty() {
            return Err(Error::InvalidGroup(format!(
                "{p} does not divide the order"
            )));
        }
        Self::new(fs)
    }

    /// `A^m` as a cyclic product, copy `t` occupying components `t*c..(t+1)*c`.
    pub fn power(&self, m: usize, cap: u64) -> Result<CyclicProduct> {
        let moduli: Vec<u64> = (0..m)
            .flat_map(|_| self.space.moduli().iter().copied())
            .collect();
        CyclicProduct::new(moduli, cap)
    }

    /// `A ⊕ B`, canonically re-sorted.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let mut fs = self.factors.clone();
        fs.extend_from_slice(&other.factors);
        Self::new(fs)
    }

    pub fn describe(&self) -> String {
        self.factors
            .iter()
            .map(|f| {
                if f.mult == 1 {
                    format!("Z({}^{})", f.p, f.e)
                } else {
                    format!("Z({}^{})^{}", f.p, f.e, f.mult)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Index of the element of `A^m` whose copies are `parts` (elements of `A`).
pub fn tuple_index(order: u64, parts: &[u64]) -> u64 {
    parts.iter().rev().fold(0, |acc, &x| acc * order + x)
}

/// Inverse of [`tuple_index`].
pub fn tuple_parts(order: u64, m: usize, mut x: u64) -> Vec<u64> {
    (0..m)
        .map(|_| {
            let r = x % order;
            x /= order;
            r
        })
        .collect()
}
