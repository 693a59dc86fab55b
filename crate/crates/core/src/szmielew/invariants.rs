use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::cardinal::Cardinal;
use crate::error::{Error, Result};
use crate::ppgroups::{is_prime, Factor, FiniteAbelianGroup};

/// `card` copies of `Z(p^n)`, i.e. a contribution to `α_{p,n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEntry {
    pub p: u64,
    pub n: u32,
    pub card: Cardinal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub p: u64,
    pub card: Cardinal,
}

/// `card` copies of `Z(p^n)` for every `n >= from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaTail {
    pub p: u64,
    pub from: u32,
    pub card: Cardinal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentEntry {
    pub n: u32,
    pub card: Cardinal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailEntry {
    pub from: u32,
    pub card: Cardinal,
}

/// A summand present at every prime.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimeTemplate {
    #[serde(default)]
    pub alpha: Vec<ExponentEntry>,
    #[serde(default)]
    pub alpha_tail: Vec<TailEntry>,
    #[serde(default)]
    pub beta: Cardinal,
    #[serde(default)]
    pub gamma: Cardinal,
}

/// Invariants of `⊕_p (⊕_n Z(p^n)^(α_{p,n-1}) ⊕ Z(p^∞)^(β_p) ⊕ Z_(p)^(γ_p)) ⊕ Q^(δ)`.
///
/// Unlisted entries are zero; repeated entries add. `alpha` is indexed by the
/// exponent `n >= 1` of `Z(p^n)`:
///
/// | summand   | entry        | Ulm index |
/// |-----------|--------------|-----------|
/// | `Z(p)`    | `n = 1`      | `α_{p,0}` |
/// | `Z(p^2)`  | `n = 2`      | `α_{p,1}` |
/// | `Z(p^n)`  | `n`          | `α_{p,n-1}` |
///
/// `alphaTail` and `allPrimes` extend the finite encoding to groups with
/// unbounded `p`-torsion or nonzero parts at infinitely many primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SzmielewInvariants {
    #[serde(default)]
    pub alpha: Vec<AlphaEntry>,
    #[serde(default)]
    pub beta: Vec<PrimeEntry>,
    #[serde(default)]
    pub gamma: Vec<PrimeEntry>,
    #[serde(default)]
    pub delta: Cardinal,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha_tail: Vec<AlphaTail>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_primes: Option<PrimeTemplate>,
}

impl SzmielewInvariants {
    /// Finite-exponent invariants from `(p, n, card)` triples.
    pub fn from_alpha(entries: &[(u64, u32, Cardinal)]) -> Self {
        Self {
            alpha: entries
                .iter()
                .map(|&(p, n, card)| AlphaEntry { p, n, card })
                .collect(),
            ..Self::default()
        }
    }

    /// Invariants of a finite group.
    pub fn of_group(g: &FiniteAbelianGroup) -> Self {
        Self::from_alpha(
            &g.factors()
                .iter()
                .map(|f| (f.p, f.e, Cardinal::Finite(f.mult as u64)))
                .collect::<Vec<_>>(),
        )
    }

    pub fn with_alpha(mut self, p: u64, n: u32, card: Cardinal) -> Self {
        self.alpha.push(AlphaEntry { p, n, card });
        self
    }

    pub fn with_beta(mut self, p: u64, card: Cardinal) -> Self {
        self.beta.push(PrimeEntry { p, card });
        self
    }

    pub fn with_gamma(mut self, p: u64, card: Cardinal) -> Self {
        self.gamma.push(PrimeEntry { p, card });
        self
    }

    pub fn with_delta(mut self, card: Cardinal) -> Self {
        self.delta = card;
        self
    }

    pub fn with_tail(mut self, p: u64, from: u32, card: Cardinal) -> Self {
        self.alpha_tail.push(AlphaTail { p, from, card });
        self
    }

    pub fn with_all_primes(mut self, t: PrimeTemplate) -> Self {
        self.all_primes = Some(t);
        self
    }

    /// The finite group with one copy of `Z(p^n)` for every nonzero `α_{p,n-1}`.
    pub fn finite_realization(&self, cap: u64) -> Result<FiniteAbelianGroup> {
        let model = Model::new(self)?;
        if !model.has_finite_exponent() {
            return Err(Error::NotFiniteExponent(
                "unbounded torsion or a non-torsion summand".into(),
            ));
        }
        let factors = model
            .primes
            .iter()
            .flat_map(|(&p, part)| {
                part.alpha
                    .iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(&n, _)| (p, n))
            })
            .map(|(p, e)| Factor { p, e, mult: 1 })
            .collect();
        FiniteAbelianGroup::with_cap(factors, cap)
    }
}

/// Data at one prime after merging repeated entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct PrimePart {
    pub alpha: BTreeMap<u32, Cardinal>,
    /// `from -> card`: `card` more copies of `Z(p^n)` for each `n >= from`.
    pub tails: BTreeMap<u32, Cardinal>,
    pub beta: Cardinal,
    pub gamma: Cardinal,
}

/// `U_{>=ℵ0}(p)` in exponent form, or `None` when it is infinite.
pub(crate) type AlephSet = Option<BTreeSet<u64>>;

impl PrimePart {
    fn merge(&mut self, other: &PrimePart) {
        for (&n, &c) in &other.alpha {
            add_at(&mut self.alpha, n, c);
        }
        for (&n, &c) in &other.tails {
            add_at(&mut self.tails, n, c);
        }
        self.beta = self.beta.add(other.beta);
        self.gamma = self.gamma.add(other.gamma);
    }

    fn prune(&mut self) {
        self.alpha.retain(|_, c| !c.is_zero());
        self.tails.retain(|_, c| !c.is_zero());
    }

    pub fn alpha_at(&self, n: u32) -> Cardinal {
        let tail: Cardinal = self.tails.range(..=n).map(|(_, &c)| c).sum();
        self.alpha.get(&n).copied().unwrap_or_default().add(tail)
    }

    /// Infinitely many `α_{p,n}` are nonzero.
    pub fn unbounded(&self) -> bool {
        !self.tails.is_empty()
    }

    pub fn u_aleph0(&self) -> AlephSet {
        let eventual: Cardinal = self.tails.values().copied().sum();
        if eventual.is_infinite() {
            return None;
        }
        // tails only add, so below the last breakpoint a finite eventual value
        // leaves ℵ0 only at explicit entries
        Some(
            self.alpha
                .keys()
                .filter(|&&n| self.alpha_at(n).is_infinite())
                .map(|&n| n as u64)
                .collect(),
        )
    }

    fn alpha_sum(&self) -> Cardinal {
        if self.unbounded() {
            Cardinal::Aleph0
        } else {
            self.alpha.values().copied().sum()
        }
    }

    /// `dim A[p] = Σ α + β`.
    pub fn socle_dim(&self) -> Cardinal {
        self.alpha_sum().add(self.beta)
    }

    /// `dim A/pA = Σ α + γ`.
    pub fn top_dim(&self) -> Cardinal {
        self.alpha_sum().add(self.gamma)
    }

    pub fn is_singular(&self) -> bool {
        self.socle_dim().is_infinite() || self.top_dim().is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_empty()
            && self.tails.is_empty()
            && self.beta.is_zero()
            && self.gamma.is_zero()
    }

    pub fn is_finite_group(&self) -> bool {
        !self.unbounded()
            && self.alpha.values().all(|c| !c.is_infinite())
            && self.beta.is_zero()
            && self.gamma.is_zero()
    }

    /// Bounded `p`-torsion with no `Z(p^∞)` or `Z_(p)` summand.
    pub fn has_finite_exponent(&self) -> bool {
        !self.unbounded() && self.beta.is_zero() && self.gamma.is_zero()
    }

    /// `{n : α_{p,n-1} != 0}` for a bounded part.
    pub fn support(&self) -> BTreeSet<u64> {
        self.alpha.keys().map(|&n| n as u64).collect()
    }
}

fn add_at(map: &mut BTreeMap<u32, Cardinal>, n: u32, c: Cardinal) {
    let e = map.entry(n).or_default();
    *e = e.add(c);
}

/// Validated, merged invariants. Explicit primes already include the template.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Model {
    pub primes: BTreeMap<u64, PrimePart>,
    /// The part at every prime not in `primes`; zero when absent.
    pub template: PrimePart,
    pub delta: Cardinal,
}

impl Model {
    pub fn new(s: &SzmielewInvariants) -> Result<Self> {
        let check_p = |p: u64| {
            if is_prime(p) {
                Ok(())
            } else {
                Err(Error::InvalidGroup(format!("{p} is not prime")))
            }
        };
        let check_n = |n: u32| {
            if n >= 1 {
                Ok(())
            } else {
                Err(Error::InvalidGroup("exponents start at 1".into()))
            }
        };
        let mut primes: BTreeMap<u64, PrimePart> = BTreeMap::new();
        for a in &s.alpha {
            check_p(a.p)?;
            check_n(a.n)?;
            add_at(&mut primes.entry(a.p).or_default().alpha, a.n, a.card);
        }
        for t in &s.alpha_tail {
            check_p(t.p)?;
            check_n(t.from)?;
            add_at(&mut primes.entry(t.p).or_default().tails, t.from, t.card);
        }
        for b in &s.beta {
            check_p(b.p)?;
            let part = primes.entry(b.p).or_default();
            part.beta = part.beta.add(b.card);
        }
        for g in &s.gamma {
            check_p(g.p)?;
            let part = primes.entry(g.p).or_default();
            part.gamma = part.gamma.add(g.card);
        }
        let mut template = PrimePart::default();
        if let Some(t) = &s.all_primes {
            for a in &t.alpha {
                check_n(a.n)?;
                add_at(&mut template.alpha, a.n, a.card);
            }
            for a in &t.alpha_tail {
                check_n(a.from)?;
                add_at(&mut template.tails, a.from, a.card);
            }
            template.beta = t.beta;
            template.gamma = t.gamma;
        }
        template.prune();
        for part in primes.values_mut() {
            part.merge(&template);
            part.prune();
        }
        primes.retain(|_, part| !part.is_zero());
        Ok(Self {
            primes,
            template,
            delta: s.delta,
        })
    }

    pub fn has_finite_exponent(&self) -> bool {
        self.template.is_zero()
            && self.delta.is_zero()
            && self.primes.values().all(PrimePart::has_finite_exponent)
    }

    pub fn is_finite_group(&self) -> bool {
        self.template.is_zero()
            && self.delta.is_zero()
            && self.primes.values().all(PrimePart::is_finite_group)
    }

    fn parts(&self) -> impl Iterator<Item = &PrimePart> {
        self.primes.values().chain(std::iter::once(&self.template))
    }

    /// Rewrites to the elementarily equivalent strict form; returns the
    /// conditions that failed.
    pub fn normalize(&mut self) -> Vec<String> {
        let mut notes = Vec::new();
        let mut fix_unbounded = |label: String, part: &mut PrimePart| {
            if part.unbounded() && !(part.beta.is_zero() && part.gamma.is_zero()) {
                notes.push(format!(
                    "unbounded torsion at {label} forces beta = gamma = 0"
                ));
                part.beta = Cardinal::ZERO;
                part.gamma = Cardinal::ZERO;
            }
        };
        for (p, part) in self.primes.iter_mut() {
            fix_unbounded(format!("p = {p}"), part);
        }
        fix_unbounded("every prime".into(), &mut self.template);

        let kills_q = self
            .parts()
            .any(|part| !part.beta.is_zero() || !part.gamma.is_zero() || part.unbounded())
            || !self.template.alpha.is_empty();
        if kills_q {
            if !self.delta.is_zero() {
                notes.push(
                    "delta must be 0 in the presence of Z(p^inf), Z_(p) or infinitely many alpha"
                        .into(),
                );
                self.delta = Cardinal::ZERO;
            }
        } else if let Cardinal::Finite(k) = self.delta {
            if k > 0 {
                notes.push(format!("delta = {k} replaced by aleph0"));
                self.delta = Cardinal::Aleph0;
            }
        }
        notes
    }

    pub fn to_invariants(&self) -> SzmielewInvariants {
        let mut s = SzmielewInvariants {
            delta: self.delta,
            ..Default::default()
        };
        let t = &self.template;
        for (&p, part) in &self.primes {
            // store only the excess over the template
            for (&n, &c) in &part.alpha {
                if let Some(rest) = excess(c, t.alpha.get(&n).copied().unwrap_or_default()) {
                    s.alpha.push(AlphaEntry { p, n, card: rest });
                }
            }
            for (&from, &c) in &part.tails {
                if let Some(rest) = excess(c, t.tails.get(&from).copied().unwrap_or_default()) {
                    s.alpha_tail.push(AlphaTail {
                        p,
                        from,
                        card: rest,
                    });
                }
            }
            if let Some(rest) = excess(part.beta, t.beta) {
                s.beta.push(PrimeEntry { p, card: rest });
            }
            if let Some(rest) = excess(part.gamma, t.gamma) {
                s.gamma.push(PrimeEntry { p, card: rest });
            }
        }
        if !t.is_zero() {
            s.all_primes = Some(PrimeTemplate {
                alpha: t
                    .alpha
                    .iter()
                    .map(|(&n, &card)| ExponentEntry { n, card })
                    .collect(),
                alpha_tail: t
                    .tails
                    .iter()
                    .map(|(&from, &card)| TailEntry { from, card })
                    .collect(),
                beta: t.beta,
                gamma: t.gamma,
            });
        }
        s
    }
}

/// `total - base` when nonzero; `ℵ0 - ℵ0` is taken as `0`.
fn excess(total: Cardinal, base: Cardinal) -> Option<Cardinal> {
    let rest = match (total, base) {
        (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a - b),
        (Cardinal::Aleph0, Cardinal::Finite(_)) => Cardinal::Aleph0,
        _ => Cardinal::ZERO,
    };
    (!rest.is_zero()).then_some(rest)
}
