use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{cap_check, Error, Result};
use crate::ppgroups::{pp_subgroup, CyclicProduct, FiniteAbelianGroup, PPFormula, Subgroup};
use crate::setsystem::SetSystem;

/// An atomic formula `φ(x; y)` with `|x| = m`, `|y| = n_y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Atom {
    /// `x - y ∈ ψ(A^m)` for a p.p. formula `ψ` of arity `m` (needs `n_y = m`).
    Coset(PPFormula),
    /// `(x, y) ∈ ψ(A^{m + n_y})`.
    Pp(PPFormula),
    /// `x - y ∈ H` for an explicit subgroup of `A^m` (needs `n_y = m`).
    #[serde(skip)]
    Subgroup(Subgroup),
}

impl Atom {
    /// `x = y`.
    pub fn equality(m: usize) -> Atom {
        let rows = (0..m)
            .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
            .collect();
        Atom::Coset(PPFormula {
            m,
            a: rows,
            b: Vec::new(),
        })
    }
}

/// A Boolean combination of atoms, by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Combo {
    Atom(usize),
    Not(Box<Combo>),
    And(Vec<Combo>),
    Or(Vec<Combo>),
}

impl Combo {
    fn eval(&self, atoms: &dyn Fn(usize) -> bool) -> bool {
        match self {
            Combo::Atom(k) => atoms(*k),
            Combo::Not(c) => !c.eval(atoms),
            Combo::And(cs) => cs.iter().all(|c| c.eval(atoms)),
            Combo::Or(cs) => cs.iter().any(|c| c.eval(atoms)),
        }
    }

    fn max_atom(&self) -> Option<usize> {
        match self {
            Combo::Atom(k) => Some(*k),
            Combo::Not(c) => c.max_atom(),
            Combo::And(cs) | Combo::Or(cs) => cs.iter().filter_map(Combo::max_atom).max(),
        }
    }
}

/// `Δ(x; y)`: the atoms, or the combos over them when any are given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FormulaSet {
    pub m: usize,
    pub n_y: usize,
    pub atoms: Vec<Atom>,
    #[serde(default)]
    pub combos: Vec<Combo>,
}

impl FormulaSet {
    pub fn new(m: usize, n_y: usize, atoms: Vec<Atom>, combos: Vec<Combo>) -> Result<Self> {
        let fs = Self {
            m,
            n_y,
            atoms,
            combos,
        };
        fs.validate()?;
        Ok(fs)
    }

    /// Coset atoms `x - y ∈ H_i` in one variable.
    pub fn cosets_of(subs: Vec<Subgroup>) -> Self {
        Self {
            m: 1,
            n_y: 1,
            atoms: subs.into_iter().map(Atom::Subgroup).collect(),
            combos: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::ShapeMismatch("object arity must be positive".into()));
        }
        for a in &self.atoms {
            match a {
                Atom::Coset(f) if self.n_y != self.m || f.m != self.m => {
                    return Err(Error::ShapeMismatch(
                        "coset atoms need n_y = m = arity".into(),
                    ))
                }
                Atom::Pp(f) if f.m != self.m + self.n_y => {
                    return Err(Error::ShapeMismatch(format!(
                        "pp atom has arity {}, need {}",
                        f.m,
                        self.m + self.n_y
                    )))
                }
                Atom::Subgroup(_) if self.n_y != self.m => {
                    return Err(Error::ShapeMismatch("subgroup atoms need n_y = m".into()))
                }
                _ => {}
            }
            if let Atom::Coset(f) | Atom::Pp(f) = a {
                f.validate()?;
            }
        }
        if let Some(k) = self.combos.iter().filter_map(Combo::max_atom).max() {
            if k >= self.atoms.len() {
                return Err(Error::ShapeMismatch(format!(
                    "combo uses atom {k} of {}",
                    self.atoms.len()
                )));
            }
        }
        Ok(())
    }

    /// Number of formulas in `Δ`.
    pub fn len(&self) -> usize {
        if self.combos.is_empty() {
            self.atoms.len()
        } else {
            self.combos.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// An atom reduced to coset data: `φ(a; b)` iff `labels[a] == target[b]`.
#[derive(Clone, Debug)]
struct CompiledAtom {
    labels: Vec<u32>,
    target: Vec<Option<u32>>,
}

/// A formula set evaluated on a finite group, ready for repeated counting.
///
/// For a p.p. `φ(x; y)` the set `φ(A; b)` is empty or a coset of `φ(A; 0)`,
/// so truth values only depend on the coset of `a`; counting runs over one
/// representative of each joint coset.
#[derive(Clone, Debug)]
pub struct TypeCounter {
    object_size: u64,
    param_size: u64,
    atoms: Vec<CompiledAtom>,
    combos: Vec<Combo>,
    reps: Vec<u64>,
}

impl TypeCounter {
    /// `cap` bounds `|A|^{m + n_y}`.
    pub fn new(g: &FiniteAbelianGroup, fs: &FormulaSet, cap: u64) -> Result<Self> {
        fs.validate()?;
        let am = g.power(fs.m, cap)?;
        let order = g.order() as u128;
        cap_check(
            "parameter space",
            order.saturating_pow((fs.m + fs.n_y) as u32),
            cap as u128,
        )?;
        let param_size = order.pow(fs.n_y as u32) as u64;
        let mut atoms = Vec::with_capacity(fs.atoms.len());
        for a in &fs.atoms {
            atoms.push(match a {
                Atom::Coset(f) => coset_atom(&pp_subgroup(g, fs.m, f, cap)?),
                Atom::Subgroup(h) => {
                    if h.space() != &am {
                        return Err(Error::NotASubgroup("atom subgroup is not in A^m".into()));
                    }
                    coset_atom(h)
                }
                Atom::Pp(f) => {
                    let s = pp_subgroup(g, fs.m + fs.n_y, f, cap)?;
                    pp_atom(&am, &s, param_size)
                }
            });
        }
        Ok(Self::assemble(
            am.order(),
            param_size,
            atoms,
            fs.combos.clone(),
        ))
    }

    /// Coset atoms `x - y ∈ H_i` on an arbitrary product of cyclic groups.
    pub fn from_subgroups(space: &CyclicProduct, subs: &[Subgroup]) -> Result<Self> {
        if subs.iter().any(|h| h.space() != space) {
            return Err(Error::NotASubgroup(
                "atom subgroup is not in the given space".into(),
            ));
        }
        Ok(Self::assemble(
            space.order(),
            space.order(),
            subs.iter().map(coset_atom).collect(),
            Vec::new(),
        ))
    }

    fn assemble(
        object_size: u64,
        param_size: u64,
        atoms: Vec<CompiledAtom>,
        combos: Vec<Combo>,
    ) -> Self {
        let mut seen = HashSet::new();
        let reps = (0..object_size)
            .filter(|&a| {
                seen.insert(
                    atoms
                        .iter()
                        .map(|c| c.labels[a as usize])
                        .collect::<Vec<u32>>(),
                )
            })
            .collect();
        Self {
            object_size,
            param_size,
            atoms,
            combos,
            reps,
        }
    }

    pub fn object_size(&self) -> u64 {
        self.object_size
    }

    pub fn param_size(&self) -> u64 {
        self.param_size
    }

    pub fn formula_count(&self) -> usize {
        if self.combos.is_empty() {
            self.atoms.len()
        } else {
            self.combos.len()
        }
    }

    /// Number of joint coset classes; no formula set can realize more types.
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    fn atom_truth(&self, k: usize, a: u64, b: u64) -> bool {
        let c = &self.atoms[k];
        c.target[b as usize] == Some(c.labels[a as usize])
    }

    /// `A ⊨ φ_f(a; b)`.
    pub fn truth(&self, f: usize, a: u64, b: u64) -> bool {
        if self.combos.is_empty() {
            self.atom_truth(f, a, b)
        } else {
            self.combos[f].eval(&|k| self.atom_truth(k, a, b))
        }
    }

    fn check_params(&self, params: &[u64]) -> Result<()> {
        match params.iter().find(|&&b| b >= self.param_size) {
            Some(b) => Err(Error::ShapeMismatch(format!(
                "parameter {b} outside 0..{}",
                self.param_size
            ))),
            None => Ok(()),
        }
    }

    fn type_of(&self, a: u64, params: &[u64], words: usize) -> Vec<u64> {
        let mut v = vec![0u64; words];
        let mut bit = 0;
        for f in 0..self.formula_count() {
            for &b in params {
                if self.truth(f, a, b) {
                    v[bit / 64] |= 1 << (bit % 64);
                }
                bit += 1;
            }
        }
        v
    }

    /// `|S^Δ(B)|`: distinct truth vectors `(φ, b) ↦ [A ⊨ φ(a; b)]` over `a ∈ A^m`.
    pub fn count(&self, params: &[u64]) -> Result<usize> {
        self.check_params(params)?;
        let words = (self.formula_count() * params.len()).div_ceil(64).max(1);
        let types: HashSet<Vec<u64>> = self
            .reps
            .iter()
            .map(|&a| self.type_of(a, params, words))
            .collect();
        Ok(types.len())
    }

    /// Every object with a representative of each realized type.
    pub fn types(&self, params: &[u64]) -> Result<Vec<(Vec<u64>, u64)>> {
        self.check_params(params)?;
        let words = (self.formula_count() * params.len()).div_ceil(64).max(1);
        let mut out: HashMap<Vec<u64>, u64> = HashMap::new();
        for &a in &self.reps {
            out.entry(self.type_of(a, params, words)).or_insert(a);
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort_by_key(|(_, a)| *a);
        Ok(v)
    }

    /// Distinct truth vectors among the given objects only.
    pub fn count_among(&self, objects: &[u64], params: &[u64]) -> Result<usize> {
        self.check_params(params)?;
        if let Some(a) = objects.iter().find(|&&a| a >= self.object_size) {
            return Err(Error::ShapeMismatch(format!(
                "object {a} outside 0..{}",
                self.object_size
            )));
        }
        let words = (self.formula_count() * params.len()).div_ceil(64).max(1);
        Ok(objects
            .iter()
            .map(|&a| self.type_of(a, params, words))
            .collect::<HashSet<_>>()
            .len())
    }

    /// The instances `φ(A^m; b)`, `φ ∈ Δ`, `b ∈ B`, as a set system on `A^m`.
    pub fn instance_system(&self, params: &[u64]) -> Result<SetSystem> {
        self.check_params(params)?;
        let n = self.object_size as usize;
        let mut sets = Vec::new();
        for f in 0..self.formula_count() {
            for &b in params {
                let mut s = FixedBitSet::with_capacity(n);
                s.extend((0..n).filter(|&a| self.truth(f, a as u64, b)));
                sets.push(s);
            }
        }
        SetSystem::from_bitsets(n, sets)
    }
}

fn coset_atom(h: &Subgroup) -> CompiledAtom {
    let labels = h.coset_labels();
    let target = labels.iter().map(|&l| Some(l)).collect();
    CompiledAtom { labels, target }
}

/// `s ⊆ A^m × A^{n_y}`; `s(A; 0)` gives the labels, any member `(a, b)` the target of `b`.
fn pp_atom(am: &CyclicProduct, s: &Subgroup, param_size: u64) -> CompiledAtom {
    let n = am.order();
    let mut zero_fibre = FixedBitSet::with_capacity(n as usize);
    zero_fibre.extend(s.members().ones().take_while(|&z| (z as u64) < n));
    let labels = Subgroup::from_members_unchecked(am, zero_fibre).coset_labels();
    let mut target = vec![None; param_size as usize];
    for z in s.members().ones() {
        let (a, b) = (z as u64 % n, z as u64 / n);
        target[b as usize].get_or_insert(labels[a as usize]);
    }
    CompiledAtom { labels, target }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ppgroups::DEFAULT_ELEMENT_CAP;

    fn brute_count(g: &FiniteAbelianGroup, fs: &FormulaSet, params: &[u64]) -> usize {
        // evaluate every formula on the full subgroup of A^{m + n_y}
        let order = g.order();
        let m = fs.m;
        let n_obj = order.pow(m as u32);
        let subs: Vec<Box<dyn Fn(u64, u64) -> bool>> = fs
            .atoms
            .iter()
            .map(|a| -> Box<dyn Fn(u64, u64) -> bool> {
                match a {
                    Atom::Pp(f) => {
                        let s = pp_subgroup(g, m + fs.n_y, f, DEFAULT_ELEMENT_CAP).unwrap();
                        Box::new(move |x, b| s.contains(x + n_obj * b))
                    }
                    Atom::Coset(f) => {
                        let h = pp_subgroup(g, m, f, DEFAULT_ELEMENT_CAP).unwrap();
                        Box::new(move |x, b| h.contains(h.space().sub(x, b)))
                    }
                    Atom::Subgroup(h) => {
                        let h = h.clone();
                        Box::new(move |x, b| h.contains(h.space().sub(x, b)))
                    }
                }
            })
            .collect();
        let mut seen = HashSet::new();
        for x in 0..n_obj {
            let mut v = Vec::new();
            let nf = if fs.combos.is_empty() {
                fs.atoms.len()
            } else {
                fs.combos.len()
            };
            for f in 0..nf {
                for &b in params {
                    v.push(if fs.combos.is_empty() {
                        subs[f](x, b)
                    } else {
                        fs.combos[f].eval(&|k| subs[k](x, b))
                    });
                }
            }
            seen.insert(v);
        }
        seen.len()
    }

    #[test]
    fn equality_gives_t_plus_one() {
        let g = FiniteAbelianGroup::parse("5^1,2^1").unwrap();
        let fs = FormulaSet::new(1, 1, vec![Atom::equality(1)], vec![]).unwrap();
        let c = TypeCounter::new(&g, &fs, DEFAULT_ELEMENT_CAP).unwrap();
        for t in 0..10u64 {
            let b: Vec<u64> = (0..t).collect();
            assert_eq!(c.count(&b).unwrap(), t as usize + 1);
        }
        assert_eq!(c.count(&(0..10).collect::<Vec<_>>()).unwrap(), 10);
    }

    #[test]
    fn torsion_coset_over_z4() {
        // x - y ∈ {0, 2} with B = {0, 1}: the two cosets of 2Z(4) give two types
        let g = FiniteAbelianGroup::parse("2^2").unwrap();
        let fs = FormulaSet::new(1, 1, vec![Atom::Coset(PPFormula::tau(2, 1))], vec![]).unwrap();
        let c = TypeCounter::new(&g, &fs, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(c.count(&[0, 1]).unwrap(), brute_count(&g, &fs, &[0, 1]));
        assert_eq!(c.count(&[0, 1]).unwrap(), 2);
        assert_eq!(c.count(&[0, 2]).unwrap(), 2);
    }

    #[test]
    fn pp_atoms_with_two_parameters_match_brute_force() {
        let g = FiniteAbelianGroup::parse("2^1,3^1").unwrap();
        // 3(x - y1) = 0, 2(x - y2) = 0, and their disjunction
        let a0 = Atom::Pp(PPFormula::new(3, vec![vec![3, -3, 0]], vec![]).unwrap());
        let a1 = Atom::Pp(PPFormula::new(3, vec![vec![2, 0, -2]], vec![]).unwrap());
        let fs = FormulaSet::new(
            1,
            2,
            vec![a0, a1],
            vec![Combo::Or(vec![Combo::Atom(0), Combo::Atom(1)])],
        )
        .unwrap();
        let c = TypeCounter::new(&g, &fs, DEFAULT_ELEMENT_CAP).unwrap();
        for params in [vec![0u64], vec![1, 7, 20], vec![3, 5, 11, 30]] {
            assert_eq!(c.count(&params).unwrap(), brute_count(&g, &fs, &params));
        }
    }

    #[test]
    fn existential_atoms_match_brute_force() {
        // ∃z: x - y = 2z over Z(2) + Z(8)
        let g = FiniteAbelianGroup::parse("2^1,2^3").unwrap();
        let f = PPFormula::new(2, vec![vec![1, -1]], vec![vec![2]]).unwrap();
        let fs = FormulaSet::new(
            1,
            1,
            vec![Atom::Pp(f), Atom::Coset(PPFormula::tau(2, 1))],
            vec![],
        )
        .unwrap();
        let c = TypeCounter::new(&g, &fs, DEFAULT_ELEMENT_CAP).unwrap();
        for params in [vec![1u64, 2, 3], vec![0, 5, 9, 14]] {
            assert_eq!(c.count(&params).unwrap(), brute_count(&g, &fs, &params));
        }
    }

    #[test]
    fn shape_errors() {
        assert!(FormulaSet::new(1, 2, vec![Atom::Coset(PPFormula::tau(2, 1))], vec![]).is_err());
        assert!(FormulaSet::new(
            1,
            1,
            vec![Atom::Coset(PPFormula::tau(2, 1))],
            vec![Combo::Atom(3)]
        )
        .is_err());
    }
}
