//! JSON shapes for posets, lattices and groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Poset};
use crate::ppgroups::{Factor, FiniteAbelianGroup};

/// `{"n": 4, "leq": [[0,1],...], "labels": [...]}`; `leq` may be any
/// generating set of pairs `i <= j`. Adjacency rows go under `"rows"`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub leq: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl PosetJson {
    pub fn to_poset(&self) -> Result<Poset> {
        let p = match &self.rows {
            Some(_) if !self.leq.is_empty() => {
                return Err(Error::Parse("give either `leq` or `rows`, not both".into()));
            }
            Some(rows) => {
                if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
                    return Err(Error::ShapeMismatch(format!(
                        "rows must form a {0} x {0} matrix",
                        self.n
                    )));
                }
                // the diagonal is implied
                Poset::from_fn(self.n, |i, j| i == j || rows[i][j] != 0)?
            }
            None => Poset::from_generating_pairs(self.n, self.leq.iter().copied())?,
        };
        match &self.labels {
            Some(l) => p.with_labels(l.clone()),
            None => Ok(p),
        }
    }

    /// Cover pairs only.
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson {
            n: p.len(),
            leq: p.cover_pairs(),
            rows: None,
            labels: p.labels().map(<[String]>::to_vec),
        }
    }
}

pub fn parse_poset(json: &str) -> Result<Poset> {
    serde_json::from_str::<PosetJson>(json)
        .map_err(|e| Error::Parse(e.to_string()))?
        .to_poset()
}

pub fn parse_lattice(json: &str) -> Result<Lattice> {
    Lattice::from_poset(parse_poset(json)?)
}

#[derive(Deserialize)]
struct FactorJson {
    p: u64,
    e: u32,
    #[serde(default = "one")]
    mult: u32,
}

fn one() -> u32 {
    1
}

/// `{"factors": [{"p":2,"e":3,"mult":1},...]}`, `mult` defaulting to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupJson {
    pub factors: Vec<Factor>,
}

pub fn parse_group(json: &str, cap: u64) -> Result<FiniteAbelianGroup> {
    #[derive(Deserialize)]
    struct Raw {
        factors: Vec<FactorJson>,
    }
    let raw: Raw = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    if raw.factors.is_empty() {
        return Err(Error::EmptyInput);
    }
    FiniteAbelianGroup::with_cap(
        raw.factors
            .into_iter()
            .map(|f| Factor {
                p: f.p,
                e: f.e,
                mult: f.mult,
            })
            .collect(),
        cap,
    )
}

pub fn group_json(g: &FiniteAbelianGroup) -> GroupJson {
    GroupJson {
        factors: g.factors().to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip() {
        let p = parse_poset(r#"{"n":3,"leq":[[0,1],[1,2]],"labels":["a","b","c"]}"#).unwrap();
        assert!(p.leq(0, 2));
        let back = serde_json::to_string(&PosetJson::from_poset(&p)).unwrap();
        assert_eq!(
            back,
            r#"{"n":3,"leq":[[0,1],[1,2]],"labels":["a","b","c"]}"#
        );
    }

    #[test]
    fn adjacency_rows() {
        let p = parse_poset(r#"{"n":2,"rows":[[1,1],[0,1]]}"#).unwrap();
        assert!(p.leq(0, 1) && !p.leq(1, 0));
        assert!(parse_poset(r#"{"n":2,"rows":[[1,1],[1,1]]}"#).is_err());
        assert!(parse_poset(r#"{"n":2,"rows":[[1,1]]}"#).is_err());
    }

    #[test]
    fn cycles_and_lattices() {
        assert!(parse_poset(r#"{"n":2,"leq":[[0,1],[1,0]]}"#).is_err());
        // two incomparable points have no join
        assert!(parse_lattice(r#"{"n":2}"#).is_err());
        assert_eq!(
            parse_lattice(r#"{"n":4,"leq":[[0,1],[0,2],[1,3],[2,3]]}"#)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn groups() {
        let g = parse_group(
            r#"{"factors":[{"p":2,"e":3},{"p":2,"e":1,"mult":2}]}"#,
            1 << 20,
        )
        .unwrap();
        assert_eq!(g.order(), 32);
        assert!(parse_group(r#"{"factors":[]}"#, 1 << 20).is_err());
        assert!(parse_group(r#"{"factors":[{"p":4,"e":1}]}"#, 1 << 20).is_err());
    }
}
