use clap::{Args, Subcommand};
use serde_json::json;
use vcdlab::io::{parse_poset, PosetJson};
use vcdlab::lattice::{
    breadth, classify, downset_lattice, goldie_dims, height, isomorphic, join_irreducibles,
    order_dimension, width, Dimension, Lattice, LatticeClass, Poset, DEFAULT_CRITICAL_PAIR_CAP,
};

use crate::input::JsonInput;
use crate::report::{Failure, Report};
use crate::RunConfig;

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Height, width, breadth, order dimension and Goldie dimensions.
    Stats(LatticeArgs),
    /// Rebuild a distributive lattice from its join-irreducibles.
    Birkhoff(BirkhoffArgs),
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    #[command(flatten)]
    input: JsonInput,
    /// `boolean:N`, `chain:N`, `m3` or `n5` instead of a JSON input.
    #[arg(long, conflicts_with_all = ["file", "json"])]
    builtin: Option<String>,
    /// Critical-pair cap for the exact order-dimension search.
    #[arg(long, default_value_t = DEFAULT_CRITICAL_PAIR_CAP)]
    pair_cap: usize,
}

#[derive(Args, Debug)]
pub struct BirkhoffArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// The input is a poset P; check `J(O(P)) ≅ P` instead.
    #[arg(long)]
    poset: bool,
}

fn builtin(spec: &str) -> Result<Lattice, Failure> {
    let (name, arg) = spec
        .split_once(':')
        .map_or((spec, None), |(a, b)| (a, Some(b)));
    let n = || -> Result<usize, Failure> {
        arg.and_then(|a| a.parse().ok())
            .ok_or_else(|| Failure::Parse(format!("`{name}` needs a size, e.g. {name}:3")))
    };
    match name {
        "boolean" => Ok(Lattice::boolean(n()?)),
        "chain" => Ok(Lattice::chain(n()?)),
        "m3" => Ok(Lattice::m3()),
        "n5" => Ok(Lattice::n5()),
        _ => Err(Failure::Parse(format!("unknown builtin lattice `{spec}`"))),
    }
}

fn input_poset(a: &LatticeArgs) -> Result<Poset, Failure> {
    match &a.builtin {
        Some(b) => Ok(builtin(b)?.poset().clone()),
        None => Ok(parse_poset(&a.input.text()?)?),
    }
}

pub fn run(cmd: LatticeCmd, cfg: &RunConfig) -> Result<Report, Failure> {
    match cmd {
        LatticeCmd::Stats(a) => stats(&a, cfg),
        LatticeCmd::Birkhoff(a) => birkhoff(&a, cfg),
    }
}

fn stats(a: &LatticeArgs, cfg: &RunConfig) -> Result<Report, Failure> {
    let l = Lattice::from_poset(input_poset(a)?)?;
    let p = l.poset();
    let h = height(p);
    let (w, cover) = width(p);
    let b = breadth(&l);
    let dim = order_dimension(p, a.pair_cap, cfg.cap_subsets as u64)?;
    let class = classify(&l);
    let (jp, _) = join_irreducibles(&l);
    let (wj, _) = width(&jp);
    let (dim_lo, dim_hi) = match &dim {
        Dimension::Exact { dim, .. } => (*dim, *dim),
        Dimension::Unknown { lower, upper } => (*lower, *upper),
    };
    // breadth <= dim <= width and breadth < height on every lattice
    let chain_ok = b <= dim_hi && dim_lo <= w && b < h;
    let distributive_ok =
        class != LatticeClass::Distributive || (b == wj && dim.value().is_none_or(|d| d == wj));
    Ok(Report::new()
        .set("lattice", PosetJson::from_poset(p))
        .set("size", l.len())
        .set("height", h)
        .set("width", w)
        .set("chainCover", cover)
        .set("breadth", b)
        .set("orderDimension", &dim)
        .set("dimensionExact", dim.value().is_some())
        .set("goldieDims", goldie_dims(&l))
        .set("class", class)
        .set("joinIrreducibles", jp.len())
        .set("widthOfJoinIrreducibles", wj)
        .set("inequalities", json!({ "holds": chain_ok }))
        .set(
            "distributiveIdentity",
            json!({ "applies": class == LatticeClass::Distributive, "holds": distributive_ok }),
        )
        .check(chain_ok, "breadth <= dim <= width, breadth < height")
        .check(
            distributive_ok,
            "breadth = dim = width(J(L)) for distributive L",
        ))
}

fn birkhoff(a: &BirkhoffArgs, cfg: &RunConfig) -> Result<Report, Failure> {
    let cap = cfg.cap_subsets;
    let p = input_poset(&a.lattice)?;
    if a.poset {
        let (l, _) = downset_lattice(&p, cap)?;
        let (jp, _) = join_irreducibles(&l);
        let iso = isomorphic(&jp, &p);
        return Ok(Report::new()
            .set("poset", PosetJson::from_poset(&p))
            .set("downsetLatticeSize", l.len())
            .set("joinIrreducibles", PosetJson::from_poset(&jp))
            .set("isomorphic", iso)
            .check(iso, "J(O(P)) isomorphic to P"));
    }
    let l = Lattice::from_poset(p)?;
    let class = classify(&l);
    let (jp, _) = join_irreducibles(&l);
    let (rebuilt, _) = downset_lattice(&jp, cap)?;
    let iso = isomorphic(rebuilt.poset(), l.poset());
    let distributive = class == LatticeClass::Distributive;
    Ok(Report::new()
        .set("lattice", PosetJson::from_poset(l.poset()))
        .set("class", class)
        .set("joinIrreducibles", PosetJson::from_poset(&jp))
        .set("reconstructedSize", rebuilt.len())
        .set("isomorphic", iso)
        // a non-distributive lattice is never rebuilt; only distributive ones must agree
        .check(
            iso == distributive,
            "O(J(L)) isomorphic to L exactly when L is distributive",
        ))
}
