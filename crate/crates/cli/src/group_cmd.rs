use clap::{Args, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;
use vcdlab::lattice::{
    breadth, classify, goldie_dims, height, isomorphic, join_irreducibles, width,
};
use vcdlab::ppgroups::{
    chain_partition, lambda_iso, p_poset, pp_lattice, pp_lattice_direct, pp_lattice_power,
    stabilize, stabilize_agrees_brute, validate_lambda, FiniteAbelianGroup,
};
use vcdlab::szmielew::d_of;

use crate::input::{GroupInput, JsonInput};
use crate::report::{Failure, Report};
use crate::RunConfig;

/// Largest group on which `pp-lattice` repeats the computation without the
/// primary decomposition.
const DIRECT_CHECK_ORDER: u64 = 1 << 12;
/// Consecutive exponents checked by brute force above the stabilization threshold.
const BRUTE_EXPONENTS: u32 = 5;

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// The lattice of p.p.-definable subgroups of A^m.
    PpLattice(PpLatticeArgs),
    /// Breadth of PP(A) by search, against the closed form.
    Breadth(GroupOnly),
    /// The chain partition of P(λ) and its antichain.
    Chains(ChainsArgs),
    /// Reduce a conjunction of divisibility conditions.
    Stabilize(StabilizeArgs),
}

#[derive(Args, Debug)]
pub struct GroupOnly {
    #[command(flatten)]
    group: GroupInput,
}

#[derive(Args, Debug)]
pub struct PpLatticeArgs {
    #[command(flatten)]
    group: GroupInput,
    /// Number of free variables.
    #[arg(long, default_value_t = 1)]
    m: usize,
}

#[derive(Args, Debug)]
pub struct ChainsArgs {
    #[arg(long)]
    p: u64,
    /// Strictly increasing exponents, e.g. `1,3`.
    #[arg(long, value_delimiter = ',', required = true)]
    lambda: Vec<u32>,
}

#[derive(Args, Debug)]
pub struct StabilizeArgs {
    /// `{"p":2,"m":2,"kills":[[2,0]],"divs":[[[0,1],1]]}`.
    #[command(flatten)]
    input: JsonInput,
}

#[derive(Deserialize, Serialize)]
struct StabilizeInput {
    p: u64,
    m: usize,
    #[serde(default)]
    kills: Vec<Vec<i64>>,
    /// `(b, d)`: `p^d | b·x`.
    #[serde(default)]
    divs: Vec<(Vec<i64>, u32)>,
}

pub fn run(cmd: GroupCmd, cfg: &RunConfig) -> Result<Report, Failure> {
    match cmd {
        GroupCmd::PpLattice(a) => pp(&a, cfg),
        GroupCmd::Breadth(a) => group_breadth(&a.group.group(cfg.cap_elements)?, cfg),
        GroupCmd::Chains(a) => chains(&a, cfg),
        GroupCmd::Stabilize(a) => stabilize_cmd(&a, cfg),
    }
}

fn pp(a: &PpLatticeArgs, cfg: &RunConfig) -> Result<Report, Failure> {
    if a.m == 0 {
        return Err(Failure::Parse("--m must be positive".into()));
    }
    let g = a.group.group(cfg.cap_elements)?;
    let (l, subs) = if a.m == 1 {
        pp_lattice(&g, cfg.cap_elements)?
    } else {
        pp_lattice_power(&g, a.m, cfg.cap_elements)?
    };
    let (jp, _) = join_irreducibles(&l);
    let mut r = Report::new()
        .set("group", g.describe())
        .set("m", a.m)
        .set("size", l.len())
        .set("height", height(l.poset()))
        .set("breadth", breadth(&l))
        .set("widthOfJoinIrreducibles", width(&jp).0)
        .set("goldieDims", goldie_dims(&l))
        .set("class", classify(&l))
        .set(
            "subgroupOrders",
            subs.iter().map(|h| h.order()).collect::<Vec<_>>(),
        );
    if a.m == 1 && g.order() <= DIRECT_CHECK_ORDER {
        let (direct, _) = pp_lattice_direct(&g, cfg.cap_elements)?;
        let agree = direct.len() == l.len() && isomorphic(direct.poset(), l.poset());
        r = r
            .set(
                "directCheck",
                json!({ "size": direct.len(), "agree": agree }),
            )
            .check(agree, "PP(A) by primary parts");
    } else {
        r = r.set("directCheck", serde_json::Value::Null);
    }
    Ok(r)
}

fn group_breadth(g: &FiniteAbelianGroup, cfg: &RunConfig) -> Result<Report, Failure> {
    let (l, _) = pp_lattice(g, cfg.cap_elements)?;
    let b = breadth(&l);
    let per_prime: Vec<_> = g
        .primes()
        .into_iter()
        .map(|p| {
            let mut e: Vec<u64> = g.exponents_at(p).into_iter().map(u64::from).collect();
            e.dedup();
            let d = d_of(&e).d;
            json!({ "p": p, "exponents": e, "d": d })
        })
        .collect();
    let d_closed_form: u64 = per_prime
        .iter()
        .map(|v| v["d"].as_u64().expect("d is a number"))
        .sum();
    let agree = b as u64 == d_closed_form;
    Ok(Report::new()
        .set("group", g.describe())
        .set("breadth", b)
        .set("dClosedForm", d_closed_form)
        .set("perPrime", per_prime)
        .set("agree", agree)
        .check(agree, "breadth of PP(A) equals the sum of d over primes"))
}

fn chains(a: &ChainsArgs, cfg: &RunConfig) -> Result<Report, Failure> {
    validate_lambda(&a.lambda)?;
    let part = chain_partition(&a.lambda)?;
    let poset = p_poset(&a.lambda)?;
    let (w, _) = width(&poset);
    let set: Vec<u64> = a.lambda.iter().map(|&x| x.into()).collect();
    let d = d_of(&set).d;
    let order = a.lambda.iter().try_fold(1u64, |acc, &e| {
        a.p.checked_pow(e).and_then(|q| acc.checked_mul(q))
    });
    let iso_size = match order {
        Some(o) if o <= cfg.cap_elements => Some(lambda_iso(a.p, &a.lambda)?),
        _ => None,
    };
    let agree = w == d && part.chains.len() == d && part.antichain.len() == d;
    Ok(Report::new()
        .set("p", a.p)
        .set("lambda", &a.lambda)
        .set("points", poset.len())
        .set("chains", &part.chains)
        .set("antichain", &part.antichain)
        .set("width", w)
        .set("d", d)
        .set("agree", agree)
        .set("latticeIsoSize", iso_size)
        .check(
            agree,
            "width(P(lambda)) = d(lambda) with a matching chain partition",
        ))
}

fn stabilize_cmd(a: &StabilizeArgs, cfg: &RunConfig) -> Result<Report, Failure> {
    let inp: StabilizeInput = a.input.parse()?;
    let r = stabilize(inp.p, inp.m, &inp.kills, &inp.divs)?;
    let mut checked = Vec::new();
    for i in r.threshold..r.threshold + BRUTE_EXPONENTS {
        let size = (inp.p as u128).checked_pow(i * inp.m as u32);
        if size.is_none_or(|s| s > cfg.cap_elements as u128) {
            break;
        }
        let ok =
            stabilize_agrees_brute(inp.p, inp.m, &inp.kills, &inp.divs, &r, i, cfg.cap_elements)?;
        checked.push(json!({ "i": i, "agree": ok }));
    }
    let all = checked.iter().all(|c| c["agree"] == true);
    let small = r.kept_kills.len() + r.kept_divs.len() <= inp.m;
    Ok(Report::new()
        .set("input", &inp)
        .merge(&r)
        .set("bruteForce", checked)
        .check(all, "reduced conjunction defines the same subgroup")
        .check(small, "r + s <= m"))
}
