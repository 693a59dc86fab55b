use std::collections::BTreeSet;

use clap::{Args, ValueEnum};
use itertools::Itertools;
use serde::Serialize;
use serde_json::json;
use vcdlab::ppgroups::{pp_subgroup, PPFormula};
use vcdlab::setsystem::{breadth_of_system, gen_n_sets, shatter_profile, vc_dim, ShatterMode};
use vcdlab::sidon::{
    fibonacci_double_reps, generate, good_pair_stats, sidon_class, IntSet, SequenceKind,
};
use vcdlab::szmielew::{
    classify as classify_invariants, d_bounds, d_of, d_of_exhaustive, SzmielewInvariants,
};
use vcdlab::typecount::{
    breadth_type_bound, lower_bound_witness, pi_star_profile, FormulaSet, PiStarMode, TypeCounter,
};

use crate::input::{GroupInput, JsonInput};
use crate::report::{Failure, Report};
use crate::RunConfig;

/// Sets up to this size are also checked against the exhaustive search for `d`.
const DFUN_EXHAUSTIVE_MAX: usize = 20;

#[derive(Args, Debug)]
pub struct DfunArgs {
    /// Positive integers, e.g. `2,3,5,7,8,9`.
    #[arg(long, value_delimiter = ',', required = true)]
    set: Vec<u64>,
}

pub fn dfun(a: DfunArgs, _cfg: &RunConfig) -> Result<Report, Failure> {
    if a.set.contains(&0) {
        return Err(Failure::Parse("d is defined on positive integers".into()));
    }
    let r = d_of(&a.set);
    let bounds = d_bounds(&a.set)?;
    let within = bounds.lower <= r.d && r.d <= bounds.upper_lemma && r.d <= bounds.upper_simple;
    let mut rep = Report::new()
        .merge(&r)
        .set("bounds", bounds)
        .check(within, "d within its bounds");
    if r.set.len() <= DFUN_EXHAUSTIVE_MAX {
        let ex = d_of_exhaustive(&r.set);
        rep = rep
            .set("exhaustive", ex)
            .check(ex == r.d, "greedy d equals exhaustive d");
    }
    Ok(rep)
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Szmielew invariants JSON.
    #[command(flatten)]
    input: JsonInput,
    /// List VC-density bounds for m = 1..=max-m.
    #[arg(long, default_value_t = 4)]
    max_m: u64,
}

pub fn classify(a: ClassifyArgs, _cfg: &RunConfig) -> Result<Report, Failure> {
    let s: SzmielewInvariants = a.input.parse()?;
    let r = classify_invariants(&s, a.max_m)?;
    // the bounds must bracket the exact value whenever both are known
    let bracket = match r.vc_exact_slope {
        Some(k) => r
            .vc_bounds
            .iter()
            .all(|b| b.lower <= k * b.m && k * b.m <= b.upper),
        None => true,
    };
    Ok(Report::new()
        .merge(&r)
        .check(bracket, "vc bounds contain the exact value"))
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum CountModeArg {
    Exact,
    Sampled,
    Greedy,
}

#[derive(Args, Debug)]
pub struct TypecountArgs {
    #[command(flatten)]
    group: GroupInput,
    /// FormulaSet JSON: `{"m":1,"nY":1,"atoms":[{"coset":{"tau":[2,1]}}],"combos":[]}`.
    #[command(flatten)]
    formulas: JsonInput,
    /// Parameter-set sizes to evaluate.
    #[arg(long, value_delimiter = ',', conflicts_with = "t_max")]
    t: Vec<usize>,
    /// Evaluate t = 1..=t-max.
    #[arg(long, default_value_t = 8)]
    t_max: usize,
    #[arg(long, value_enum, default_value_t = CountModeArg::Greedy)]
    mode: CountModeArg,
    /// Random parameter sets per t in sampled mode.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Candidates per greedy step.
    #[arg(long, default_value_t = 64)]
    pool: usize,
    /// Fit the log-log slope over t in `lo,hi`.
    #[arg(long, value_delimiter = ',')]
    window: Vec<usize>,
    /// Count types over these parameter tuples and report the breadth bound.
    #[arg(long, value_delimiter = ',')]
    params: Vec<u64>,
}

pub fn typecount(a: TypecountArgs, cfg: &RunConfig) -> Result<Report, Failure> {
    let g = a.group.group(cfg.cap_elements)?;
    let fs: FormulaSet = a.formulas.parse()?;
    let c = TypeCounter::new(&g, &fs, cfg.cap_elements)?;
    let ts: Vec<usize> = if a.t.is_empty() {
        (1..=a.t_max).collect()
    } else {
        a.t.clone()
    };
    let mode = match a.mode {
        CountModeArg::Exact => PiStarMode::Exact {
            subset_cap: cfg.cap_subsets as u128,
        },
        CountModeArg::Sampled => PiStarMode::Sampled {
            trials: a.samples,
            seed: cfg.seed,
        },
        CountModeArg::Greedy => PiStarMode::Greedy {
            pool: a.pool,
            seed: cfg.seed,
        },
    };
    let window = match a.window[..] {
        [] => None,
        [lo, hi] if lo < hi => Some((lo, hi)),
        _ => return Err(Failure::Parse("--window takes lo,hi with lo < hi".into())),
    };
    let report = pi_star_profile(&c, &ts, mode, window)?;
    let mut r = Report::new()
        .set("group", g.describe())
        .set("formulas", fs.len())
        .set("objectSpace", c.object_size())
        .set("parameterSpace", c.param_size())
        .set("cosetClasses", c.class_count())
        .csv_rows(&report.rows)
        .merge(&report);
    if !a.params.is_empty() {
        let count = c.count(&a.params)?;
        let (breadth, bound) = breadth_type_bound(&c, &a.params, cfg.cap_subsets)?;
        let ok = bound.is_none_or(|b| count as u128 <= b);
        r = r
            .set(
                "explicit",
                json!({ "params": a.params, "count": count, "breadth": breadth, "bound": bound }),
            )
            .check(ok, "type count within the breadth bound");
    }
    Ok(r)
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[command(flatten)]
    group: GroupInput,
    /// JSON list of one-variable p.p. formulas defining H_1..H_d, e.g. `[{"tau":[2,1]},{"delta":[2,0,1]}]`.
    #[command(flatten)]
    subgroups: JsonInput,
    /// Parameters per subgroup; every index must be at least `t`.
    #[arg(long)]
    t: usize,
}

pub fn witness(a: WitnessArgs, cfg: &RunConfig) -> Result<Report, Failure> {
    let g = a.group.group(cfg.cap_elements)?;
    let fs: Vec<PPFormula> = a.subgroups.parse()?;
    let hs = fs
        .iter()
        .map(|f| pp_subgroup(&g, 1, f, cfg.cap_elements))
        .collect::<Result<Vec<_>, _>>()?;
    let w = lower_bound_witness(&g, &hs, a.t)?;
    let (all, among) = w.verify(&g, &hs)?;
    let target = (a.t as u128).pow(w.d as u32);
    let holds = among as u128 >= target;
    Ok(Report::new()
        .set("group", g.describe())
        .merge(&w)
        .set(
            "subgroupOrders",
            hs.iter().map(|h| h.order()).collect::<Vec<_>>(),
        )
        .set("countTypes", all)
        .set("countAmongRealizers", among)
        .set("target", target)
        .set("holds", holds)
        .set("exact", true)
        .check(holds, "the realizers give t^d distinct types"))
}

#[derive(Args, Debug)]
pub struct SidonArgs {
    /// An explicit set of integers.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "kind"
    )]
    set: Vec<i64>,
    /// `powers:B`, `nplus:B`, `factorials` or `fibonacci`.
    #[arg(long)]
    kind: Option<SequenceKind>,
    /// Number of terms of `--kind`.
    #[arg(long, default_value_t = 15)]
    count: usize,
    /// Also list Fibonacci double representations up to this bound.
    #[arg(long)]
    fib_bound: Option<u64>,
}

#[derive(Serialize)]
struct DoubleRepRow {
    a: u64,
    rep1: String,
    rep2: String,
}

pub fn sidon(a: SidonArgs, _cfg: &RunConfig) -> Result<Report, Failure> {
    let u: Option<IntSet> = match (&a.kind, a.set.is_empty()) {
        (Some(k), _) => Some(generate(*k, a.count)?),
        (None, false) => Some(IntSet::new(a.set.clone())),
        (None, true) => None,
    };
    if u.is_none() && a.fib_bound.is_none() {
        return Err(Failure::Parse("give --set, --kind or --fib-bound".into()));
    }
    let mut r = Report::new();
    if let Some(u) = u {
        r = r
            .set("set", &u)
            .set("classification", sidon_class(&u)?)
            .set("goodPairs", good_pair_stats(&u, &u)?);
    }
    if let Some(bound) = a.fib_bound {
        let reps = fibonacci_double_reps(bound)?;
        let rows: Vec<DoubleRepRow> = reps
            .iter()
            .map(|d| DoubleRepRow {
                a: d.a,
                rep1: format!("{}+{}", d.reps[0].0, d.reps[0].1),
                rep2: format!("{}+{}", d.reps[1].0, d.reps[1].1),
            })
            .collect();
        r = r.csv_rows(&rows).set("fibonacciDoubleReps", reps);
    }
    Ok(r)
}

#[derive(Args, Debug)]
pub struct NsetsArgs {
    /// Size of the distinguished subsets.
    #[arg(long)]
    n: usize,
    /// Number of disjoint blocks of `2n` points.
    #[arg(long, default_value_t = 1)]
    classes: usize,
    /// Shatter function π(t) for t = 0..=shatter.
    #[arg(long)]
    shatter: Option<usize>,
    /// Estimate π(t) from this many random t-sets instead of all of them.
    #[arg(long)]
    samples: Option<usize>,
}

pub fn nsets(a: NsetsArgs, cfg: &RunConfig) -> Result<Report, Failure> {
    let s = gen_n_sets(a.n, a.classes, cfg.cap_subsets as u128)?;
    // traces on the first block: every n-subset, plus the empty trace of the other blocks
    let block = 2 * a.n;
    let traces: BTreeSet<Vec<usize>> = s
        .sets()
        .iter()
        .map(|x| x.ones().take_while(|&i| i < block).collect())
        .collect();
    let mut want: BTreeSet<Vec<usize>> = (0..block).combinations(a.n).collect();
    if a.classes > 1 {
        want.insert(Vec::new());
    }
    let vc = vc_dim(&s, cfg.cap_subsets);
    let breadth = breadth_of_system(&s, cfg.cap_subsets);
    let mut r = Report::new()
        .set("system", &s)
        .set("vcDim", vc)
        .set("breadth", breadth)
        .set("traceCheck", traces == want)
        .check(traces == want, "traces on one class are the n-subsets");
    if let Some(t) = a.shatter {
        let mode = match a.samples {
            Some(samples) => ShatterMode::Sampled {
                samples,
                seed: cfg.seed,
            },
            None => ShatterMode::Exact {
                subset_cap: cfg.cap_subsets as u128,
            },
        };
        let prof = shatter_profile(&s, t, mode)?;
        r = r.csv_rows(&prof.rows()).set("shatter", prof.rows());
    }
    Ok(r)
}
