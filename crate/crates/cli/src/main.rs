//! `vcdlab`: runs one library computation and prints a JSON (or CSV) report.

mod group_cmd;
mod input;
mod lattice_cmd;
mod misc_cmd;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vcdlab::ppgroups::DEFAULT_ELEMENT_CAP;
use vcdlab::setsystem::{DEFAULT_SUBSET_CAP, MAX_R};

use report::{Failure, Report};

/// Used whenever `--seed` is not given, so reruns are byte-identical.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(
    name = "vcdlab",
    version,
    about = "Breadth, width, dimension and VC-density computations"
)]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Largest group (or tuple space) that may be enumerated.
    #[arg(long, global = true, env = "VCDLAB_CAP_ELEMENTS", default_value_t = DEFAULT_ELEMENT_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_elements: u64,
    /// Largest number of subsets or search nodes an exact search may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSET_CAP as usize,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub cap_subsets: usize,
    /// Largest `r` for `K_{r,r}` searches.
    #[arg(long, global = true, default_value_t = MAX_R,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub cap_r: usize,
    /// Seed for every sampled or randomized computation.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite lattices given as posets.
    #[command(subcommand)]
    Lattice(lattice_cmd::LatticeCmd),
    /// Finite abelian groups and their p.p.-definable subgroups.
    #[command(subcommand)]
    Group(group_cmd::GroupCmd),
    /// The function d on a finite set of positive integers.
    Dfun(misc_cmd::DfunArgs),
    /// Classify a group given by Szmielew invariants.
    Classify(misc_cmd::ClassifyArgs),
    /// Count types of a formula set over growing parameter sets.
    Typecount(misc_cmd::TypecountArgs),
    /// Build and check the product lower-bound witness.
    Witness(misc_cmd::WitnessArgs),
    /// Sidon and weak Sidon sets, good pairs, Fibonacci double representations.
    Sidon(misc_cmd::SidonArgs),
    /// The n-sets set system and its shatter function.
    Nsets(misc_cmd::NsetsArgs),
}

fn dispatch(cmd: Command, cfg: &RunConfig) -> Result<Report, Failure> {
    match cmd {
        Command::Lattice(c) => lattice_cmd::run(c, cfg),
        Command::Group(c) => group_cmd::run(c, cfg),
        Command::Dfun(a) => misc_cmd::dfun(a, cfg),
        Command::Classify(a) => misc_cmd::classify(a, cfg),
        Command::Typecount(a) => misc_cmd::typecount(a, cfg),
        Command::Witness(a) => misc_cmd::witness(a, cfg),
        Command::Sidon(a) => misc_cmd::sidon(a, cfg),
        Command::Nsets(a) => misc_cmd::nsets(a, cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                report::EXIT_PARSE
            } else {
                0
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = report::command_name(&cli.command);
    match dispatch(cli.command, &cli.cfg) {
        Ok(r) => r.emit(&name, &cli.cfg),
        Err(f) => f.exit(),
    }
}
