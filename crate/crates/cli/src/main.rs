//! `hamdg`: generate instances, check hypotheses, solve, count, decompose,
//! cover, verify expansion and run experiment tables.

mod commands;
mod error;
mod experiment;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hamdg::verdict::{parse_fraction, Q};
use hamdg::{Budget, Seed};

use error::{CliResult, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "hamdg", version, about = "Hamilton cycles in digraphs, oriented graphs and tournaments")]
struct Cli {
    /// Root seed; every random choice is derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search-node budget per solver call.
    #[arg(long, global = true, env = "HAMDG_BUDGET", default_value_t = Budget::DEFAULT_NODES)]
    budget: u64,
    /// Worker threads for parallel stages (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated instance in the exchange format.
    Gen(GenArgs),
    /// Evaluate the hypothesis of a sufficient condition.
    Check(CheckArgs),
    /// Search for a certificate.
    Solve(SolveArgs),
    /// Count Hamilton paths and cycles exactly.
    Count(InputArgs),
    /// Exact Hamilton decomposition.
    Decompose(DecomposeArgs),
    /// Cover every arc (or edge) by Hamilton cycles.
    Cover(CoverArgs),
    /// Expansion, pair regularity and cluster assembly.
    #[command(subcommand)]
    Expander(ExpanderCommand),
    /// Reproducible experiment tables.
    Experiment(experiment::ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Circulant,
    Random,
    RandomRegular,
    Transitive,
    Complete,
    CompleteGraph,
    RandomRegularGraph,
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    NwExtremal,
    Bipartite,
    TwoRegular,
    CycleBlowup,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// Circulant shifts.
    #[arg(long, value_delimiter = ',')]
    shifts: Vec<usize>,
    /// Part sizes of a cycle blow-up.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Also write the part map here.
    #[arg(long)]
    parts_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    GhouilaHouri,
    Woodall,
    Meyniel,
    Bgl,
    OreOriented,
    HaggkvistStar,
    OrientedSemidegree,
    DigraphSemidegree,
    KorderedSemidegree,
    PowerTournament,
    ShortCycle,
    NashWilliams,
    PosaDigraph,
    Ckko,
    JacksonFactorial,
    JacksonOrdaz,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph in the exchange format (`-` for stdin).
    #[arg(long, short)]
    input: PathBuf,
}

fn fraction(s: &str) -> Result<Q, String> {
    parse_fraction(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    rule: Rule,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = fraction)]
    alpha: Option<Q>,
    #[arg(long, value_parser = fraction)]
    eps: Option<Q>,
    #[arg(long, value_parser = fraction)]
    beta: Option<Q>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Vertex cap of the independence search.
    #[arg(long, default_value_t = hamdg::graph::DEFAULT_INDEPENDENCE_CAP)]
    alpha_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Hamilton,
    KOrdered,
    Through,
    Pancyclic,
    Power,
    Oriented,
    OrientedPath,
    Factor,
    Tree,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    problem: Problem,
    #[command(flatten)]
    input: InputArgs,
    /// Vertices to visit in order (k-ordered).
    #[arg(long, value_delimiter = ',')]
    seq: Vec<usize>,
    /// Arcs `u-v` the cycle must contain.
    #[arg(long, value_delimiter = ',')]
    matching: Vec<String>,
    /// Power of the Hamilton cycle.
    #[arg(long)]
    k: Option<usize>,
    /// Edge directions over `F`/`B`.
    #[arg(long)]
    pattern: Option<String>,
    /// Cycle lengths of the factor; empty means any 1-factor.
    #[arg(long, value_delimiter = ',')]
    lengths: Vec<usize>,
    /// Oriented tree to embed, in the exchange format.
    #[arg(long)]
    tree: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Greedy extraction instead of the exact search.
    #[arg(long)]
    greedy: bool,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Largest matching routed through one cycle (default ceil(sqrt n)).
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum ExpanderCommand {
    /// Robust outexpansion, exhaustive or sampled.
    Robust {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_parser = fraction, default_value = "1/20")]
        nu: Q,
        #[arg(long, value_parser = fraction, default_value = "1/5")]
        tau: Q,
        /// Sample this many subsets instead of scanning all.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Epsilon-regularity (and super-regularity with `--d`) of a pair.
    Pair {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<usize>,
        #[arg(long, value_parser = fraction, default_value = "1/10")]
        eps: Q,
        #[arg(long, value_parser = fraction)]
        d: Option<Q>,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Build a synthetic clustered instance and assemble a Hamilton cycle.
    Blowup {
        #[arg(long, value_enum, default_value_t = Base::Triangle)]
        base: Base,
        #[arg(long, default_value_t = 5)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        exceptional: usize,
        /// Demand cap per cluster (default floor(m/2)).
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    Triangle,
    Pentagon,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub seed: Seed,
    pub budget: Budget,
}

fn run(cli: Cli) -> CliResult<u8> {
    if cli.threads > 0 {
        // only fails if a pool already exists, in which case it is reused
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    if cli.budget == 0 {
        return Err(error::usage("budget must be positive"));
    }
    let ctx = Ctx { seed: Seed(cli.seed), budget: Budget(cli.budget) };
    match cli.command {
        Command::Gen(a) => commands::gen(&a, ctx),
        Command::Check(a) => commands::check(&a),
        Command::Solve(a) => commands::solve(&a, ctx),
        Command::Count(a) => commands::count(&a),
        Command::Decompose(a) => commands::decompose(&a, ctx),
        Command::Cover(a) => commands::cover(&a, ctx),
        Command::Expander(c) => commands::expander(&c, ctx),
        Command::Experiment(a) => experiment::run(&a, ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hamdg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
