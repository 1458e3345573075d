//! Experiment tables. Every row is determined by the experiment, its
//! parameters and the root seed; rows are computed in parallel and written
//! sorted by instance id.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use hamdg::conditions::{check_degree_condition, ConditionRule};
use hamdg::constructions::{circulant, complete_graph, random_regular_graph, random_tournament};
use hamdg::decomp::{
    cover_regular_graph, cover_tournament, decompose_exact, default_matching_cap, validate_cover,
    validate_decomposition, walecki, EdgeMode,
};
use hamdg::expander::{desk_demand_cap, run_pipeline, synthetic_blowup, BlowupBase, SyntheticSpec};
use hamdg::graph::is_strongly_connected;
use hamdg::solvers::{count_hamilton, find_hamilton_cycle, is_pancyclic, oriented_hamilton_path, OrientationPattern};
use hamdg::{Digraph, Seed};

use crate::error::{usage, CliResult, EXIT_OK};
use crate::Ctx;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// Exhaustive: regular tournaments decompose into (n-1)/2 Hamilton cycles.
    Kelly,
    /// Exhaustive: strong tournaments are Hamiltonian and pancyclic.
    Camion,
    /// Hamilton decompositions of odd complete graphs.
    Walecki,
    /// Covers of circulant tournaments, size against ceil(3n/4).
    CoverTournament,
    /// Covers of complete graphs and seeded random regular graphs.
    CoverGraph,
    /// Mean Hamilton path and cycle counts of random tournaments.
    Counting,
    /// Every path orientation in random tournaments.
    Havet,
    /// Soundness of the degree-condition checkers on random digraphs.
    Soundness,
    /// Cluster assembly on synthetic blow-ups.
    Expander,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    name: Experiment,
    /// Orders to run (experiment-specific default).
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Random instances per order.
    #[arg(long)]
    trials: Option<usize>,
    /// JSON lines instead of CSV.
    #[arg(long)]
    jsonl: bool,
    /// Add a wall-time column (makes output run-dependent).
    #[arg(long)]
    timing: bool,
    /// Write the table here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// One table row.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentRecord {
    pub id: String,
    pub family: String,
    pub params: String,
    pub seed: u64,
    pub operation: String,
    pub metrics: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

type Metrics = Vec<(&'static str, String)>;
type Work = Box<dyn Fn(Seed) -> CliResult<Metrics> + Send + Sync>;

/// A unit of work: id, family, params, seed and the computation.
struct Job {
    id: String,
    family: &'static str,
    params: String,
    seed: Seed,
    work: Work,
}

fn job(
    id: String,
    family: &'static str,
    params: String,
    seed: Seed,
    work: impl Fn(Seed) -> CliResult<Metrics> + Send + Sync + 'static,
) -> Job {
    Job { id, family, params, seed, work: Box::new(work) }
}

fn m(k: &'static str, v: impl ToString) -> (&'static str, String) {
    (k, v.to_string())
}

fn tournament_from_mask(n: usize, mask: u64) -> Digraph {
    let mut arcs = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            arcs.push(if mask >> bit & 1 == 0 { (i, j) } else { (j, i) });
            bit += 1;
        }
    }
    Digraph::from_arcs(n, arcs).expect("valid tournament")
}

/// Exhaustive runs enumerate `2^(n(n-1)/2)` tournaments.
const EXHAUSTIVE_MAX_N: usize = 7;

fn check_exhaustive(ns: &[usize]) -> CliResult<()> {
    match ns.iter().find(|&&n| n == 0 || n > EXHAUSTIVE_MAX_N) {
        Some(n) => Err(usage(format!("exhaustive experiments need 1 <= n <= {EXHAUSTIVE_MAX_N}, got {n}"))),
        None => Ok(()),
    }
}

fn jobs(a: &ExperimentArgs, ctx: Ctx) -> CliResult<Vec<Job>> {
    let ns = |default: &[usize]| if a.n.is_empty() { default.to_vec() } else { a.n.clone() };
    let trials = |default: usize| a.trials.unwrap_or(default);
    let budget = ctx.budget;
    let mut out = Vec::new();
    match a.name {
        Experiment::Kelly => {
            let ns = ns(&[3, 5, 7]);
            check_exhaustive(&ns)?;
            for n in ns {
                if n % 2 == 0 {
                    return Err(usage("regular tournaments need odd n"));
                }
                out.push(job(format!("kelly-n{n:02}"), "regular_tournament", format!("n={n}"), ctx.seed, move |_| {
                    let regular: Vec<Digraph> = (0u64..1 << (n * (n - 1) / 2))
                        .into_par_iter()
                        .map(|mask| tournament_from_mask(n, mask))
                        .filter(|t| t.regular_degree() == Some((n - 1) / 2))
                        .collect();
                    let results = regular
                        .par_iter()
                        .map(|t| {
                            decompose_exact(t, EdgeMode::Arcs, budget)
                                .map(|d| d.filter(|d| validate_decomposition(d, t).holds))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let ok = results.iter().flatten().filter(|d| d.cycles.len() == (n - 1) / 2).count();
                    Ok(vec![
                        m("regular", regular.len()),
                        m("decomposed", ok),
                        m("cycles_each", (n - 1) / 2),
                        m("exceptions", regular.len() - ok),
                    ])
                }));
            }
        }
        Experiment::Camion => {
            let ns = ns(&[3, 4, 5, 6]);
            check_exhaustive(&ns)?;
            for n in ns {
                out.push(job(format!("camion-n{n:02}"), "tournament", format!("n={n}"), ctx.seed, move |_| {
                    let rows = (0u64..1 << (n * (n - 1) / 2))
                        .into_par_iter()
                        .map(|mask| {
                            let t = tournament_from_mask(n, mask);
                            let strong = is_strongly_connected(&t);
                            let ham = find_hamilton_cycle(&t, budget)?.is_some();
                            let pan = strong && is_pancyclic(&t, budget)?.verdict.holds;
                            Ok((strong, ham, pan))
                        })
                        .collect::<Result<Vec<_>, hamdg::Error>>()?;
                    let count = |f: &dyn Fn(&(bool, bool, bool)) -> bool| rows.iter().filter(|r| f(r)).count();
                    Ok(vec![
                        m("tournaments", rows.len()),
                        m("strong", count(&|r| r.0)),
                        m("hamiltonian", count(&|r| r.1)),
                        m("strong_pancyclic", count(&|r| r.2)),
                        m("exceptions", count(&|r| r.0 != r.1 || r.0 != r.2)),
                    ])
                }));
            }
        }
        Experiment::Walecki => {
            for n in ns(&(3..=25).step_by(2).collect::<Vec<_>>()) {
                out.push(job(format!("walecki-n{n:02}"), "complete_graph", format!("n={n}"), ctx.seed, move |_| {
                    let d = walecki(n)?;
                    let valid = validate_decomposition(&d, &complete_graph(n)?).holds;
                    Ok(vec![m("cycles", d.cycles.len()), m("expected", (n - 1) / 2), m("valid", valid)])
                }));
            }
        }
        Experiment::CoverTournament => {
            for n in ns(&[5, 7, 9, 11, 13, 15]) {
                out.push(job(format!("cover-circulant-n{n:02}"), "circulant", format!("n={n}"), ctx.seed, move |_| {
                    let g = circulant(n, &[])?;
                    let r = cover_tournament(&g, default_matching_cap(n), budget)?;
                    Ok(vec![
                        m("size", r.size()),
                        m("target", (3 * n).div_ceil(4)),
                        m("extracted", r.extracted),
                        m("exact", r.exact),
                        m("matchings", r.matchings.len()),
                        m("valid", validate_cover(&r.cover, &g).holds),
                    ])
                }));
            }
        }
        Experiment::CoverGraph => {
            let cover_row = move |g: &Digraph| -> CliResult<Metrics> {
                let r = cover_regular_graph(g, default_matching_cap(g.n()), budget)?;
                Ok(vec![
                    m("size", r.size()),
                    m("degree", g.regular_degree().unwrap_or(0)),
                    m("extracted", r.extracted),
                    m("exact", r.exact),
                    m("matchings", r.matchings.len()),
                    m("valid", validate_cover(&r.cover, g).holds),
                ])
            };
            for n in ns(&[3, 5, 7, 9, 11, 13, 15]) {
                out.push(job(format!("cover-k-n{n:02}"), "complete_graph", format!("n={n}"), ctx.seed, move |_| {
                    cover_row(&complete_graph(n)?)
                }));
            }
            for d in [7usize, 8] {
                for t in 0..trials(3) {
                    let seed = ctx.seed.split((d * 1000 + t) as u64);
                    out.push(job(
                        format!("cover-rr-n12-d{d}-t{t:03}"),
                        "random_regular_graph",
                        format!("n=12 d={d}"),
                        seed,
                        move |s| cover_row(&random_regular_graph(12, d, s)?),
                    ));
                }
            }
        }
        Experiment::Counting => {
            let t = trials(1000);
            for n in ns(&[3, 4, 5, 6, 7, 8]) {
                let seed = ctx.seed.split(n as u64);
                out.push(job(
                    format!("counting-n{n:02}"),
                    "random_tournament",
                    format!("n={n} trials={t}"),
                    seed,
                    move |s| {
                        let counts = (0..t as u64)
                            .into_par_iter()
                            .map(|i| count_hamilton(&random_tournament(n, s.split(i))))
                            .collect::<Result<Vec<_>, _>>()?;
                        let paths: Vec<f64> = counts.iter().map(|c| c.hamilton_paths as f64).collect();
                        let cycles: Vec<f64> = counts.iter().map(|c| c.hamilton_cycles as f64).collect();
                        let (pm, pse) = mean_se(&paths);
                        let (cm, cse) = mean_se(&cycles);
                        let r = &counts[0];
                        Ok(vec![
                            m("mean_paths", format!("{pm:.4}")),
                            m("se_paths", format!("{pse:.4}")),
                            m("f", r.f()),
                            m("mean_cycles", format!("{cm:.4}")),
                            m("se_cycles", format!("{cse:.4}")),
                            m("g", r.g()),
                            m("max_paths", counts.iter().map(|c| c.hamilton_paths).max().unwrap_or(0)),
                            m("max_cycles", counts.iter().map(|c| c.hamilton_cycles).max().unwrap_or(0)),
                        ])
                    },
                ));
            }
        }
        Experiment::Havet => {
            for n in ns(&[8]) {
                if !(2..=12).contains(&n) {
                    return Err(usage("havet runs need 2 <= n <= 12"));
                }
                for t in 0..trials(100) {
                    let seed = ctx.seed.split((n * 100_000 + t) as u64);
                    out.push(job(
                        format!("havet-n{n:02}-t{t:03}"),
                        "random_tournament",
                        format!("n={n}"),
                        seed,
                        move |s| {
                            let g = random_tournament(n, s);
                            let mut missing = 0usize;
                            for mask in 0..1u64 << (n - 1) {
                                let p = OrientationPattern::from_mask(n - 1, mask);
                                if oriented_hamilton_path(&g, p.signs(), budget)?.is_none() {
                                    missing += 1;
                                }
                            }
                            Ok(vec![m("patterns", 1u64 << (n - 1)), m("missing", missing)])
                        },
                    ));
                }
            }
        }
        Experiment::Soundness => {
            for n in ns(&[4, 6, 8, 10]) {
                let seed = ctx.seed.split(n as u64);
                let t = trials(1000);
                out.push(job(
                    format!("soundness-n{n:02}"),
                    "random_digraph",
                    format!("n={n} trials={t}"),
                    seed,
                    move |s| {
                        let rules = [ConditionRule::GhouilaHouri, ConditionRule::Woodall, ConditionRule::Meyniel];
                        let rows = (0..t as u64)
                            .into_par_iter()
                            .map(|i| {
                                let g = random_digraph(n, s.split(i));
                                let holds = rules
                                    .iter()
                                    .map(|&r| check_degree_condition(&g, r).map(|v| v.holds))
                                    .collect::<Result<Vec<_>, _>>()?;
                                let ham = find_hamilton_cycle(&g, budget)?.is_some();
                                Ok((holds, ham))
                            })
                            .collect::<Result<Vec<_>, hamdg::Error>>()?;
                        let premise = |i: usize| rows.iter().filter(|r| r.0[i]).count();
                        let violations = rows.iter().filter(|r| r.0.iter().any(|&h| h) && !r.1).count();
                        Ok(vec![
                            m("instances", rows.len()),
                            m("ghouila_houri", premise(0)),
                            m("woodall", premise(1)),
                            m("meyniel", premise(2)),
                            m("hamiltonian", rows.iter().filter(|r| r.1).count()),
                            m("violations", violations),
                        ])
                    },
                ));
            }
        }
        Experiment::Expander => {
            for t in 0..trials(20) {
                let base = if t % 2 == 0 { BlowupBase::Triangle } else { BlowupBase::Pentagon };
                let mm = if (t / 2) % 2 == 0 { 5 } else { 7 };
                let e = t % 4;
                let seed = ctx.seed.split(t as u64);
                let name = if t % 2 == 0 { "triangle" } else { "pentagon" };
                out.push(job(
                    format!("expander-t{t:03}"),
                    "cluster_blowup",
                    format!("base={name} m={mm} exceptional={e}"),
                    seed,
                    move |s| {
                        let inst = synthetic_blowup(SyntheticSpec { base, m: mm, exceptional: e, seed: s })?;
                        let run = run_pipeline(&inst, desk_demand_cap(mm), budget)?;
                        let g = &inst.blowup.graph;
                        Ok(vec![
                            m("n", g.n()),
                            m("walk_length", run.walk.nodes.len()),
                            m("merges", run.assembly.merges.len()),
                            m("exact_fallbacks", run.assembly.merges.iter().filter(|x| x.exact_fallback).count()),
                            m("valid", run.assembly.cycle.is_valid_in(g)),
                        ])
                    },
                ));
            }
        }
    }
    Ok(out)
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Arc density drawn per instance from `[1/2, 1)`.
fn random_digraph(n: usize, seed: Seed) -> Digraph {
    use rand::Rng;
    let mut rng = seed.rng();
    let p = rng.gen_range(0.5..1.0);
    let mut g = Digraph::empty(n).expect("small n");
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                g.insert_arc(u, v).expect("fresh arc");
            }
        }
    }
    g
}

fn operation(e: Experiment) -> String {
    e.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

pub fn records(a: &ExperimentArgs, ctx: Ctx) -> CliResult<Vec<ExperimentRecord>> {
    let op = operation(a.name);
    let mut rows = jobs(a, ctx)?
        .into_par_iter()
        .map(|j| {
            let start = Instant::now();
            let metrics = (j.work)(j.seed)?;
            let wall = start.elapsed().as_secs_f64() * 1e3;
            Ok(ExperimentRecord {
                id: j.id,
                family: j.family.to_string(),
                params: j.params,
                seed: j.seed.0,
                operation: op.clone(),
                metrics: metrics.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
                wall_ms: a.timing.then_some(wall),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    rows.sort_by(|x, y| x.id.cmp(&y.id));
    Ok(rows)
}

pub fn write_table(rows: &[ExperimentRecord], jsonl: bool, timing: bool, out: &mut dyn Write) -> CliResult<()> {
    if jsonl {
        for r in rows {
            let line = serde_json::to_string(r).map_err(|e| usage(e.to_string()))?;
            writeln!(out, "{line}")?;
        }
        return Ok(());
    }
    writeln!(out, "# schema=1")?;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["id", "family", "params", "seed", "operation", "metrics"];
    if timing {
        header.push("wall_ms");
    }
    w.write_record(&header)?;
    for r in rows {
        let metrics: Vec<String> = r.metrics.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut rec = vec![
            r.id.clone(),
            r.family.clone(),
            r.params.clone(),
            r.seed.to_string(),
            r.operation.clone(),
            metrics.join(";"),
        ];
        if let Some(ms) = r.wall_ms {
            rec.push(format!("{ms:.3}"));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(a: &ExperimentArgs, ctx: Ctx) -> CliResult<u8> {
    let rows = records(a, ctx)?;
    match &a.output {
        Some(p) => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(p)?);
            write_table(&rows, a.jsonl, a.timing, &mut f)?;
            f.flush()?;
        }
        None => write_table(&rows, a.jsonl, a.timing, &mut std::io::stdout().lock())?,
    }
    Ok(EXIT_OK)
}
