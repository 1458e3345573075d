use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use hamdg::conditions::{
    check_connectivity_condition, check_degree_condition, check_sequence_condition, ConditionRule, ConnectivityRule,
    SequenceRule,
};
use hamdg::constructions::{self as cons, ExtremalFamily, Generated};
use hamdg::decomp::{
    cover_regular_graph, cover_tournament, decompose_exact, default_matching_cap, greedy_extract, EdgeMode,
};
use hamdg::expander::{
    desk_demand_cap, epsilon_regular_pair, is_robust_outexpander, run_pipeline, super_regular_pair, synthetic_blowup,
    BlowupBase, ScanMode, SyntheticSpec,
};
use hamdg::graph::GraphClass;
use hamdg::io;
use hamdg::solvers::{
    count_hamilton, disjoint_cycle_factor, embed_tree, find_hamilton_cycle, hamilton_cycle_through, is_pancyclic,
    k_ordered_hamilton, kth_power_hamilton, one_factor, oriented_hamilton, oriented_hamilton_path, OrientationPattern,
};
use hamdg::{Digraph, Matching, Verdict};

use crate::error::{usage, CliError, CliResult, EXIT_NEGATIVE, EXIT_OK};
use crate::{
    Base, CheckArgs, CoverArgs, Ctx, DecomposeArgs, ExpanderCommand, Family, GenArgs, InputArgs, Problem, Rule,
    SolveArgs,
};

pub fn read_text(path: &Path) -> CliResult<String> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    Ok(s)
}

fn read_graph(a: &InputArgs) -> CliResult<Digraph> {
    Ok(io::parse_graph(&read_text(&a.input)?)?)
}

fn emit(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn emit_json<T: Serialize>(value: &T) -> CliResult<()> {
    let s = serde_json::to_string(value).map_err(|e| usage(e.to_string()))?;
    emit(&format!("{s}\n"))
}

fn need(v: Option<usize>, flag: &str) -> CliResult<usize> {
    v.ok_or_else(|| usage(format!("--{flag} is required for this family")))
}

fn verdict_exit(v: &Verdict) -> u8 {
    if v.holds {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

pub fn generate(a: &GenArgs, ctx: Ctx) -> CliResult<Generated> {
    use cons::TournamentKind as T;
    let tournament = |g: Digraph| Generated { graph: g, parts: Vec::new(), class: GraphClass::Tournament };
    let plain = |g: Digraph, class| Generated { graph: g, parts: Vec::new(), class };
    Ok(match a.family {
        Family::Circulant => {
            tournament(cons::gen_tournament(need(a.n, "n")?, &T::Circulant { shifts: a.shifts.clone() })?)
        }
        Family::Random => tournament(cons::gen_tournament(need(a.n, "n")?, &T::Random { seed: ctx.seed })?),
        Family::RandomRegular => {
            tournament(cons::gen_tournament(need(a.n, "n")?, &T::RandomRegular { seed: ctx.seed })?)
        }
        Family::Transitive => tournament(cons::gen_tournament(need(a.n, "n")?, &T::Transitive)?),
        Family::Complete => plain(cons::complete_digraph(need(a.n, "n")?)?, GraphClass::Digraph),
        Family::CompleteGraph => plain(cons::complete_graph(need(a.n, "n")?)?, GraphClass::Undirected),
        Family::RandomRegularGraph => {
            plain(cons::random_regular_graph(need(a.n, "n")?, need(a.d, "d")?, ctx.seed)?, GraphClass::Undirected)
        }
        Family::Fig1 => cons::generate_extremal(&ExtremalFamily::Fig1 { s: need(a.s, "s")? })?,
        Family::Fig2 => cons::generate_extremal(&ExtremalFamily::Fig2 { n: need(a.n, "n")? })?,
        Family::Fig3 => cons::generate_extremal(&ExtremalFamily::Fig3Haggkvist { m: need(a.m, "m")? })?,
        Family::Fig4 => cons::generate_extremal(&ExtremalFamily::Fig4Square { m: need(a.m, "m")? })?,
        Family::NwExtremal => {
            cons::generate_extremal(&ExtremalFamily::NwExtremal { n: need(a.n, "n")?, k: need(a.k, "k")? })?
        }
        Family::Bipartite => cons::generate_extremal(&ExtremalFamily::PancyclicBipartite { n: need(a.n, "n")? })?,
        Family::TwoRegular => cons::generate_extremal(&ExtremalFamily::TwoRegularTournaments { d: need(a.d, "d")? })?,
        Family::CycleBlowup => {
            cons::generate_extremal(&ExtremalFamily::CycleBlowup { k: need(a.k, "k")?, sizes: a.sizes.clone() })?
        }
    })
}

pub fn gen(a: &GenArgs, ctx: Ctx) -> CliResult<u8> {
    let g = generate(a, ctx)?;
    if let Some(p) = &a.parts_out {
        std::fs::write(p, io::write_parts(&g.parts))?;
    }
    emit(&io::write_auto(&g.graph))?;
    Ok(EXIT_OK)
}

fn frac(v: Option<hamdg::verdict::Q>, flag: &str) -> CliResult<hamdg::verdict::Q> {
    v.ok_or_else(|| usage(format!("--{flag} is required for this rule")))
}

pub fn check(a: &CheckArgs) -> CliResult<u8> {
    let g = read_graph(&a.input)?;
    let degree = |r| check_degree_condition(&g, r);
    let v = match a.rule {
        Rule::GhouilaHouri => degree(ConditionRule::GhouilaHouri)?,
        Rule::Woodall => degree(ConditionRule::Woodall)?,
        Rule::Meyniel => degree(ConditionRule::Meyniel)?,
        Rule::Bgl => degree(ConditionRule::Bgl)?,
        Rule::OreOriented => degree(ConditionRule::OreOriented { alpha: frac(a.alpha, "alpha")? })?,
        Rule::HaggkvistStar => degree(ConditionRule::HaggkvistStar)?,
        Rule::OrientedSemidegree => degree(ConditionRule::OrientedSemidegree)?,
        Rule::DigraphSemidegree => degree(ConditionRule::DigraphSemidegree)?,
        Rule::KorderedSemidegree => degree(ConditionRule::KOrderedSemidegree { k: need(a.k, "k")? })?,
        Rule::PowerTournament => degree(ConditionRule::PowerTournament { eps: frac(a.eps, "eps")? })?,
        Rule::ShortCycle => degree(ConditionRule::ShortCycle { ell: need(a.ell, "ell")? })?,
        Rule::NashWilliams => check_sequence_condition(&g, SequenceRule::NashWilliams)?,
        Rule::PosaDigraph => check_sequence_condition(&g, SequenceRule::PosaDigraph)?,
        Rule::Ckko => check_sequence_condition(&g, SequenceRule::Ckko { beta: frac(a.beta, "beta")? })?,
        Rule::JacksonFactorial => check_connectivity_condition(&g, ConnectivityRule::JacksonFactorial, a.alpha_cap)?,
        Rule::JacksonOrdaz => check_connectivity_condition(&g, ConnectivityRule::JacksonOrdaz, a.alpha_cap)?,
    };
    emit(&format!("{}\n", v.to_json()))?;
    Ok(verdict_exit(&v))
}

fn parse_arc(s: &str) -> CliResult<(usize, usize)> {
    let bad = || usage(format!("matching arcs look like u-v, got {s:?}"));
    let (u, v) = s.split_once('-').ok_or_else(bad)?;
    Ok((u.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?))
}

fn pattern(a: &SolveArgs) -> CliResult<OrientationPattern> {
    let p = a.pattern.as_deref().ok_or_else(|| usage("--pattern is required for this problem"))?;
    Ok(OrientationPattern::parse(p)?)
}

/// Prints `text` when found; exit 1 otherwise.
fn found(text: Option<String>) -> CliResult<u8> {
    match text {
        Some(t) => {
            emit(&t)?;
            Ok(EXIT_OK)
        }
        None => {
            emit("NONE\n")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

pub fn solve(a: &SolveArgs, ctx: Ctx) -> CliResult<u8> {
    let g = read_graph(&a.input)?;
    let b = ctx.budget;
    let cycle = |h: Option<hamdg::HamiltonCycle>| h.map(|h| io::write_cycle(&h));
    match a.problem {
        Problem::Hamilton => found(cycle(find_hamilton_cycle(&g, b)?)),
        Problem::KOrdered => found(cycle(k_ordered_hamilton(&g, &a.seq, b)?)),
        Problem::Through => {
            let arcs = a.matching.iter().map(|s| parse_arc(s)).collect::<CliResult<Vec<_>>>()?;
            found(cycle(hamilton_cycle_through(&g, &Matching::new(arcs)?, b)?))
        }
        Problem::Power => found(cycle(kth_power_hamilton(&g, a.k.ok_or_else(|| usage("--k is required"))?, b)?)),
        Problem::Oriented => {
            let p = pattern(a)?;
            found(oriented_hamilton(&g, &p, b)?.map(|c| io::write_cycle(&hamdg::HamiltonCycle::new(c.order))))
        }
        Problem::OrientedPath => {
            let p = pattern(a)?;
            found(oriented_hamilton_path(&g, p.signs(), b)?.map(|path| {
                let vs: Vec<String> = path.iter().map(|v| v.to_string()).collect();
                format!("PATH 1 {} {}\n", path.len(), vs.join(" "))
            }))
        }
        Problem::Factor => {
            let f = if a.lengths.is_empty() { one_factor(&g) } else { disjoint_cycle_factor(&g, &a.lengths, b)? };
            found(f.map(|f| io::write_factor(g.n(), &f)))
        }
        Problem::Tree => {
            let path = a.tree.as_ref().ok_or_else(|| usage("--tree is required"))?;
            let tree = io::parse_graph(&read_text(path)?)?;
            found(embed_tree(&g, &tree, b)?.map(|m| io::write_embedding(g.n(), &m)))
        }
        Problem::Pancyclic => {
            let p = is_pancyclic(&g, b)?;
            #[derive(Serialize)]
            struct Out<'a> {
                verdict: &'a Verdict,
                min_length: usize,
                cycles: &'a [(usize, Vec<usize>)],
            }
            emit_json(&Out { verdict: &p.verdict, min_length: p.min_length, cycles: &p.cycles })?;
            Ok(verdict_exit(&p.verdict))
        }
    }
}

pub fn count(a: &InputArgs) -> CliResult<u8> {
    let g = read_graph(a)?;
    let r = count_hamilton(&g)?;
    #[derive(Serialize)]
    struct Out {
        n: usize,
        hamilton_paths: u64,
        hamilton_cycles: u64,
        expected_paths: String,
        expected_cycles: String,
    }
    emit_json(&Out {
        n: r.n,
        hamilton_paths: r.hamilton_paths,
        hamilton_cycles: r.hamilton_cycles,
        expected_paths: r.f().to_string(),
        expected_cycles: r.g().to_string(),
    })?;
    Ok(EXIT_OK)
}

fn mode_of(g: &Digraph) -> EdgeMode {
    if g.is_symmetric() && g.arc_count() > 0 {
        EdgeMode::Edges
    } else {
        EdgeMode::Arcs
    }
}

fn orders(cycles: &[hamdg::HamiltonCycle]) -> Vec<Vec<usize>> {
    cycles.iter().map(|c| c.order().to_vec()).collect()
}

pub fn decompose(a: &DecomposeArgs, ctx: Ctx) -> CliResult<u8> {
    let g = read_graph(&a.input)?;
    let mode = mode_of(&g);
    #[derive(Serialize)]
    struct Out {
        mode: EdgeMode,
        complete: bool,
        cycles: Vec<Vec<usize>>,
        leftover_arcs: usize,
    }
    if a.greedy {
        let (cycles, left) = greedy_extract(&g, mode, ctx.budget)?;
        let leftover_arcs = left.arc_count();
        emit_json(&Out { mode, complete: leftover_arcs == 0, cycles: orders(&cycles), leftover_arcs })?;
        return Ok(if leftover_arcs == 0 { EXIT_OK } else { EXIT_NEGATIVE });
    }
    match decompose_exact(&g, mode, ctx.budget)? {
        Some(d) => {
            emit_json(&Out { mode, complete: true, cycles: orders(&d.cycles), leftover_arcs: 0 })?;
            Ok(EXIT_OK)
        }
        None => {
            emit_json(&Out { mode, complete: false, cycles: Vec::new(), leftover_arcs: g.arc_count() })?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

pub fn cover(a: &CoverArgs, ctx: Ctx) -> CliResult<u8> {
    let g = read_graph(&a.input)?;
    let cap = a.cap.unwrap_or_else(|| default_matching_cap(g.n()));
    let r = if g.is_symmetric() {
        cover_regular_graph(&g, cap, ctx.budget)?
    } else {
        cover_tournament(&g, cap, ctx.budget)?
    };
    let valid = hamdg::decomp::validate_cover(&r.cover, &g);
    #[derive(Serialize)]
    struct Out<'a> {
        size: usize,
        extracted: usize,
        exact: bool,
        leftover_edges: usize,
        colors: usize,
        matchings: usize,
        valid: &'a Verdict,
        cycles: Vec<Vec<usize>>,
    }
    emit_json(&Out {
        size: r.size(),
        extracted: r.extracted,
        exact: r.exact,
        leftover_edges: r.leftover_edges,
        colors: r.colors,
        matchings: r.matchings.len(),
        valid: &valid,
        cycles: orders(&r.cover.cycles),
    })?;
    Ok(verdict_exit(&valid))
}

fn scan(samples: Option<u64>, ctx: Ctx) -> ScanMode {
    match samples {
        Some(trials) => ScanMode::Sampled { trials, seed: ctx.seed },
        None => ScanMode::Exact,
    }
}

pub fn expander(c: &ExpanderCommand, ctx: Ctx) -> CliResult<u8> {
    match c {
        ExpanderCommand::Robust { input, nu, tau, samples } => {
            let g = read_graph(input)?;
            let v = is_robust_outexpander(&g, *nu, *tau, scan(*samples, ctx), ctx.budget)?;
            emit(&format!("{}\n", v.to_json()))?;
            Ok(verdict_exit(&v))
        }
        ExpanderCommand::Pair { input, a, b, eps, d, samples } => {
            let g = read_graph(input)?;
            let mode = scan(*samples, ctx);
            let r = match d {
                Some(d) => super_regular_pair(&g, a, b, *eps, *d, mode, ctx.budget)?,
                None => epsilon_regular_pair(&g, a, b, *eps, mode, ctx.budget)?,
            };
            emit_json(&r)?;
            Ok(verdict_exit(&r.verdict))
        }
        ExpanderCommand::Blowup { base, m, exceptional, cap } => {
            let base = match base {
                Base::Triangle => BlowupBase::Triangle,
                Base::Pentagon => BlowupBase::Pentagon,
            };
            let inst = synthetic_blowup(SyntheticSpec { base, m: *m, exceptional: *exceptional, seed: ctx.seed })?;
            let run = run_pipeline(&inst, cap.unwrap_or_else(|| desk_demand_cap(*m)), ctx.budget)?;
            emit(&io::write_cycle(&run.assembly.cycle))?;
            Ok(EXIT_OK)
        }
    }
}
