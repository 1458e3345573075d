//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line; the
//! process exits non-zero if any criterion fails.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use hamdg::conditions::{check_degree_condition, ConditionRule};
use hamdg::constructions::{
    circulant, complete_digraph, complete_graph, fig1, fig2, fig3_haggkvist, fig4_square, nw_extremal,
    random_regular_graph,
};
use hamdg::decomp::{
    cover_regular_graph, cover_tournament, decompose_exact, default_matching_cap, validate_cover,
    validate_decomposition, walecki, EdgeMode,
};
use hamdg::expander::{
    desk_demand_cap, is_robust_outexpander, robust_out_nbhd, run_pipeline, synthetic_blowup, BlowupBase, ScanMode,
    SyntheticSpec,
};
use hamdg::graph::{dominated_pairs, is_strongly_connected, vertex_connectivity};
use hamdg::solvers::{
    count_hamilton, embed_tree, find_hamilton_cycle, is_oriented_tree, is_pancyclic, kth_power_hamilton, one_factor,
    oriented_hamilton_path, OrientationPattern,
};
use hamdg::verdict::{q, Q};
use hamdg::{Budget, Digraph, Error, Seed};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Tournament on `n` vertices whose pair `(i, j)`, `i < j`, in
/// lexicographic order is oriented `i -> j` when its bit is clear.
fn tournament_from_mask(n: usize, mask: u64) -> Digraph {
    let mut arcs = Vec::with_capacity(n * (n - 1) / 2);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            arcs.push(if mask >> bit & 1 == 0 { (i, j) } else { (j, i) });
            bit += 1;
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

fn all_tournaments(n: usize) -> impl ParallelIterator<Item = Digraph> {
    (0u64..1 << (n * (n - 1) / 2)).into_par_iter().map(move |m| tournament_from_mask(n, m))
}

fn random_digraph(n: usize, p: f64, rng: &mut impl Rng) -> Digraph {
    let mut g = Digraph::empty(n).unwrap();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                g.insert_arc(u, v).unwrap();
            }
        }
    }
    g
}

/// Independent count by walking every vertex ordering.
fn naive_counts(g: &Digraph) -> (u64, u64) {
    fn go(g: &Digraph, path: &mut Vec<usize>, used: u64, paths: &mut u64, cycles: &mut u64) {
        let n = g.n();
        if path.len() == n {
            *paths += 1;
            if path[0] == 0 && g.has_arc(path[n - 1], 0) {
                *cycles += 1;
            }
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 0 && path.last().map_or(true, |&u| g.has_arc(u, v)) {
                path.push(v);
                go(g, path, used | 1 << v, paths, cycles);
                path.pop();
            }
        }
    }
    let (mut p, mut c) = (0, 0);
    go(g, &mut Vec::new(), 0, &mut p, &mut c);
    (p, c)
}

/// Tournament with semidegrees `n/2` and `n/2 - 1` for even `n`: shifts
/// `1 .. n/2 - 1` plus the antipodal arc out of the first half.
fn near_regular_circulant(n: usize) -> Digraph {
    let mut g = Digraph::empty(n).unwrap();
    for i in 0..n {
        for s in 1..n / 2 {
            g.insert_arc(i, (i + s) % n).unwrap();
        }
        if i < n / 2 {
            g.insert_arc(i, i + n / 2).unwrap();
        }
    }
    g
}

fn c1_camion_moon() -> Outcome {
    let bad = all_tournaments(6).find_any(|t| {
        let strong = is_strongly_connected(t);
        let ham = find_hamilton_cycle(t, Budget::default()).unwrap().is_some();
        let pan = !strong || is_pancyclic(t, Budget::default()).unwrap().verdict.holds;
        strong != ham || !pan
    });
    match bad {
        Some(t) => Err(format!("counterexample {:?}", t.arcs().collect::<Vec<_>>())),
        None => Ok("2^15 tournaments on 6 vertices, 0 exceptions".into()),
    }
}

fn c2_kelly() -> Outcome {
    let mut summary = Vec::new();
    for n in [3usize, 5, 7] {
        let regular: Vec<Digraph> = all_tournaments(n).filter(|t| t.regular_degree() == Some((n - 1) / 2)).collect();
        let failures = regular
            .par_iter()
            .filter(|t| match decompose_exact(t, EdgeMode::Arcs, Budget::default()) {
                Ok(Some(d)) => !validate_decomposition(&d, t).holds || d.cycles.len() != (n - 1) / 2,
                _ => true,
            })
            .count();
        ensure(failures == 0, || format!("n={n}: {failures} of {} regular tournaments failed", regular.len()))?;
        summary.push(format!("n={n}: {}", regular.len()));
    }
    Ok(format!("all labeled regular tournaments decompose ({})", summary.join(", ")))
}

/// Budget for the K6 attempt.
const TILLSON_K6_BUDGET: u64 = 200_000_000;

fn c3_tillson() -> Outcome {
    for n in [3usize, 5] {
        let k = complete_digraph(n).map_err(err)?;
        let d = decompose_exact(&k, EdgeMode::Arcs, Budget::default()).map_err(err)?;
        let d = d.ok_or_else(|| format!("K{n} found no decomposition"))?;
        ensure(validate_decomposition(&d, &k).holds && d.cycles.len() == n - 1, || {
            format!("K{n} certificate invalid")
        })?;
    }
    let k4 = complete_digraph(4).map_err(err)?;
    let none = decompose_exact(&k4, EdgeMode::Arcs, Budget::default()).map_err(err)?;
    ensure(none.is_none(), || "K4 decomposed".into())?;
    let k6 = complete_digraph(6).map_err(err)?;
    let k6_outcome = match decompose_exact(&k6, EdgeMode::Arcs, Budget(TILLSON_K6_BUDGET)) {
        Ok(Some(_)) => return Err("K6 decomposed".into()),
        Ok(None) => "K6 proved non-decomposable".to_string(),
        Err(Error::BudgetExceeded { budget }) => format!("K6 budget exit after {budget} nodes"),
        Err(e) => return Err(err(e)),
    };
    Ok(format!("K3, K5 decompose; K4 exhaustively none; {k6_outcome}"))
}

fn c4_walecki() -> Outcome {
    for n in (3..=25).step_by(2) {
        let d = walecki(n).map_err(err)?;
        let k = complete_graph(n).map_err(err)?;
        ensure(validate_decomposition(&d, &k).holds, || format!("n={n} invalid"))?;
        ensure(d.cycles.len() == (n - 1) / 2, || format!("n={n}: {} cycles", d.cycles.len()))?;
    }
    Ok("odd n in 3..=25 validated, (n-1)/2 cycles each".into())
}

fn c5_cover_tournament() -> Outcome {
    let mut rows = Vec::new();
    for n in (5..=15).step_by(2) {
        let g = circulant(n, &[]).map_err(err)?;
        let r = cover_tournament(&g, default_matching_cap(n), Budget::default()).map_err(|e| format!("n={n}: {e}"))?;
        ensure(validate_cover(&r.cover, &g).holds, || format!("n={n}: cover invalid"))?;
        let target = (3 * n).div_ceil(4);
        rows.push(format!("n={n} size={} target={target}", r.size()));
    }
    Ok(format!("0 cover failures; {}", rows.join("; ")))
}

/// Seeds for the random regular graphs of the graph-cover criterion.
const REGULAR_GRAPH_SEEDS: [u64; 3] = [1, 2, 3];

fn c6_cover_regular_graph() -> Outcome {
    let mut cases = Vec::new();
    for k in 1..=7usize {
        cases.push((format!("K{}", 2 * k + 1), complete_graph(2 * k + 1).map_err(err)?));
    }
    for d in [7usize, 8] {
        for s in REGULAR_GRAPH_SEEDS {
            cases.push((format!("G(12,{d},seed {s})"), random_regular_graph(12, d, Seed(s)).map_err(err)?));
        }
    }
    let mut sizes = Vec::new();
    for (name, g) in &cases {
        let r = cover_regular_graph(g, default_matching_cap(g.n()), Budget::default())
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(validate_cover(&r.cover, g).holds, || format!("{name}: cover invalid"))?;
        sizes.push(format!("{name}={}", r.size()));
    }
    Ok(format!("{} covers validated; {}", cases.len(), sizes.join(" ")))
}

fn non_hamiltonian(g: &Digraph) -> Result<bool, String> {
    Ok(find_hamilton_cycle(g, Budget::unlimited()).map_err(err)?.is_none())
}

fn c7_extremal() -> Outcome {
    let f = fig1(2).map_err(err)?.graph;
    ensure(f.regular_degree() == Some(5) && f.is_symmetric(), || "fig1(2) not 5-regular".into())?;
    ensure(vertex_connectivity(&f).kappa == 2, || "fig1(2) not 2-connected".into())?;
    ensure(non_hamiltonian(&f)?, || "fig1(2) Hamiltonian".into())?;

    for n in 6..=8 {
        let g = fig2(n).map_err(err)?.graph;
        ensure(is_strongly_connected(&g) && non_hamiltonian(&g)?, || format!("fig2({n}) shape"))?;
        let pairs: Vec<_> = dominated_pairs(&g).into_iter().filter(|&(z, u)| g.adjacent_set(z) >> u & 1 == 0).collect();
        ensure(!pairs.is_empty(), || format!("fig2({n}) has no dominated non-adjacent pair"))?;
        for (z, u) in pairs {
            ensure(g.degree(z) + g.degree(u) == 2 * n - 2, || format!("fig2({n}) pair ({z},{u})"))?;
        }
    }

    for m in [1usize, 3] {
        let g = fig3_haggkvist(m).map_err(err)?.graph;
        let n = g.n();
        ensure(g.semidegrees().min() == (3 * n - 4).div_ceil(8) - 1, || format!("fig3({m}) semidegree"))?;
        ensure(one_factor(&g).is_none(), || format!("fig3({m}) has a 1-factor"))?;
        ensure(non_hamiltonian(&g)?, || format!("fig3({m}) Hamiltonian"))?;
    }

    let g = fig4_square(2).map_err(err)?.graph;
    ensure(kth_power_hamilton(&g, 2, Budget::unlimited()).map_err(err)?.is_none(), || {
        "fig4(2) has a squared cycle".into()
    })?;

    let mut nw = 0;
    for n in 3..=9usize {
        for k in (1..n).filter(|&k| 2 * k < n) {
            let g = nw_extremal(n, k).map_err(err)?.graph;
            let mut want = vec![k; k];
            want.extend(vec![n - 1 - k; n - 2 * k]);
            want.extend(vec![n - 1; k]);
            let ds = g.degree_sequences();
            ensure(ds.out_seq == want && ds.in_seq == want, || format!("nw_extremal({n},{k}) sequence"))?;
            ensure(is_strongly_connected(&g) && non_hamiltonian(&g)?, || format!("nw_extremal({n},{k}) shape"))?;
            nw += 1;
        }
    }
    Ok(format!("fig1(2), fig2(6..8), fig3(1,3), fig4(2), {nw} nw_extremal instances"))
}

/// Instances satisfying at least one hypothesis.
const SOUNDNESS_INSTANCES: usize = 10_000;

fn c8_soundness() -> Outcome {
    let rules = [ConditionRule::GhouilaHouri, ConditionRule::Woodall, ConditionRule::Meyniel];
    let mut rng = Seed(8).rng();
    let mut hits = [0usize; 3];
    let mut found = 0;
    let mut drawn = 0;
    while found < SOUNDNESS_INSTANCES {
        drawn += 1;
        ensure(drawn < 50 * SOUNDNESS_INSTANCES, || "too few instances meet a hypothesis".into())?;
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.5..0.95);
        let g = random_digraph(n, p, &mut rng);
        let mut any = false;
        for (i, &r) in rules.iter().enumerate() {
            if check_degree_condition(&g, r).map_err(err)?.holds {
                hits[i] += 1;
                any = true;
            }
        }
        if !any {
            continue;
        }
        found += 1;
        let h = find_hamilton_cycle(&g, Budget::default()).map_err(err)?;
        ensure(h.is_some_and(|h| h.is_valid_in(&g)), || {
            format!("no Hamilton cycle in {:?}", g.arcs().collect::<Vec<_>>())
        })?;
    }
    Ok(format!(
        "{found} instances ({drawn} drawn): ghouila_houri {}, woodall {}, meyniel {}; all Hamiltonian",
        hits[0], hits[1], hits[2]
    ))
}

/// Monte Carlo sample size for the mean path count at n = 6.
const PATH_MEAN_SAMPLES: usize = 20_000;

fn c9_counting() -> Outcome {
    let mut rng = Seed(9).rng();
    for i in 0..500 {
        let n = rng.gen_range(2..=7);
        let g = random_digraph(n, rng.gen_range(0.2..0.9), &mut rng);
        let r = count_hamilton(&g).map_err(err)?;
        ensure((r.hamilton_paths, r.hamilton_cycles) == naive_counts(&g), || format!("corpus item {i} disagrees"))?;
    }

    let stats = |n: usize| -> Vec<(u64, u64)> {
        all_tournaments(n)
            .map(|t| {
                let r = count_hamilton(&t).unwrap();
                (r.hamilton_paths, r.hamilton_cycles)
            })
            .collect()
    };
    let maxima: Vec<(u64, u64)> = (1..=6)
        .map(|n| {
            let s = stats(n);
            ensure(s.iter().all(|&(p, c)| p >= n as u64 * c), || format!("P < nC at n={n}"))
                .unwrap_or_else(|e| panic!("{e}"));
            (s.iter().map(|x| x.0).max().unwrap(), s.iter().map(|x| x.1).max().unwrap())
        })
        .collect();
    let (p3, c3, c4) = (maxima[2].0, maxima[2].1, maxima[3].1);
    ensure((p3, c3, c4) == (3, 1, 1), || format!("P(3)={p3} C(3)={c3} C(4)={c4}"))?;
    // n = 1 is vacuous: one trivial path, and no tournament has a 2-cycle
    for n in 2..=5 {
        ensure(maxima[n - 1].0 <= 4 * maxima[n].1, || format!("P({n}) > 4 C({})", n + 1))?;
    }

    let xs: Vec<f64> = (0..PATH_MEAN_SAMPLES)
        .map(|_| {
            let t = tournament_from_mask(6, rng.gen_range(0..1 << 15));
            count_hamilton(&t).unwrap().hamilton_paths as f64
        })
        .collect();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    let se = (var / xs.len() as f64).sqrt();
    ensure((mean - 22.5).abs() <= 3.0 * se, || format!("mean {mean:.3} vs 22.5, se {se:.3}"))?;
    Ok(format!(
        "oracle agrees on 500 digraphs; P(3)=3 C(3)=1 C(4)=1; max P(n)={:?}, max C(n)={:?}; mean P(6)={mean:.3} (se {se:.3})",
        maxima.iter().map(|x| x.0).collect::<Vec<_>>(),
        maxima.iter().map(|x| x.1).collect::<Vec<_>>()
    ))
}

fn c10_havet_thomasse() -> Outcome {
    let misses: usize = (0..100u64)
        .into_par_iter()
        .map(|s| {
            let t = hamdg::constructions::random_tournament(8, Seed(1000 + s));
            (0..128u64)
                .filter(|&mask| {
                    let p = OrientationPattern::from_mask(7, mask);
                    let path = oriented_hamilton_path(&t, p.signs(), Budget::default()).unwrap();
                    path.is_none()
                })
                .count()
        })
        .sum();
    ensure(misses == 0, || format!("{misses} (tournament, pattern) misses"))?;
    Ok("100 tournaments on 8 vertices x 128 path orientations, 0 misses".into())
}

/// Oriented trees on `k` labeled vertices, one per arc-set.
fn oriented_trees(k: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for choose in 0u64..1 << pairs.len() {
        if choose.count_ones() as usize != k - 1 {
            continue;
        }
        let chosen: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| choose >> i & 1 == 1).map(|(_, &p)| p).collect();
        for dirs in 0u64..1 << (k - 1) {
            let arcs = chosen.iter().enumerate().map(|(i, &(a, b))| if dirs >> i & 1 == 0 { (a, b) } else { (b, a) });
            let t = Digraph::from_arcs(k, arcs).unwrap();
            if is_oriented_tree(&t) {
                out.push(t);
            }
        }
    }
    out
}

fn c11_sumner() -> Outcome {
    let mut summary = Vec::new();
    for (host_n, k) in [(4usize, 3usize), (6, 4)] {
        let trees = oriented_trees(k);
        let misses = all_tournaments(host_n)
            .map(|t| trees.iter().filter(|tree| embed_tree(&t, tree, Budget::default()).unwrap().is_none()).count())
            .sum::<usize>();
        ensure(misses == 0, || format!("{misses} misses for trees on {k} vertices"))?;
        summary.push(format!("{} trees on {k} vertices in all tournaments on {host_n}", trees.len()));
    }
    Ok(summary.join("; "))
}

/// Fuzz instances for the neighbourhood invariants.
const EXPANDER_FUZZ: u64 = 1_000;

fn c12_expander() -> Outcome {
    let (nu, tau) = (q(1, 20), q(1, 5));
    for n in 11..=16 {
        let g = if n % 2 == 1 { circulant(n, &[]).map_err(err)? } else { near_regular_circulant(n) };
        let v = is_robust_outexpander(&g, nu, tau, ScanMode::Exact, Budget::default()).map_err(err)?;
        ensure(v.holds, || format!("n={n}: {}", v.to_json()))?;
    }

    let mut rng = Seed(12).rng();
    for i in 0..EXPANDER_FUZZ {
        let n = rng.gen_range(4..=16);
        let g = random_digraph(n, rng.gen_range(0.2..0.9), &mut rng);
        let s: u64 = rng.gen_range(0..1u64 << n);
        let a: Q = q(rng.gen_range(1..=10), 20);
        let b: Q = q(rng.gen_range(1..=10), 20);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (rn_lo, rn_hi) = (robust_out_nbhd(&g, s, lo), robust_out_nbhd(&g, s, hi));
        ensure(rn_hi & !rn_lo == 0, || format!("instance {i}: not monotone in nu"))?;
        let nbhd = hamdg::graph::bits(s).fold(0u64, |m, x| m | g.out_set(x));
        ensure(rn_lo & !nbhd == 0, || format!("instance {i}: RN not inside N+"))?;

        let nu = hi;
        // |D| <= floor(nu n / 2)
        let dmax = (nu * q(n as i64, 2)).floor().to_integer() as usize;
        let dsize = rng.gen_range(0..=dmax.min(n - 1));
        let d = hamdg::graph::mask_of(rand::seq::index::sample(&mut rng, n, dsize));
        let keep = g.all() & !d;
        let (h, map) = g.induced(keep);
        let s_h = map.iter().enumerate().filter(|&(_, &v)| s >> v & 1 == 1).fold(0u64, |m, (i, _)| m | 1 << i);
        let rn_h = robust_out_nbhd(&h, s_h, nu / 2);
        let lifted = hamdg::graph::bits(rn_h).fold(0u64, |m, i| m | 1 << map[i]);
        ensure(robust_out_nbhd(&g, s, nu) & !d & !lifted == 0, || format!("instance {i}: deletion robustness"))?;
    }

    let mut exact_fallbacks = 0;
    let mut merges = 0;
    for s in 0..20u64 {
        let base = if s % 2 == 0 { BlowupBase::Triangle } else { BlowupBase::Pentagon };
        let m = if (s / 2) % 2 == 0 { 5 } else { 7 };
        let spec = SyntheticSpec { base, m, exceptional: (s % 4) as usize, seed: Seed(s) };
        let inst = synthetic_blowup(spec).map_err(err)?;
        let run = run_pipeline(&inst, desk_demand_cap(m), Budget::default()).map_err(|e| format!("{spec:?}: {e}"))?;
        let c = &run.assembly.cycle;
        ensure(c.len() == inst.blowup.graph.n() && c.is_valid_in(&inst.blowup.graph), || {
            format!("{spec:?}: invalid cycle")
        })?;
        merges += run.assembly.merges.len();
        exact_fallbacks += run.assembly.merges.iter().filter(|m| m.exact_fallback).count();
    }
    Ok(format!(
        "exact expansion for n=11..16; {EXPANDER_FUZZ} fuzz instances; 20 blow-ups assembled, 0 merge failures ({merges} merges, {exact_fallbacks} exact fallbacks)"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("1 camion-moon exhaustive n=6", c1_camion_moon),
        ("2 kelly n in {3,5,7}", c2_kelly),
        ("3 tillson boundary", c3_tillson),
        ("4 walecki odd n <= 25", c4_walecki),
        ("5 tournament cover pipeline", c5_cover_tournament),
        ("6 regular graph cover pipeline", c6_cover_regular_graph),
        ("7 extremal constructions", c7_extremal),
        ("8 checker soundness", c8_soundness),
        ("9 counting", c9_counting),
        ("10 havet-thomasse n=8", c10_havet_thomasse),
        ("11 sumner small cases", c11_sumner),
        ("12 expander suite", c12_expander),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.split(' ').next() == Some(o.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS [{name}] {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{name}] {msg} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
