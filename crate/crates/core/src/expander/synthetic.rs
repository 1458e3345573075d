use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::rng::Seed;
use crate::solvers::Budget;

use super::assemble::{assemble_hamilton, Assembly, ClusterBlowup};
use super::walk::{build_closed_walk, ClosedWalk, Demand, OneFactorF, ReducedDigraph};

/// Cluster-level base of a synthetic instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlowupBase {
    /// Three clusters, reduced digraph complete.
    Triangle,
    /// Five clusters, reduced arcs `i -> i+1, i+2, i+3`.
    Pentagon,
}

impl BlowupBase {
    pub fn k(self) -> usize {
        match self {
            BlowupBase::Triangle => 3,
            BlowupBase::Pentagon => 5,
        }
    }

    fn shifts(self) -> &'static [usize] {
        match self {
            BlowupBase::Triangle => &[1, 2],
            BlowupBase::Pentagon => &[1, 2, 3],
        }
    }
}

/// Parameters of a synthetic clustered instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub base: BlowupBase,
    pub m: usize,
    pub exceptional: usize,
    pub seed: Seed,
}

/// Neighbours each exceptional vertex gets in every cluster, each way.
pub const EXCEPTIONAL_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyntheticInstance {
    pub blowup: ClusterBlowup,
    pub reduced: ReducedDigraph,
    pub factor: OneFactorF,
}

/// Clustered digraph over a triangle or pentagon base. Cluster `i` holds
/// vertices `i m .. (i + 1) m`, exceptional vertices follow. Pairs along the
/// factor cycle `0 -> 1 -> .. -> k-1 -> 0` are complete minus a random
/// matching of `floor(m / 2)` arcs; other reduced pairs keep each arc with
/// probability 1/2. Each exceptional vertex sends arcs to and receives arcs
/// from [`EXCEPTIONAL_DEGREE`] random vertices of every cluster.
pub fn synthetic_blowup(spec: SyntheticSpec) -> Result<SyntheticInstance> {
    let k = spec.base.k();
    if spec.m < 2 {
        return Err(Error::BadParams("clusters need at least two vertices".into()));
    }
    let n = k * spec.m + spec.exceptional;
    let mut g = Digraph::empty(n)?;
    let mut rng = spec.seed.rng();
    let cluster = |c: usize| (c * spec.m..(c + 1) * spec.m).collect::<Vec<_>>();
    let r_arcs: Vec<(usize, usize)> =
        (0..k).flat_map(|i| spec.base.shifts().iter().map(move |&s| (i, (i + s) % k))).collect();
    for &(a, b) in &r_arcs {
        let (ca, cb) = (cluster(a), cluster(b));
        if b == (a + 1) % k {
            let mut perm: Vec<usize> = (0..spec.m).collect();
            perm.shuffle(&mut rng);
            let missing: Vec<(usize, usize)> = (0..spec.m / 2).map(|i| (ca[i], cb[perm[i]])).collect();
            for &u in &ca {
                for &v in &cb {
                    if !missing.contains(&(u, v)) {
                        g.insert_arc(u, v)?;
                    }
                }
            }
        } else {
            for &u in &ca {
                for &v in &cb {
                    if rng.gen_bool(0.5) {
                        g.insert_arc(u, v)?;
                    }
                }
            }
        }
    }
    let deg = EXCEPTIONAL_DEGREE.min(spec.m);
    let exceptional: Vec<usize> = (k * spec.m..n).collect();
    for &x in &exceptional {
        for c in 0..k {
            let cv = cluster(c);
            for i in sample(&mut rng, spec.m, deg) {
                g.insert_arc(x, cv[i])?;
            }
            for i in sample(&mut rng, spec.m, deg) {
                g.insert_arc(cv[i], x)?;
            }
        }
    }
    let reduced = ReducedDigraph::new(Digraph::from_arcs(k, r_arcs)?, spec.m)?;
    let factor = OneFactorF::new(&reduced, vec![(0..k).collect()])?;
    let blowup = ClusterBlowup::new(g, (0..k).map(cluster).collect(), exceptional)?;
    Ok(SyntheticInstance { blowup, reduced, factor })
}

/// Desk-scale demand cap `floor(m / 2)`, used where `m / 10` rounds to zero.
pub fn desk_demand_cap(m: usize) -> usize {
    m / 2
}

/// Picks entry and exit clusters for every exceptional vertex. Entries go
/// to the least-loaded cluster holding an outneighbour (more outneighbours,
/// then lower index, breaking ties). The exit of `a_{i+1}` is preferably
/// `T_i^-`, which makes the shifted walk from `T_i` to `U_{i+1}^+` trivial;
/// otherwise the least-loaded cluster holding an inneighbour.
pub fn choose_demands(b: &ClusterBlowup, f: &OneFactorF, cap: usize) -> Result<Vec<Demand>> {
    let g = &b.graph;
    let k = b.clusters.len();
    let l = b.exceptional.len();
    let count = |x: usize, c: usize, out: bool| {
        b.clusters[c].iter().filter(|&&v| if out { g.has_arc(x, v) } else { g.has_arc(v, x) }).count()
    };
    let mut load = vec![0usize; k];
    let pick = |x: usize, out: bool, load: &[usize]| {
        (0..k)
            .filter(|&c| count(x, c, out) > 0 && load[c] < cap)
            .min_by_key(|&c| (load[c], std::cmp::Reverse(count(x, c, out)), c))
    };
    let mut entries = Vec::with_capacity(l);
    for &x in &b.exceptional {
        let c = pick(x, true, &load).ok_or_else(|| overload_or_isolated(b, x, &load, cap))?;
        load[c] += 1;
        entries.push(c);
    }
    let mut demands = Vec::with_capacity(l);
    for (i, &x) in b.exceptional.iter().enumerate() {
        let preferred = f.pred(entries[(i + l - 1) % l]);
        let c = if count(x, preferred, false) > 0 && load[preferred] < cap {
            preferred
        } else {
            pick(x, false, &load).ok_or_else(|| overload_or_isolated(b, x, &load, cap))?
        };
        load[c] += 1;
        demands.push(Demand { entry: entries[i], exit: c });
    }
    Ok(demands)
}

fn overload_or_isolated(b: &ClusterBlowup, x: usize, load: &[usize], cap: usize) -> Error {
    match (0..load.len()).max_by_key(|&c| load[c]) {
        Some(c) if load[c] >= cap => Error::DemandOverload { cluster: c, count: load[c] + 1, cap },
        _ => Error::ConnectorFailure {
            from: format!("exceptional vertex {x}"),
            to: format!("{} clusters", b.clusters.len()),
        },
    }
}

/// Every stage of one run on a clustered instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineRun {
    pub demands: Vec<Demand>,
    pub walk: ClosedWalk,
    pub assembly: Assembly,
}

/// Demands, closed walk and assembly with a common demand cap.
pub fn run_pipeline(inst: &SyntheticInstance, cap: usize, budget: Budget) -> Result<PipelineRun> {
    let demands = choose_demands(&inst.blowup, &inst.factor, cap)?;
    let walk = build_closed_walk(&inst.reduced, &inst.factor, &demands, cap)?;
    let assembly = assemble_hamilton(&inst.blowup, &inst.reduced, &inst.factor, &walk, budget)?;
    Ok(PipelineRun { demands, walk, assembly })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_well_formed() {
        for base in [BlowupBase::Triangle, BlowupBase::Pentagon] {
            let spec = SyntheticSpec { base, m: 5, exceptional: 2, seed: Seed(3) };
            let inst = synthetic_blowup(spec).unwrap();
            assert_eq!(inst.blowup.graph.n(), base.k() * 5 + 2);
            assert_eq!(inst, synthetic_blowup(spec).unwrap());
            for c in 0..base.k() {
                let next = &inst.blowup.clusters[(c + 1) % base.k()];
                for &u in &inst.blowup.clusters[c] {
                    assert!(next.iter().filter(|&&v| inst.blowup.graph.has_arc(u, v)).count() >= 4);
                }
            }
        }
    }

    #[test]
    fn pipeline_runs() {
        for (base, m, e) in [(BlowupBase::Triangle, 5, 0), (BlowupBase::Triangle, 5, 3), (BlowupBase::Pentagon, 7, 3)] {
            let inst = synthetic_blowup(SyntheticSpec { base, m, exceptional: e, seed: Seed(11) }).unwrap();
            let run = run_pipeline(&inst, desk_demand_cap(m), Budget::default()).unwrap();
            run.assembly.cycle.check(&inst.blowup.graph).unwrap();
            assert_eq!(run.assembly.cycle.len(), inst.blowup.graph.n());
        }
    }

    #[test]
    fn verbatim_cap_overloads_small_clusters() {
        let inst = synthetic_blowup(SyntheticSpec { base: BlowupBase::Triangle, m: 5, exceptional: 1, seed: Seed(0) })
            .unwrap();
        assert!(matches!(
            run_pipeline(&inst, super::super::walk::default_demand_cap(5), Budget::default()),
            Err(Error::DemandOverload { .. })
        ));
    }
}
