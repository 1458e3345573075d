//! Robust outexpansion, pair regularity, and the cluster-level assembly of
//! a Hamilton cycle: shifted walks on a reduced digraph, a balanced closed
//! walk through the exceptional vertices, per-cluster perfect matchings and
//! cycle merging through an auxiliary digraph. Inputs to the assembly are
//! clustered instances built directly (no regularity lemma).

mod assemble;
mod expansion;
mod regularity;
mod synthetic;
mod walk;

pub use assemble::{assemble_hamilton, Assembly, ClusterBlowup, MergeStep};
pub use expansion::{
    is_robust_outexpander, robust_out_nbhd, ExpanderParams, ScanMode, DEFAULT_SAMPLES, EXACT_EXPANSION_MAX_N,
};
pub use regularity::{epsilon_regular_pair, super_regular_pair, PairReport, EXACT_PAIR_MAX_SIDE};
pub use synthetic::{
    choose_demands, desk_demand_cap, run_pipeline, synthetic_blowup, BlowupBase, PipelineRun, SyntheticInstance,
    SyntheticSpec, EXCEPTIONAL_DEGREE,
};
pub use walk::{
    build_closed_walk, default_demand_cap, shifted_walk, ClosedWalk, Demand, Hop, OneFactorF, ReducedDigraph,
    ShiftedWalk, WalkNode, WalkStats,
};
