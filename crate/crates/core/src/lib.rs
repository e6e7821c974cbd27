//! Boxicity toolkit: exact search for small graphs, a kernel for graphs
//! close to cluster graphs, an additive-one approximation over path
//! decompositions, and the spiral gadget family.

pub mod bits;
pub mod boxrep;
pub mod dp;
pub mod enumerate;
pub mod gadgets;
pub mod graph;
pub mod interval;
pub mod kernel;
pub mod oracle;
pub mod pathdec;
pub mod recognize;
mod search;

pub use boxrep::{BoxError, BoxRepresentation, Verification};
pub use dp::{
    approx_boxicity, dp_feasible, dp_run, reconstruct, ApproxReport, Approximation, DpChain,
    DpError, DpLayer, DpRun, DpStrategy, DpTuple,
};
pub use enumerate::{
    canonical_model_count, enumerate_canonical_models, interval_supergraphs, nth_canonical_model,
    CanonicalModels,
};
pub use gadgets::{
    build_block, build_gn, build_k2n, gn_box_representation, gn_labeling, stab_analysis, BlockIds,
    GadgetError, GadgetGraph, Stab,
};
pub use graph::{Graph, GraphError, Labeling, ParseError, VertexId};
pub use interval::{intersect_models, Interval, IntervalModel, ModelError, Side};
pub use kernel::{
    cvd_3approx, kernelize, kernelize_with, remove_true_twins, solve_fpt, KernelError, KernelReport,
};
pub use oracle::{boxicity, brute_force_boxicity, OracleError};
pub use pathdec::{
    optimal_path_decomposition, star_model, validate_pd, window_pd, PathDecomposition, PdError,
};
pub use recognize::{is_chordal, recognize_interval};
