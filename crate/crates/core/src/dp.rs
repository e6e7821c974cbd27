//! The bag-by-bag dynamic program over a path decomposition.
//!
//! For each bag it looks for `d`-tuples of canonical models on the bag whose
//! intersection is exactly the induced subgraph, such that consecutive
//! tuples agree (dimension by dimension) on the endpoint order of the
//! vertices the two bags share. If a chain of such tuples exists through all
//! bags, gluing each dimension along the chain and adding the interval graph
//! of the decomposition as one more dimension represents the graph, so
//! `d <= box(G) <= d + 1`.
//!
//! Two strategies produce the same feasibility answer:
//!
//! * [`DpStrategy::Lazy`] walks the bags depth first. A tuple for the next
//!   bag is built by inserting the new vertices' endpoints into the shared
//!   vertices' order fixed by the current tuple, and candidates are merged
//!   when they agree on their edges and on the order they hand to the next
//!   bag. Dead ends are remembered per (bag, interface order).
//! * [`DpStrategy::Exhaustive`] materialises every layer in full, storing for
//!   each tuple the first consistent predecessor. Only viable on small bags.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{DenseGraph, MAX_DENSE_VERTICES};
use crate::boxrep::{BoxError, BoxRepresentation, Verification};
use crate::enumerate::{arrangement_to_model, canonical_model_count};
use crate::graph::{Graph, VertexId};
use crate::interval::{IntervalModel, ModelError};
use crate::pathdec::{star_model, validate_pd, PathDecomposition, PdError};
use crate::search::{arrangements, project, Bag, Found, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error("invalid path decomposition: {0}")]
    InvalidDecomposition(#[from] PdError),
    #[error("the dynamic program needs at least one dimension")]
    ZeroDimension,
    #[error("bag {bag} has {size} vertices; at most {limit} are supported")]
    BagTooLarge {
        bag: usize,
        size: usize,
        limit: usize,
    },
    #[error("layer {layer} would hold up to {candidates} tuples, above the budget of {budget}")]
    TupleBudgetExceeded {
        layer: usize,
        candidates: u128,
        budget: u128,
    },
    #[error("reconstructed representation fails verification: {0:?}")]
    ReconstructionFailed(Verification),
    #[error("no dimension up to width + 2 was feasible")]
    NoFeasibleDimension,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Box(#[from] BoxError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpStrategy {
    Lazy,
    /// Full layers; fails once a layer's raw tuple space exceeds `budget`.
    Exhaustive {
        budget: u128,
    },
}

/// One `d`-tuple of canonical models on a bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTuple {
    pub models: Vec<IntervalModel>,
    /// Index of a consistent tuple in the previous layer.
    pub predecessor: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpLayer {
    pub bag: BTreeSet<VertexId>,
    pub tuples: Vec<DpTuple>,
}

/// Layers of a feasible run over the normalized decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpChain {
    pub d: usize,
    pub pd: PathDecomposition,
    pub layers: Vec<DpLayer>,
}

/// Outcome of one run: the chain if feasible, and how many tuples each
/// layer produced (exhaustive) or examined (lazy).
#[derive(Debug, Clone)]
pub struct DpRun {
    pub chain: Option<DpChain>,
    pub layer_tuples: Vec<usize>,
}

/// Feasibility at dimension `d` with the lazy strategy.
pub fn dp_feasible(
    g: &Graph,
    pd: &PathDecomposition,
    d: usize,
) -> Result<Option<DpChain>, DpError> {
    Ok(dp_run(g, pd, d, DpStrategy::Lazy)?.chain)
}

pub fn dp_run(
    g: &Graph,
    pd: &PathDecomposition,
    d: usize,
    strategy: DpStrategy,
) -> Result<DpRun, DpError> {
    if d == 0 {
        return Err(DpError::ZeroDimension);
    }
    validate_pd(g, pd)?;
    let pd = pd.normalized();
    let layers = prepare(g, &pd)?;
    match strategy {
        DpStrategy::Lazy => Ok(run_lazy(&layers, pd, d)),
        DpStrategy::Exhaustive { budget } => run_exhaustive(&layers, pd, d, budget),
    }
}

struct LayerCtx {
    dense: DenseGraph,
    back: u32,
    fwd: u32,
}

impl LayerCtx {
    fn bag(&self, key_set: u32) -> Bag<'_> {
        Bag {
            nbrs: &self.dense.nbrs,
            back: key_set,
            fwd: self.fwd,
        }
    }

    fn model(&self, tokens: &[u8]) -> IntervalModel {
        arrangement_to_model(&self.dense.ids, tokens)
    }
}

fn prepare(g: &Graph, pd: &PathDecomposition) -> Result<Vec<LayerCtx>, DpError> {
    let bags = pd.bags();
    let mask_of = |ids: &[VertexId], other: Option<&BTreeSet<VertexId>>| -> u32 {
        other.map_or(0, |o| {
            ids.iter()
                .enumerate()
                .filter(|(_, v)| o.contains(v))
                .fold(0u32, |m, (i, _)| m | 1 << i)
        })
    };
    bags.iter()
        .enumerate()
        .map(|(s, bag)| {
            let ids: Vec<VertexId> = bag.iter().copied().collect();
            let dense = DenseGraph::on(g, &ids).ok_or(DpError::BagTooLarge {
                bag: s + 1,
                size: ids.len(),
                limit: MAX_DENSE_VERTICES,
            })?;
            let back = mask_of(&ids, s.checked_sub(1).map(|p| &bags[p]));
            let fwd = mask_of(&ids, bags.get(s + 1));
            Ok(LayerCtx { dense, back, fwd })
        })
        .collect()
}

type Keys = Vec<Vec<u8>>;

struct Lazy<'a> {
    layers: &'a [LayerCtx],
    d: usize,
    failed: HashSet<(usize, Keys)>,
    explored: Vec<usize>,
    path: Vec<Vec<Vec<u8>>>,
}

fn run_lazy(layers: &[LayerCtx], pd: PathDecomposition, d: usize) -> DpRun {
    let mut search = Lazy {
        layers,
        d,
        failed: HashSet::new(),
        explored: vec![0; layers.len()],
        path: vec![Vec::new(); layers.len()],
    };
    let feasible = layers.is_empty() || search.solve(0, &vec![Vec::new(); d]);
    let chain = feasible.then(|| DpChain {
        d,
        layers: layers
            .iter()
            .zip(&search.path)
            .enumerate()
            .map(|(s, (ctx, tuple))| DpLayer {
                bag: ctx.dense.ids.iter().copied().collect(),
                tuples: vec![DpTuple {
                    models: tuple.iter().map(|t| ctx.model(t)).collect(),
                    predecessor: (s > 0).then_some(0),
                }],
            })
            .collect(),
        pd,
    });
    DpRun {
        chain,
        layer_tuples: search.explored,
    }
}

impl Lazy<'_> {
    /// Whether layers `s..` can be completed when layer `s` must agree with
    /// the interface orders `keys`.
    fn solve(&mut self, s: usize, keys: &[Vec<u8>]) -> bool {
        let mut sorted = keys.to_vec();
        sorted.sort();
        if self.failed.contains(&(s, sorted.clone())) {
            return false;
        }
        let layers = self.layers;
        let ctx = &layers[s];
        let d = self.d;

        // Candidate lists for all but the last dimension, shared between
        // dimensions with the same key. Sparse candidates first: they leave
        // less for the last dimension to remove.
        let mut by_key: HashMap<&[u8], Vec<Found>> = HashMap::new();
        for key in &keys[..d - 1] {
            by_key.entry(key.as_slice()).or_insert_with(|| {
                let mut found = arrangements(ctx.bag(ctx.back), key, Mode::Distinct);
                found.sort_by_key(|f| f.edges.count_ones());
                found
            });
        }
        let lists: Vec<&[Found]> = keys[..d - 1]
            .iter()
            .map(|k| by_key[k.as_slice()].as_slice())
            .collect();
        // Dimensions with equal keys are interchangeable; order their picks.
        let tie: Vec<Option<usize>> = (0..d - 1)
            .map(|j| (0..j).rev().find(|&i| keys[i] == keys[j]))
            .collect();

        let mut picks: Vec<usize> = Vec::with_capacity(d);
        let ok = self.pick(s, keys, &lists, &tie, &mut picks, !0u128);
        if !ok {
            self.failed.insert((s, sorted));
        }
        ok
    }

    fn pick(
        &mut self,
        s: usize,
        keys: &[Vec<u8>],
        lists: &[&[Found]],
        tie: &[Option<usize>],
        picks: &mut Vec<usize>,
        running: u128,
    ) -> bool {
        let j = picks.len();
        let layers = self.layers;
        let ctx = &layers[s];
        if j + 1 < self.d {
            let from = tie[j].map_or(0, |i| picks[i]);
            for idx in from..lists[j].len() {
                picks.push(idx);
                if self.pick(s, keys, lists, tie, picks, running & lists[j][idx].edges) {
                    return true;
                }
                picks.pop();
            }
            return false;
        }
        let forbidden = running & !ctx.dense.edges;
        let lasts = arrangements(
            ctx.bag(ctx.back),
            &keys[j],
            Mode::Avoid {
                forbidden,
                limit: usize::MAX,
            },
        );
        let mut tried: HashSet<Keys> = HashSet::new();
        for last in lasts {
            self.explored[s] += 1;
            let mut tuple: Vec<Vec<u8>> = picks
                .iter()
                .enumerate()
                .map(|(i, &p)| lists[i][p].tokens.clone())
                .collect();
            tuple.push(last.tokens.clone());
            let next: Keys = picks
                .iter()
                .enumerate()
                .map(|(i, &p)| lists[i][p].fwd.clone())
                .chain(std::iter::once(last.fwd))
                .collect();
            if !tried.insert(next.clone()) {
                continue;
            }
            self.path[s] = tuple;
            if s + 1 == self.layers.len() || self.solve(s + 1, &next) {
                return true;
            }
        }
        false
    }
}

fn run_exhaustive(
    layers: &[LayerCtx],
    pd: PathDecomposition,
    d: usize,
    budget: u128,
) -> Result<DpRun, DpError> {
    let mut out: Vec<DpLayer> = Vec::with_capacity(layers.len());
    let mut counts = Vec::with_capacity(layers.len());
    // Forward interface orders of the previous layer, first index wins.
    let mut prev_fwd: Option<HashMap<Keys, usize>> = None;
    for (s, ctx) in layers.iter().enumerate() {
        let m = ctx.dense.len();
        let full_bag = Bag {
            nbrs: &ctx.dense.nbrs,
            back: 0,
            fwd: (1u32 << m) - 1,
        };
        // Every supergraph arrangement, one per endpoint order.
        let cands = arrangements(full_bag, &[], Mode::Distinct);
        let space = (cands.len() as u128)
            .checked_pow(d as u32)
            .unwrap_or(u128::MAX);
        if space > budget {
            return Err(DpError::TupleBudgetExceeded {
                layer: s + 1,
                candidates: space,
                budget,
            });
        }
        let total = cands.len();
        let target = ctx.dense.edges;
        let tuples: Vec<(Vec<usize>, Option<usize>)> = (0..total)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut found = Vec::new();
                let mut idx = vec![first];
                product(
                    &cands,
                    d,
                    cands[first].edges,
                    &mut idx,
                    &mut |idx| {
                        found.push(idx.to_vec());
                    },
                    target,
                );
                found.into_iter()
            })
            .filter_map(|idx| match &prev_fwd {
                None => Some((idx, None)),
                Some(map) => {
                    let back: Keys = idx
                        .iter()
                        .map(|&i| project(&cands[i].tokens, ctx.back))
                        .collect();
                    map.get(&back).map(|&p| (idx, Some(p)))
                }
            })
            .collect();
        if let Some(bound) = canonical_model_count(m).and_then(|c| c.checked_pow(d as u32)) {
            debug_assert!(tuples.len() as u128 <= bound);
        }
        counts.push(tuples.len());
        if tuples.is_empty() {
            return Ok(DpRun {
                chain: None,
                layer_tuples: counts,
            });
        }
        let mut fwd_map: HashMap<Keys, usize> = HashMap::new();
        for (i, (idx, _)) in tuples.iter().enumerate() {
            let key: Keys = idx
                .iter()
                .map(|&c| project(&cands[c].tokens, ctx.fwd))
                .collect();
            fwd_map.entry(key).or_insert(i);
        }
        prev_fwd = Some(fwd_map);
        out.push(DpLayer {
            bag: ctx.dense.ids.iter().copied().collect(),
            tuples: tuples
                .into_iter()
                .map(|(idx, predecessor)| DpTuple {
                    models: idx.iter().map(|&i| ctx.model(&cands[i].tokens)).collect(),
                    predecessor,
                })
                .collect(),
        });
    }
    Ok(DpRun {
        chain: Some(DpChain { d, pd, layers: out }),
        layer_tuples: counts,
    })
}

/// Calls `emit` for every index tuple extending `idx` to length `d` whose
/// edge intersection equals `target`.
fn product(
    cands: &[Found],
    d: usize,
    running: u128,
    idx: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
    target: u128,
) {
    if idx.len() == d {
        if running == target {
            emit(idx);
        }
        return;
    }
    for (i, c) in cands.iter().enumerate() {
        idx.push(i);
        product(cands, d, running & c.edges, idx, emit, target);
        idx.pop();
    }
}

/// Glues each dimension along the chain and appends the decomposition's
/// interval model; the result is verified against `g`.
pub fn reconstruct(g: &Graph, chain: &DpChain) -> Result<BoxRepresentation, DpError> {
    let mut picked: Vec<&DpTuple> = Vec::with_capacity(chain.layers.len());
    let mut at = 0usize;
    for layer in chain.layers.iter().rev() {
        let tuple = &layer.tuples[at];
        picked.push(tuple);
        at = tuple.predecessor.unwrap_or(0);
    }
    picked.reverse();

    let mut models: Vec<IntervalModel> = Vec::with_capacity(chain.d + 1);
    for i in 0..chain.d {
        let mut glued = IntervalModel::default();
        for tuple in &picked {
            glued = glued.merge_consistent(&tuple.models[i])?;
        }
        models.push(glued);
    }
    let star = star_model(&chain.pd);
    models.push(star);
    let rep = BoxRepresentation::from_models(&models)?;
    match rep.verify(g)? {
        Verification::Valid => Ok(rep),
        bad => Err(DpError::ReconstructionFailed(bad)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub d: usize,
    pub feasible: bool,
    pub layer_tuples: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub d: usize,
    pub width: usize,
    pub attempts: Vec<Attempt>,
    pub wall_ms: u128,
}

/// `d` with `d <= box(g) <= d + 1` and a `(d + 1)`-dimensional
/// representation.
#[derive(Debug, Clone)]
pub struct Approximation {
    pub d: usize,
    pub rep: BoxRepresentation,
    pub report: ApproxReport,
}

pub fn approx_boxicity(g: &Graph, pd: &PathDecomposition) -> Result<Approximation, DpError> {
    let start = Instant::now();
    let width = validate_pd(g, pd)?;
    let normalized = pd.normalized();
    let mut attempts = Vec::new();
    let finish = |d: usize, rep: BoxRepresentation, attempts: Vec<Attempt>| Approximation {
        d,
        rep,
        report: ApproxReport {
            d,
            width,
            attempts,
            wall_ms: start.elapsed().as_millis(),
        },
    };
    if g.is_complete() {
        let star = star_model(&normalized);
        let rep = if star.is_empty() {
            BoxRepresentation::trivial(g.vertices())
        } else {
            BoxRepresentation::from_models(&[star])?
        };
        return Ok(finish(0, rep, attempts));
    }
    for d in 1..=width + 2 {
        let run = dp_run(g, &normalized, d, DpStrategy::Lazy)?;
        attempts.push(Attempt {
            d,
            feasible: run.chain.is_some(),
            layer_tuples: run.layer_tuples,
        });
        if let Some(chain) = run.chain {
            let rep = reconstruct(g, &chain)?;
            return Ok(finish(d, rep, attempts));
        }
    }
    Err(DpError::NoFeasibleDimension)
}
