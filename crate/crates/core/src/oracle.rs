//! Exact boxicity of small graphs by searching `d`-tuples of interval
//! supergraphs whose intersection is the graph.
//!
//! The first `d - 1` dimensions range over the distinct interval supergraphs
//! in order of their first canonical model, with nondecreasing indices (any
//! solution can be permuted into that shape). The last dimension is a
//! sandwich query: an interval supergraph avoiding every edge the others
//! still share beyond `g`. The search returns the lexicographically first
//! successful tuple.

use rayon::prelude::*;
use thiserror::Error;

use crate::bits::{complete_mask, DenseGraph, MAX_DENSE_VERTICES};
use crate::boxrep::BoxRepresentation;
use crate::enumerate::{arrangement_to_model, supergraph_arrangements};
use crate::graph::Graph;
use crate::search::{arrangements, Bag, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exact search supports at most {limit} vertices, graph has {vertices}")]
    TooLarge { vertices: usize, limit: usize },
}

/// Smallest `d <= d_max` with a witness, or `None` when `box(g) > d_max`.
/// Complete graphs (including graphs on at most one vertex) have `d = 0`.
pub fn brute_force_boxicity(
    g: &Graph,
    d_max: usize,
) -> Result<Option<(usize, BoxRepresentation)>, OracleError> {
    let dense = DenseGraph::new(g).ok_or(OracleError::TooLarge {
        vertices: g.vertex_count(),
        limit: MAX_DENSE_VERTICES,
    })?;
    if g.is_complete() {
        return Ok(Some((0, BoxRepresentation::trivial(g.vertices()))));
    }
    let mut candidates: Option<Vec<(u128, Vec<u8>)>> = None;
    for d in 1..=d_max {
        if d >= 2 && candidates.is_none() {
            candidates = Some(supergraph_arrangements(&dense));
        }
        let pool = candidates.as_deref().unwrap_or(&[]);
        if let Some(tokens) = search(&dense, pool, d) {
            let models: Vec<_> = tokens
                .iter()
                .map(|t| arrangement_to_model(&dense.ids, t))
                .collect();
            let rep = BoxRepresentation::from_models(&models).expect("models share the vertex set");
            debug_assert!(rep.verify(g).map(|v| v.is_valid()).unwrap_or(false));
            return Ok(Some((d, rep)));
        }
    }
    Ok(None)
}

/// Default search bound: `box(g) <= n / 2` for every graph, so `n` is safe.
pub fn boxicity(g: &Graph) -> Result<(usize, BoxRepresentation), OracleError> {
    let bound = g.vertex_count().max(1);
    Ok(brute_force_boxicity(g, bound)?.expect("boxicity never exceeds the vertex count"))
}

fn search(g: &DenseGraph, pool: &[(u128, Vec<u8>)], d: usize) -> Option<Vec<Vec<u8>>> {
    let full = complete_mask(g.len());
    if d == 1 {
        return last_dimension(g, full).map(|t| vec![t]);
    }
    pool.par_iter()
        .enumerate()
        .find_map_first(|(i, (edges, tokens))| {
            let mut chosen = vec![tokens.clone()];
            extend(g, pool, d, i, full & edges, &mut chosen).then_some(chosen)
        })
}

/// Fills dimensions `chosen.len() + 1 ..= d` given the running intersection.
fn extend(
    g: &DenseGraph,
    pool: &[(u128, Vec<u8>)],
    d: usize,
    from: usize,
    running: u128,
    chosen: &mut Vec<Vec<u8>>,
) -> bool {
    if running == g.edges {
        // Already exact; remaining dimensions repeat the last choice.
        let last = chosen.last().cloned().expect("at least one dimension");
        chosen.resize(d, last);
        return true;
    }
    if chosen.len() + 1 == d {
        if let Some(t) = last_dimension(g, running) {
            chosen.push(t);
            return true;
        }
        return false;
    }
    for (j, (edges, tokens)) in pool.iter().enumerate().skip(from) {
        chosen.push(tokens.clone());
        if extend(g, pool, d, j, running & edges, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// First arrangement containing `g` and avoiding `running \ E(g)`.
fn last_dimension(g: &DenseGraph, running: u128) -> Option<Vec<u8>> {
    let bag = Bag {
        nbrs: &g.nbrs,
        back: 0,
        fwd: 0,
    };
    let forbidden = running & !g.edges;
    arrangements(
        bag,
        &[],
        Mode::Avoid {
            forbidden,
            limit: 1,
        },
    )
    .into_iter()
    .next()
    .map(|f| f.tokens)
}
