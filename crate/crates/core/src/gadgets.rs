//! The block gadget, the spiral chain of blocks, its labelling and explicit
//! 2-box representation, the `K_{2,n}` example, and stab counts.
//!
//! A block is a path `w1 .. w6` plus two non-adjacent vertices `u`, `v`
//! adjacent to every `w_j`. Block `i + 1` is joined to block `i` by
//! `u'u, u'v, u'w4, v'v, v'w3, w1'v`.
//!
//! Geometry. Each block is drawn in its own frame (`a` along the chain,
//! `b` across it):
//!
//! ```text
//!   u  : a in [0, E],   b in [16, 20]
//!   v  : a in [16, E],  b in [0, 4]
//!   w_j: b in [2, 18],  w1 = [18, 18 + L], later w_j overlap the previous
//!                       one by 8 and have length 24; E = end(w6) + 2
//! ```
//!
//! The next block's frame starts at `a = end(w2) + 2, b = 19` and is turned
//! a quarter (new `a` axis = old `-b`, new `b` axis = old `a`). Its first
//! path interval length `L` is stretched until the block after it starts
//! beyond everything drawn so far, so blocks two or more apart never meet.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::boxrep::{BoxError, BoxRepresentation, Verification};
use crate::graph::{Graph, Labeling, VertexId};
use crate::interval::{Interval, IntervalModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("the chain needs at least one block")]
    NoBlocks,
    #[error("constructed representation fails verification: {0:?}")]
    ConstructionFailed(Verification),
    #[error("dimension out of range or empty representation")]
    NoDimensions,
    #[error("vertex {0} is not in the representation")]
    UnknownVertex(VertexId),
    #[error(transparent)]
    Box(#[from] BoxError),
}

/// Vertex ids of one block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockIds {
    pub u: VertexId,
    pub v: VertexId,
    pub w: [VertexId; 6],
}

impl BlockIds {
    /// Block `i` (1-based) uses ids `8(i - 1) ..= 8(i - 1) + 7` in the order
    /// `u, v, w1, ..., w6`.
    pub fn of(i: usize) -> BlockIds {
        let base = 8 * (i as VertexId - 1);
        BlockIds {
            u: base,
            v: base + 1,
            w: std::array::from_fn(|j| base + 2 + j as VertexId),
        }
    }

    pub fn all(&self) -> [VertexId; 8] {
        let w = self.w;
        [self.u, self.v, w[0], w[1], w[2], w[3], w[4], w[5]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub blocks: Vec<BlockIds>,
}

fn block_edges(b: &BlockIds) -> Vec<(VertexId, VertexId)> {
    let mut edges: Vec<(VertexId, VertexId)> = b.w.windows(2).map(|p| (p[0], p[1])).collect();
    for &w in &b.w {
        edges.push((b.u, w));
        edges.push((b.v, w));
    }
    edges
}

fn cross_edges(prev: &BlockIds, next: &BlockIds) -> [(VertexId, VertexId); 6] {
    [
        (next.u, prev.u),
        (next.u, prev.v),
        (next.u, prev.w[3]),
        (next.v, prev.v),
        (next.v, prev.w[2]),
        (next.w[0], prev.v),
    ]
}

pub fn build_block() -> GadgetGraph {
    build_gn(1).expect("one block")
}

/// The chain of `n` blocks.
pub fn build_gn(n: usize) -> Result<GadgetGraph, GadgetError> {
    if n == 0 {
        return Err(GadgetError::NoBlocks);
    }
    let blocks: Vec<BlockIds> = (1..=n).map(BlockIds::of).collect();
    let mut edges = Vec::with_capacity(23 * n);
    for (i, b) in blocks.iter().enumerate() {
        edges.extend(block_edges(b));
        if i > 0 {
            edges.extend(cross_edges(&blocks[i - 1], b));
        }
    }
    let graph = Graph::from_edges(blocks.iter().flat_map(BlockIds::all), edges)
        .expect("gadget edges join distinct vertices");
    Ok(GadgetGraph { graph, blocks })
}

/// Labels `id + 1`: blocks fill consecutive windows of eight in the order
/// `u, v, w1, ..., w6`.
pub fn gn_labeling(n: usize) -> Result<Labeling, GadgetError> {
    if n == 0 {
        return Err(GadgetError::NoBlocks);
    }
    let order: Vec<VertexId> = (1..=n).flat_map(|i| BlockIds::of(i).all()).collect();
    Ok(Labeling::from_order(&order).expect("ids are distinct"))
}

type Point = [i64; 2];

#[derive(Debug, Clone, Copy)]
struct Frame {
    origin: Point,
    a: Point,
    b: Point,
}

impl Frame {
    fn at(&self, a: i64, b: i64) -> Point {
        [
            self.origin[0] + a * self.a[0] + b * self.b[0],
            self.origin[1] + a * self.a[1] + b * self.b[1],
        ]
    }

    /// Coordinate of `p` along this frame's `a` axis.
    fn a_of(&self, p: Point) -> i64 {
        (p[0] - self.origin[0]) * self.a[0] + (p[1] - self.origin[1]) * self.a[1]
    }

    /// Global box of the local rectangle `[a0, a1] x [b0, b1]`.
    fn rect(&self, a0: i64, a1: i64, b0: i64, b1: i64) -> [Interval; 2] {
        let p = self.at(a0, b0);
        let q = self.at(a1, b1);
        [
            Interval::new(p[0].min(q[0]), p[0].max(q[0])),
            Interval::new(p[1].min(q[1]), p[1].max(q[1])),
        ]
    }
}

const OVERLAP: i64 = 8;
const LINK: i64 = 24;
const START: i64 = 18;
const MIN_FIRST: i64 = 10;
const GAP: i64 = 4;
/// `end(w2) + 2 - len(w1)`: where the next block attaches, relative to `w1`.
const ATTACH: i64 = START + LINK - OVERLAP + 2;

/// Local rectangles of one block given the length of `w1`: returns the
/// `a`-ranges of `u, v, w1..w6` (the `b`-ranges are fixed) and the end of
/// `w2`.
fn block_layout(first: i64) -> ([[i64; 2]; 8], i64) {
    let mut w = [[0i64; 2]; 6];
    w[0] = [START, START + first];
    for j in 1..6 {
        let s = w[j - 1][1] - OVERLAP;
        w[j] = [s, s + LINK];
    }
    let end = w[5][1] + 2;
    let mut out = [[0i64; 2]; 8];
    out[0] = [0, end];
    out[1] = [16, end];
    out[2..].copy_from_slice(&w);
    (out, w[1][1])
}

const B_RANGES: [[i64; 2]; 8] = [
    [16, 20],
    [0, 4],
    [2, 18],
    [2, 18],
    [2, 18],
    [2, 18],
    [2, 18],
    [2, 18],
];

/// The explicit 2-box representation of the chain, checked before return.
pub fn gn_box_representation(n: usize) -> Result<BoxRepresentation, GadgetError> {
    let gadget = build_gn(n)?;
    let mut frame = Frame {
        origin: [0, 0],
        a: [1, 0],
        b: [0, 1],
    };
    let mut raw: BTreeMap<VertexId, [Interval; 2]> = BTreeMap::new();
    let mut corners: Vec<Point> = Vec::new();
    let mut first = MIN_FIRST;
    for ids in &gadget.blocks {
        let (a_ranges, w2_end) = block_layout(first);
        for (k, &vid) in ids.all().iter().enumerate() {
            let [a0, a1] = a_ranges[k];
            let [b0, b1] = B_RANGES[k];
            raw.insert(vid, frame.rect(a0, a1, b0, b1));
            corners.push(frame.at(a0, b0));
            corners.push(frame.at(a1, b1));
        }
        let next = Frame {
            origin: frame.at(w2_end + 2, 19),
            a: [-frame.b[0], -frame.b[1]],
            b: frame.a,
        };
        // The block after `next` starts at a = first + ATTACH in the `next`
        // frame; push it past everything drawn so far.
        let reach = corners.iter().map(|&p| next.a_of(p)).max().unwrap_or(0);
        first = MIN_FIRST.max(reach + GAP - ATTACH);
        frame = next;
    }
    let models: Vec<IntervalModel> = (0..2)
        .map(|dim| {
            let column: BTreeMap<VertexId, Interval> =
                raw.iter().map(|(&v, r)| (v, r[dim])).collect();
            IntervalModel::from_closed_intervals(&column).expect("rectangles are ordered")
        })
        .collect();
    let rep = BoxRepresentation::from_models(&models)?;
    match rep.verify(&gadget.graph)? {
        Verification::Valid => Ok(rep),
        bad => Err(GadgetError::ConstructionFailed(bad)),
    }
}

/// `K_{2,n}` with `x = 0`, `y = 1`, `v_i = i + 1`, and two interval models
/// whose intersection it is: one adds `xy`, the other makes the `v_i` a
/// clique.
pub fn build_k2n(n: usize) -> Result<(Graph, [IntervalModel; 2]), GadgetError> {
    if n == 0 {
        return Err(GadgetError::NoBlocks);
    }
    let g = Graph::complete_bipartite(2, n as u32);
    let n = n as i64;
    let vid = |i: i64| (i + 1) as VertexId;
    let mut with_xy = vec![(0, 1, 2 * n + 3), (1, 2, 2 * n + 4)];
    with_xy.extend((1..=n).map(|i| (vid(i), 2 * i + 1, 2 * i + 2)));
    let mut with_clique = vec![(0, 1, n + 2), (1, n + 3, 2 * n + 4)];
    with_clique.extend((1..=n).map(|i| (vid(i), 1 + i, n + 3 + i)));
    let a = IntervalModel::from_triples(with_xy).expect("distinct endpoints");
    let b = IntervalModel::from_triples(with_clique).expect("distinct endpoints");
    Ok((g, [a, b]))
}

/// Where the most intervals of a vertex subset overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Stab {
    pub dimension: usize,
    pub point: i64,
    pub count: usize,
}

/// Maximum over dimensions and points of the number of boxes of `s` whose
/// interval in that dimension contains the point. Ties go to the lower
/// dimension, then the smaller point.
pub fn stab_analysis(rep: &BoxRepresentation, s: &BTreeSet<VertexId>) -> Result<Stab, GadgetError> {
    if rep.dimension() == 0 {
        return Err(GadgetError::NoDimensions);
    }
    if let Some(&v) = s.iter().find(|&&v| rep.get(v).is_none()) {
        return Err(GadgetError::UnknownVertex(v));
    }
    let mut best = Stab {
        dimension: 0,
        point: 0,
        count: 0,
    };
    for dim in 0..rep.dimension() {
        // Closed intervals: at equal coordinates openings come first.
        let mut events: Vec<(i64, u8)> = Vec::with_capacity(2 * s.len());
        for &v in s {
            let iv = rep.get(v).expect("checked")[dim];
            events.push((iv.left, 0));
            events.push((iv.right, 1));
        }
        events.sort_unstable();
        let mut open = 0usize;
        for (x, kind) in events {
            if kind == 0 {
                open += 1;
                if open > best.count {
                    best = Stab {
                        dimension: dim,
                        point: x,
                        count: open,
                    };
                }
            } else {
                open -= 1;
            }
        }
    }
    Ok(best)
}
