//! Canonical interval models: one representative per endpoint ordering.
//!
//! Over a vertex set sorted ascending, an *arrangement* is a sequence of the
//! `2n` tokens `L(i) = 2i` and `R(i) = 2i + 1` in which every `L(i)` precedes
//! its `R(i)`. Token `k` at position `p` puts that endpoint at `p + 1`, so an
//! arrangement is exactly a model with endpoints `{1, ..., 2n}`, and two
//! models on the same vertex set are consistent iff they have the same
//! arrangement. Arrangements are enumerated in lexicographic token order.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::bits::{star_mask, DenseGraph};
use crate::graph::{Graph, VertexId};
use crate::interval::{Interval, IntervalModel};

/// `(2a + b)! / 2^a`: completions of a prefix that left `a` vertices
/// unopened and `b` open.
pub fn completion_count(unopened: usize, open: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 2..=open as u128 {
        acc = acc.checked_mul(i)?;
    }
    for j in 1..=unopened as u128 {
        let b = open as u128;
        let step = (b + 2 * j - 1) * (b + 2 * j) / 2;
        acc = acc.checked_mul(step)?;
    }
    Some(acc)
}

/// Number of canonical models on `n` vertices, `(2n)! / 2^n`; `None` on overflow.
pub fn canonical_model_count(n: usize) -> Option<u128> {
    completion_count(n, 0)
}

/// Model with endpoint `p + 1` for the token at position `p`.
pub(crate) fn arrangement_to_model(ids: &[VertexId], tokens: &[u8]) -> IntervalModel {
    let mut out: BTreeMap<VertexId, Interval> = BTreeMap::new();
    for (p, &t) in tokens.iter().enumerate() {
        let v = ids[(t >> 1) as usize];
        let e = out.entry(v).or_insert(Interval::new(0, 0));
        if t & 1 == 0 {
            e.left = p as i64 + 1;
        } else {
            e.right = p as i64 + 1;
        }
    }
    IntervalModel::try_from(out).expect("arrangements encode valid models")
}

#[cfg(test)]
/// Arrangement of a model over `ids` (ascending, equal to the model's vertex set).
pub(crate) fn model_to_arrangement(ids: &[VertexId], model: &IntervalModel) -> Vec<u8> {
    let index: BTreeMap<VertexId, u8> =
        ids.iter().enumerate().map(|(i, &v)| (v, i as u8)).collect();
    model
        .endpoints()
        .into_iter()
        .map(|(_, v, side)| {
            let i = index[&v];
            match side {
                crate::interval::Side::Left => 2 * i,
                crate::interval::Side::Right => 2 * i + 1,
            }
        })
        .collect()
}

#[cfg(test)]
/// Edge mask of the interval graph of an arrangement.
pub(crate) fn arrangement_edges(tokens: &[u8]) -> u128 {
    let mut open = 0u32;
    let mut edges = 0u128;
    for &t in tokens {
        let v = (t >> 1) as usize;
        if t & 1 == 0 {
            edges |= star_mask(v, open);
            open |= 1 << v;
        } else {
            open &= !(1 << v);
        }
    }
    edges
}

/// Lazy lexicographic stream of all canonical models on a vertex set.
#[derive(Debug, Clone)]
pub struct CanonicalModels {
    ids: Vec<VertexId>,
    next: Option<Vec<u8>>,
}

/// All `(2|s|)! / 2^|s|` canonical models on `s`, lexicographically.
pub fn enumerate_canonical_models(s: &BTreeSet<VertexId>) -> CanonicalModels {
    let ids: Vec<VertexId> = s.iter().copied().collect();
    let first = smallest_completion(ids.len(), Vec::new());
    CanonicalModels {
        ids,
        next: Some(first),
    }
}

/// The model at `index` of the lexicographic stream, if it exists.
pub fn nth_canonical_model(s: &BTreeSet<VertexId>, index: u128) -> Option<IntervalModel> {
    let ids: Vec<VertexId> = s.iter().copied().collect();
    unrank(ids.len(), index).map(|t| arrangement_to_model(&ids, &t))
}

impl CanonicalModels {
    /// Stream positioned at `index`; empty if `index` is past the end.
    pub fn starting_at(s: &BTreeSet<VertexId>, index: u128) -> Self {
        let ids: Vec<VertexId> = s.iter().copied().collect();
        let next = unrank(ids.len(), index);
        CanonicalModels { ids, next }
    }

    /// Total length of the full stream.
    pub fn total(&self) -> Option<u128> {
        canonical_model_count(self.ids.len())
    }
}

impl Iterator for CanonicalModels {
    type Item = IntervalModel;

    fn next(&mut self) -> Option<IntervalModel> {
        let cur = self.next.take()?;
        let model = arrangement_to_model(&self.ids, &cur);
        self.next = successor(self.ids.len(), &cur);
        Some(model)
    }
}

fn prefix_state(tokens: &[u8]) -> (u32, u32) {
    let mut started = 0u32;
    let mut closed = 0u32;
    for &t in tokens {
        let v = t >> 1;
        if t & 1 == 0 {
            started |= 1 << v;
        } else {
            closed |= 1 << v;
        }
    }
    (started, closed)
}

#[inline]
fn token_allowed(t: u8, started: u32, closed: u32) -> bool {
    let v = t >> 1;
    if t & 1 == 0 {
        started & (1 << v) == 0
    } else {
        started & (1 << v) != 0 && closed & (1 << v) == 0
    }
}

fn smallest_completion(n: usize, mut prefix: Vec<u8>) -> Vec<u8> {
    let (mut started, mut closed) = prefix_state(&prefix);
    while prefix.len() < 2 * n {
        let t = (0..2 * n as u8)
            .find(|&t| token_allowed(t, started, closed))
            .expect("a valid prefix always extends");
        if t & 1 == 0 {
            started |= 1 << (t >> 1);
        } else {
            closed |= 1 << (t >> 1);
        }
        prefix.push(t);
    }
    prefix
}

fn successor(n: usize, cur: &[u8]) -> Option<Vec<u8>> {
    for i in (0..cur.len()).rev() {
        let (started, closed) = prefix_state(&cur[..i]);
        if let Some(t) = (cur[i] + 1..2 * n as u8).find(|&t| token_allowed(t, started, closed)) {
            let mut prefix = cur[..i].to_vec();
            prefix.push(t);
            return Some(smallest_completion(n, prefix));
        }
    }
    None
}

fn unrank(n: usize, mut index: u128) -> Option<Vec<u8>> {
    if index >= canonical_model_count(n)? {
        return None;
    }
    let mut tokens = Vec::with_capacity(2 * n);
    let (mut started, mut closed) = (0u32, 0u32);
    while tokens.len() < 2 * n {
        let mut chosen = None;
        for t in 0..2 * n as u8 {
            if !token_allowed(t, started, closed) {
                continue;
            }
            let (s2, c2) = if t & 1 == 0 {
                (started | 1 << (t >> 1), closed)
            } else {
                (started, closed | 1 << (t >> 1))
            };
            let unopened = n - s2.count_ones() as usize;
            let open = (s2 & !c2).count_ones() as usize;
            let block = completion_count(unopened, open)?;
            if index < block {
                chosen = Some((t, s2, c2));
                break;
            }
            index -= block;
        }
        let (t, s2, c2) = chosen?;
        tokens.push(t);
        started = s2;
        closed = c2;
    }
    Some(tokens)
}

/// A distinct interval supergraph of some graph, with the lexicographically
/// first canonical model realizing it.
#[derive(Debug, Clone)]
pub struct SupergraphCandidate {
    pub graph: Graph,
    pub model: IntervalModel,
}

/// Every interval graph on `V(g)` that contains all edges of `g`, each once,
/// ordered by the lexicographic position of its first canonical model.
/// Returns `None` when `g` has more than 16 vertices.
pub fn interval_supergraphs(g: &Graph) -> Option<Vec<SupergraphCandidate>> {
    let dense = DenseGraph::new(g)?;
    Some(
        supergraph_arrangements(&dense)
            .into_iter()
            .map(|(edges, tokens)| SupergraphCandidate {
                graph: dense.to_graph(edges),
                model: arrangement_to_model(&dense.ids, &tokens),
            })
            .collect(),
    )
}

/// `(edge mask, first arrangement)` for each distinct interval supergraph.
///
/// Depth-first over arrangements in lexicographic order. Closing a vertex
/// before all its required neighbours have opened can never yield a
/// supergraph, so that branch is cut. Two prefixes with the same
/// (started, closed, edges) state have identical completions; only the
/// first one visited is expanded, which keeps the first representative of
/// every graph.
pub(crate) fn supergraph_arrangements(g: &DenseGraph) -> Vec<(u128, Vec<u8>)> {
    struct Search<'a> {
        n: usize,
        nbrs: &'a [u32],
        visited: HashSet<(u32, u32, u128)>,
        seen_graphs: HashSet<u128>,
        prefix: Vec<u8>,
        out: Vec<(u128, Vec<u8>)>,
    }

    impl Search<'_> {
        fn go(&mut self, started: u32, closed: u32, edges: u128) {
            if !self.visited.insert((started, closed, edges)) {
                return;
            }
            if self.prefix.len() == 2 * self.n {
                if self.seen_graphs.insert(edges) {
                    self.out.push((edges, self.prefix.clone()));
                }
                return;
            }
            let open = started & !closed;
            for v in 0..self.n {
                let bit = 1u32 << v;
                if started & bit == 0 {
                    self.prefix.push(2 * v as u8);
                    self.go(started | bit, closed, edges | star_mask(v, open));
                    self.prefix.pop();
                } else if open & bit != 0 && self.nbrs[v] & !started == 0 {
                    self.prefix.push(2 * v as u8 + 1);
                    self.go(started, closed | bit, edges);
                    self.prefix.pop();
                }
            }
        }
    }

    let mut s = Search {
        n: g.len(),
        nbrs: &g.nbrs,
        visited: HashSet::new(),
        seen_graphs: HashSet::new(),
        prefix: Vec::with_capacity(2 * g.len()),
        out: Vec::new(),
    };
    s.go(0, 0, 0);
    debug_assert!(s.out.iter().all(|(e, _)| e & g.edges == g.edges));
    s.out
}
