//! Independent oracles and generators shared by the integration tests.
//! Nothing here calls the library's search code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use boxkit::{Graph, Interval, IntervalModel, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

/// Index of pair `i < j` among the `n(n-1)/2` pairs.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if mask & (1 << pair_index(n, i, j)) != 0 {
                edges.push((i as VertexId, j as VertexId));
            }
        }
    }
    Graph::from_edges(0..n as VertexId, edges).unwrap()
}

/// One representative per isomorphism class of graphs on `n` vertices
/// (vertex ids `0..n`), found by minimising the edge mask over all
/// relabellings.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    let perms = permutations(n);
    let mut seen: HashSet<u32> = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs) {
        let mut best = u32::MAX;
        for p in &perms {
            let mut m = 0u32;
            for i in 0..n {
                for j in i + 1..n {
                    if mask & (1 << pair_index(n, i, j)) != 0 {
                        m |= 1 << pair_index(n, p[i], p[j]);
                    }
                }
            }
            best = best.min(m);
            if best < mask {
                break;
            }
        }
        if best == mask && seen.insert(mask) {
            out.push(graph_from_mask(n, mask));
        }
    }
    out
}

/// Smallest edge mask over all relabellings of a graph on `0..n`.
pub fn canonical_mask(g: &Graph) -> u32 {
    let n = g.vertex_count();
    permutations(n)
        .iter()
        .map(|p| {
            g.edges()
                .map(|(u, v)| 1u32 << pair_index(n, p[u as usize], p[v as usize]))
                .sum::<u32>()
        })
        .min()
        .unwrap_or(0)
}

/// Canonical masks of every interval graph on `n` vertices. Any model can be
/// relabelled so left endpoints appear in vertex order, so only those
/// endpoint sequences are generated.
pub fn interval_graph_classes(n: usize) -> HashSet<u32> {
    fn rec(
        n: usize,
        next_open: usize,
        open: &mut Vec<usize>,
        left: &mut Vec<usize>,
        pos: usize,
        spans: &mut Vec<(usize, usize)>,
        out: &mut HashSet<u32>,
    ) {
        if next_open == n && open.is_empty() {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if spans[i].0.max(spans[j].0) <= spans[i].1.min(spans[j].1) {
                        edges.push((i as VertexId, j as VertexId));
                    }
                }
            }
            out.insert(canonical_mask(
                &Graph::from_edges(0..n as VertexId, edges).unwrap(),
            ));
            return;
        }
        if next_open < n {
            open.push(next_open);
            left[next_open] = pos;
            rec(n, next_open + 1, open, left, pos + 1, spans, out);
            open.pop();
        }
        for k in 0..open.len() {
            let v = open.remove(k);
            spans[v] = (left[v], pos);
            rec(n, next_open, open, left, pos + 1, spans, out);
            open.insert(k, v);
        }
    }
    let mut out = HashSet::new();
    rec(
        n,
        0,
        &mut Vec::new(),
        &mut vec![0; n],
        0,
        &mut vec![(0, 0); n],
        &mut out,
    );
    out
}

pub fn is_connected(g: &Graph) -> bool {
    let Some(start) = g.vertices().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen.len() == g.vertex_count()
}

/// Minimum bandwidth over all orderings.
pub fn brute_bandwidth(g: &Graph) -> u64 {
    let ids: Vec<VertexId> = g.vertices().collect();
    permutations(ids.len())
        .iter()
        .map(|p| {
            let pos: BTreeMap<VertexId, i64> = p
                .iter()
                .enumerate()
                .map(|(k, &i)| (ids[i], k as i64))
                .collect();
            g.edges()
                .map(|(u, v)| (pos[&u] - pos[&v]).unsigned_abs())
                .max()
                .unwrap_or(0)
        })
        .min()
        .unwrap_or(0)
}

/// Pathwidth as the vertex separation number, minimised over all orderings.
pub fn brute_pathwidth(g: &Graph) -> usize {
    let ids: Vec<VertexId> = g.vertices().collect();
    if ids.is_empty() {
        return 0;
    }
    permutations(ids.len())
        .iter()
        .map(|p| {
            let mut worst = 0;
            for k in 1..=p.len() {
                let prefix: BTreeSet<VertexId> = p[..k].iter().map(|&i| ids[i]).collect();
                let boundary = prefix
                    .iter()
                    .filter(|&&v| g.neighbors(v).iter().any(|u| !prefix.contains(u)))
                    .count();
                worst = worst.max(boundary);
            }
            worst
        })
        .min()
        .unwrap()
}

/// `(2m)! / 2^m` computed directly.
pub fn arrangement_count(m: u32) -> u128 {
    let fact: u128 = (1..=2 * m as u128).product();
    fact >> m
}

pub fn random_graph<R: Rng>(rng: &mut R, n: u32, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(0..n, edges).unwrap()
}

/// A model whose endpoint order is a uniformly shuffled valid sequence,
/// placed at strictly increasing random coordinates.
pub fn random_model<R: Rng>(rng: &mut R, vertices: &[VertexId]) -> IntervalModel {
    let mut tokens: Vec<(VertexId, bool)> = vertices
        .iter()
        .flat_map(|&v| [(v, false), (v, true)])
        .collect();
    tokens.shuffle(rng);
    // Swap each right endpoint that precedes its left endpoint.
    let mut first: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, &(v, _)) in tokens.iter().enumerate() {
        first.entry(v).or_insert(i);
    }
    let mut x = rng.gen_range(-50..50);
    let mut ivs: BTreeMap<VertexId, Interval> = BTreeMap::new();
    for (i, &(v, _)) in tokens.iter().enumerate() {
        x += rng.gen_range(1..7);
        let e = ivs.entry(v).or_insert(Interval::new(0, 0));
        if first[&v] == i {
            e.left = x;
        } else {
            e.right = x;
        }
    }
    IntervalModel::new(ivs).unwrap()
}

/// Same endpoint order, new strictly increasing coordinates.
pub fn rescale<R: Rng>(rng: &mut R, m: &IntervalModel) -> IntervalModel {
    let mut x = rng.gen_range(-100..100);
    let mut ivs: BTreeMap<VertexId, Interval> = BTreeMap::new();
    let mut ends: Vec<(i64, VertexId, bool)> = Vec::new();
    for (v, iv) in m.iter() {
        ends.push((iv.left, v, false));
        ends.push((iv.right, v, true));
    }
    ends.sort();
    for (_, v, right) in ends {
        x += rng.gen_range(1..20);
        let e = ivs.entry(v).or_insert(Interval::new(0, 0));
        if right {
            e.right = x;
        } else {
            e.left = x;
        }
    }
    IntervalModel::new(ivs).unwrap()
}

/// Endpoint order agreement checked pair by pair on shared vertices, using
/// the sorted endpoint sequences rather than coordinate comparisons.
pub fn same_order_on_common(a: &IntervalModel, b: &IntervalModel) -> bool {
    let common: BTreeSet<VertexId> = a.vertices().filter(|&v| b.contains(v)).collect();
    let seq = |m: &IntervalModel| {
        let mut ends: Vec<(i64, VertexId, bool)> = m
            .iter()
            .filter(|(v, _)| common.contains(v))
            .flat_map(|(v, iv)| [(iv.left, v, false), (iv.right, v, true)])
            .collect();
        ends.sort();
        ends.into_iter().map(|(_, v, s)| (v, s)).collect::<Vec<_>>()
    };
    seq(a) == seq(b)
}

/// Intersection graph of closed intervals by direct pairwise comparison.
pub fn overlap_graph(m: &IntervalModel) -> Graph {
    let ivs: Vec<(VertexId, Interval)> = m.iter().collect();
    let mut edges = Vec::new();
    for (i, &(u, a)) in ivs.iter().enumerate() {
        for &(v, b) in &ivs[i + 1..] {
            if a.left.max(b.left) <= a.right.min(b.right) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(ivs.iter().map(|p| p.0), edges).unwrap()
}

/// Edge-set intersection of several graphs on one vertex set.
pub fn intersect_graphs(gs: &[Graph]) -> Graph {
    let first = &gs[0];
    let edges: Vec<(VertexId, VertexId)> = first
        .edges()
        .filter(|&(u, v)| gs.iter().all(|g| g.has_edge(u, v)))
        .collect();
    Graph::from_edges(first.vertices(), edges).unwrap()
}
