//! Interval-graph recognition.
//!
//! A graph is an interval graph iff it is chordal and its maximal cliques can
//! be ordered so that the cliques containing any vertex are consecutive.
//! Chordality comes from maximum cardinality search; the clique ordering
//! from a PQ-tree.

use std::collections::{BTreeMap, BTreeSet};

use pq_tree::PQTree;

use crate::graph::{Graph, VertexId};
use crate::interval::{Interval, IntervalModel};

/// A model realizing `g`, or `None` iff `g` is not an interval graph.
pub fn recognize_interval(g: &Graph) -> Option<IntervalModel> {
    let order = perfect_elimination_order(g)?;
    let cliques = maximal_cliques(g, &order);
    let clique_order = consecutive_clique_order(g, &cliques)?;

    let mut span: BTreeMap<VertexId, Interval> = BTreeMap::new();
    for (pos, &c) in clique_order.iter().enumerate() {
        let pos = pos as i64;
        for &v in &cliques[c] {
            span.entry(v)
                .and_modify(|iv| iv.right = pos)
                .or_insert(Interval::new(pos, pos));
        }
    }
    let model = IntervalModel::from_closed_intervals(&span).expect("spans are ordered");
    debug_assert_eq!(&model.to_graph(), g);
    Some(model)
}

/// Whether `g` is chordal.
pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_order(g).is_some()
}

/// Maximum cardinality search; its reverse visiting order is a perfect
/// elimination order iff the graph is chordal.
fn perfect_elimination_order(g: &Graph) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut weight: BTreeMap<VertexId, usize> = g.vertices().map(|v| (v, 0)).collect();
    // buckets[w] holds unvisited vertices of weight w
    let mut buckets: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n + 1];
    if n > 0 {
        buckets[0] = g.vertex_set();
    }
    let mut top = 0usize;
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        while buckets[top].is_empty() {
            top -= 1;
        }
        let v = buckets[top].pop_first().expect("non-empty bucket");
        weight.remove(&v);
        visit.push(v);
        for &u in g.neighbors(v) {
            if let Some(w) = weight.get_mut(&u) {
                buckets[*w].remove(&u);
                *w += 1;
                buckets[*w].insert(u);
                top = top.max(*w);
            }
        }
    }
    visit.reverse();

    let pos: BTreeMap<VertexId, usize> = visit.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for &v in &visit {
        let later: Vec<VertexId> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|u| pos[u] > pos[&v])
            .collect();
        if let Some(&parent) = later.iter().min_by_key(|u| pos[u]) {
            let pn = g.neighbors(parent);
            if later.iter().any(|&u| u != parent && !pn.contains(&u)) {
                return None;
            }
        }
    }
    Some(visit)
}

fn maximal_cliques(g: &Graph, peo: &[VertexId]) -> Vec<BTreeSet<VertexId>> {
    let pos: BTreeMap<VertexId, usize> = peo.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let candidates: Vec<BTreeSet<VertexId>> = peo
        .iter()
        .map(|&v| {
            let mut c: BTreeSet<VertexId> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|u| pos[u] > pos[&v])
                .collect();
            c.insert(v);
            c
        })
        .collect();
    let mut out: Vec<BTreeSet<VertexId>> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let dominated = candidates.iter().enumerate().any(|(j, d)| {
            j != i && (c.len() < d.len() || (c.len() == d.len() && j < i)) && c.is_subset(d)
        });
        if !dominated {
            out.push(c.clone());
        }
    }
    out
}

fn consecutive_clique_order(g: &Graph, cliques: &[BTreeSet<VertexId>]) -> Option<Vec<usize>> {
    let k = cliques.len();
    if k <= 2 {
        return Some((0..k).collect());
    }
    let leaves: Vec<usize> = (0..k).collect();
    let mut tree = PQTree::from_leaves(&leaves).ok()?;
    for v in g.vertices() {
        let containing: Vec<usize> = (0..k).filter(|&c| cliques[c].contains(&v)).collect();
        if containing.len() >= 2 && containing.len() < k {
            tree = tree.reduction(&containing).ok()?;
        }
    }
    Some(tree.frontier())
}
