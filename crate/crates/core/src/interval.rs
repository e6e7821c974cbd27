//! Interval models: one closed interval per vertex, all endpoints distinct.
//!
//! A model doubles as an interval graph (adjacent iff the intervals meet).
//! Two models are consistent when the endpoints of their common vertices
//! appear in the same relative order; the DP glues bag-local models together
//! along that relation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("interval of vertex {vertex} is empty or reversed: [{left}, {right}]")]
    BadInterval {
        vertex: VertexId,
        left: i64,
        right: i64,
    },
    #[error("endpoint {value} is shared by vertices {first} and {second}")]
    SharedEndpoint {
        value: i64,
        first: VertexId,
        second: VertexId,
    },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("models disagree on the endpoint order of vertices {0} and {1}")]
    InconsistentModels(VertexId, VertexId),
    #[error("models are over different vertex sets")]
    VertexSetMismatch,
    #[error("at least one model is required")]
    NoModels,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Interval {
    pub left: i64,
    pub right: i64,
}

impl From<[i64; 2]> for Interval {
    fn from([left, right]: [i64; 2]) -> Self {
        Interval { left, right }
    }
}

impl From<Interval> for [i64; 2] {
    fn from(i: Interval) -> Self {
        [i.left, i.right]
    }
}

impl Interval {
    pub const fn new(left: i64, right: i64) -> Self {
        Interval { left, right }
    }

    /// Closed-interval intersection.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.left.max(other.left) <= self.right.min(other.right)
    }

    pub fn contains(&self, point: i64) -> bool {
        self.left <= point && point <= self.right
    }
}

/// Which end of an interval an endpoint is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(
    try_from = "BTreeMap<VertexId, Interval>",
    into = "BTreeMap<VertexId, Interval>"
)]
pub struct IntervalModel {
    intervals: BTreeMap<VertexId, Interval>,
}

impl std::fmt::Debug for IntervalModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.intervals.iter().map(|(v, i)| (v, (i.left, i.right))))
            .finish()
    }
}

impl TryFrom<BTreeMap<VertexId, Interval>> for IntervalModel {
    type Error = ModelError;

    fn try_from(intervals: BTreeMap<VertexId, Interval>) -> Result<Self, Self::Error> {
        IntervalModel::new(intervals)
    }
}

impl From<IntervalModel> for BTreeMap<VertexId, Interval> {
    fn from(m: IntervalModel) -> Self {
        m.intervals
    }
}

impl IntervalModel {
    pub fn new(intervals: BTreeMap<VertexId, Interval>) -> Result<Self, ModelError> {
        let mut owner: BTreeMap<i64, VertexId> = BTreeMap::new();
        for (&v, iv) in &intervals {
            if iv.left >= iv.right {
                return Err(ModelError::BadInterval {
                    vertex: v,
                    left: iv.left,
                    right: iv.right,
                });
            }
            for value in [iv.left, iv.right] {
                if let Some(&first) = owner.get(&value) {
                    return Err(ModelError::SharedEndpoint {
                        value,
                        first,
                        second: v,
                    });
                }
                owner.insert(value, v);
            }
        }
        Ok(IntervalModel { intervals })
    }

    /// `[(v, left, right), ...]` convenience constructor.
    pub fn from_triples<I>(triples: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (VertexId, i64, i64)>,
    {
        Self::new(
            triples
                .into_iter()
                .map(|(v, l, r)| (v, Interval::new(l, r)))
                .collect(),
        )
    }

    /// Builds a model from closed intervals that may share endpoints or be
    /// single points. Ties are broken left-before-right, so touching
    /// intervals stay adjacent; the resulting graph is the intersection graph
    /// of the input intervals and endpoints are `1..=2n`.
    pub fn from_closed_intervals(
        intervals: &BTreeMap<VertexId, Interval>,
    ) -> Result<Self, ModelError> {
        let mut ends = Vec::with_capacity(intervals.len() * 2);
        for (&v, iv) in intervals {
            if iv.left > iv.right {
                return Err(ModelError::BadInterval {
                    vertex: v,
                    left: iv.left,
                    right: iv.right,
                });
            }
            ends.push((iv.left, Side::Left, v));
            ends.push((iv.right, Side::Right, v));
        }
        ends.sort_unstable();
        Ok(Self::from_sorted_ends(&ends))
    }

    fn from_sorted_ends(ends: &[(i64, Side, VertexId)]) -> Self {
        let mut out: BTreeMap<VertexId, Interval> = BTreeMap::new();
        for (rank, &(_, side, v)) in ends.iter().enumerate() {
            let pos = rank as i64 + 1;
            let e = out.entry(v).or_insert(Interval::new(0, 0));
            match side {
                Side::Left => e.left = pos,
                Side::Right => e.right = pos,
            }
        }
        IntervalModel { intervals: out }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Option<Interval> {
        self.intervals.get(&v).copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.intervals.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.intervals.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.intervals.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, Interval)> + '_ {
        self.intervals.iter().map(|(&v, &i)| (v, i))
    }

    /// All endpoints in increasing order.
    pub fn endpoints(&self) -> Vec<(i64, VertexId, Side)> {
        let mut ends: Vec<(i64, VertexId, Side)> = self
            .intervals
            .iter()
            .flat_map(|(&v, iv)| [(iv.left, v, Side::Left), (iv.right, v, Side::Right)])
            .collect();
        ends.sort_unstable();
        ends
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        match (self.intervals.get(&u), self.intervals.get(&v)) {
            (Some(a), Some(b)) => u != v && a.intersects(b),
            _ => false,
        }
    }

    /// The interval graph of this model.
    pub fn to_graph(&self) -> Graph {
        // Sweep: a vertex opening meets exactly the currently open intervals.
        let mut open: BTreeSet<VertexId> = BTreeSet::new();
        let mut edges = Vec::new();
        for (_, v, side) in self.endpoints() {
            match side {
                Side::Left => {
                    edges.extend(open.iter().map(|&u| (u, v)));
                    open.insert(v);
                }
                Side::Right => {
                    open.remove(&v);
                }
            }
        }
        Graph::from_edges(self.vertices(), edges).expect("distinct vertices never self-loop")
    }

    /// Endpoint-order agreement on the common vertices. Vacuous on disjoint
    /// vertex sets.
    pub fn is_consistent_with(&self, other: &IntervalModel) -> bool {
        self.first_inconsistency(other).is_none()
    }

    fn first_inconsistency(&self, other: &IntervalModel) -> Option<(VertexId, VertexId)> {
        let common: Vec<(Interval, Interval, VertexId)> = self
            .intervals
            .iter()
            .filter_map(|(&v, &a)| other.intervals.get(&v).map(|&b| (a, b, v)))
            .collect();
        for (i, &(a_u, b_u, u)) in common.iter().enumerate() {
            for &(a_v, b_v, v) in &common[i + 1..] {
                let same = (a_u.left < a_v.left) == (b_u.left < b_v.left)
                    && (a_u.right < a_v.right) == (b_u.right < b_v.right)
                    && (a_u.left < a_v.right) == (b_u.left < b_v.right)
                    && (a_u.right < a_v.left) == (b_u.right < b_v.left)
                    && (a_v.left < a_u.right) == (b_v.left < b_u.right)
                    && (a_v.right < a_u.left) == (b_v.right < b_u.left);
                if !same {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Rank map onto `1..=2n`; the result is consistent with `self`.
    pub fn normalize(&self) -> IntervalModel {
        let ends: Vec<(i64, Side, VertexId)> = self
            .endpoints()
            .into_iter()
            .map(|(x, v, s)| (x, s, v))
            .collect();
        Self::from_sorted_ends(&ends)
    }

    pub fn is_normalized(&self) -> bool {
        self.endpoints()
            .iter()
            .enumerate()
            .all(|(i, &(x, _, _))| x == i as i64 + 1)
    }

    pub fn restrict(&self, s: &BTreeSet<VertexId>) -> Result<IntervalModel, ModelError> {
        if let Some(&v) = s.iter().find(|v| !self.contains(**v)) {
            return Err(ModelError::UnknownVertex(v));
        }
        Ok(IntervalModel {
            intervals: s.iter().map(|&v| (v, self.intervals[&v])).collect(),
        })
    }

    /// Glues two consistent models into one model on the union of their
    /// vertex sets that is consistent with both. The vertices only `other`
    /// knows are inserted one at a time, each endpoint at the midpoint
    /// between the images of its two neighbouring `other`-endpoints; a
    /// missing neighbour is taken just outside the current range. The result
    /// is normalized.
    ///
    /// Any edge of the result that is in neither input joins a vertex only
    /// in `self` to a vertex only in `other`.
    pub fn merge_consistent(&self, other: &IntervalModel) -> Result<IntervalModel, ModelError> {
        if let Some((u, v)) = self.first_inconsistency(other) {
            return Err(ModelError::InconsistentModels(u, v));
        }
        let mut merged = self.normalize();
        let fresh: Vec<VertexId> = other.vertices().filter(|v| !self.contains(*v)).collect();
        for v in fresh {
            // Scale by 4 so midpoints are even and the +-1 nudges stay clear
            // of every existing endpoint.
            let n = merged.len() as i64;
            let scaled: BTreeMap<VertexId, Interval> = merged
                .intervals
                .iter()
                .map(|(&u, iv)| (u, Interval::new(4 * iv.left, 4 * iv.right)))
                .collect();
            let placed: Vec<(i64, VertexId, Side)> = other
                .endpoints()
                .into_iter()
                .filter(|&(_, u, _)| u != v && scaled.contains_key(&u))
                .collect();
            let image = |(_, u, side): (i64, VertexId, Side)| match side {
                Side::Left => scaled[&u].left,
                Side::Right => scaled[&u].right,
            };
            let target = other.intervals[&v];
            let midpoint = |x: i64| {
                let below = placed.iter().rev().find(|e| e.0 < x).copied().map(image);
                let above = placed.iter().find(|e| e.0 > x).copied().map(image);
                let p = below.unwrap_or(0);
                let q = above.unwrap_or(4 * (2 * n + 1));
                (p + q) / 2
            };
            let left = midpoint(target.left) - 1;
            let right = midpoint(target.right) + 1;
            let mut next = scaled;
            next.insert(v, Interval::new(left, right));
            merged = IntervalModel { intervals: next }.normalize();
        }
        debug_assert!(merged.is_consistent_with(self) && merged.is_consistent_with(other));
        Ok(merged)
    }
}

/// Edge-set intersection of models that share one vertex set.
pub fn intersect_models(models: &[IntervalModel]) -> Result<Graph, ModelError> {
    let first = models.first().ok_or(ModelError::NoModels)?;
    let vs = first.vertex_set();
    if models.iter().any(|m| m.vertex_set() != vs) {
        return Err(ModelError::VertexSetMismatch);
    }
    let mut edges = Vec::new();
    let order: Vec<VertexId> = vs.iter().copied().collect();
    for (i, &u) in order.iter().enumerate() {
        for &v in &order[i + 1..] {
            if models.iter().all(|m| m.adjacent(u, v)) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(vs, edges).expect("distinct vertices never self-loop"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(t: &[(VertexId, i64, i64)]) -> IntervalModel {
        IntervalModel::from_triples(t.iter().copied()).unwrap()
    }

    fn edges(g: &Graph) -> Vec<(VertexId, VertexId)> {
        g.edges().collect()
    }

    #[test]
    fn rejects_invalid_models() {
        assert!(matches!(
            IntervalModel::from_triples([(0, 3, 3)]),
            Err(ModelError::BadInterval { .. })
        ));
        assert!(matches!(
            IntervalModel::from_triples([(0, 1, 3), (1, 3, 4)]),
            Err(ModelError::SharedEndpoint { value: 3, .. })
        ));
    }

    #[test]
    fn graph_of_model() {
        let m = model(&[(0, 1, 4), (1, 2, 6), (2, 5, 8)]);
        assert_eq!(edges(&m.to_graph()), vec![(0, 1), (1, 2)]);
        let m = model(&[(0, 1, 2), (1, 3, 4)]);
        assert_eq!(m.to_graph().edge_count(), 0);
        let m = model(&[(0, 1, 8), (1, 2, 3), (2, 4, 5)]);
        assert_eq!(edges(&m.to_graph()), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn consistency_examples() {
        let m = model(&[(0, 1, 3), (1, 2, 4)]);
        assert!(m.is_consistent_with(&m));
        assert!(
            model(&[(0, 1, 2), (1, 3, 4)]).is_consistent_with(&model(&[(0, 10, 20), (1, 30, 40)]))
        );
        assert!(!m.is_consistent_with(&model(&[(0, 3, 4), (1, 1, 2)])));
        assert!(model(&[(0, 1, 2)]).is_consistent_with(&model(&[(1, 5, 9)])));
    }

    #[test]
    fn merge_subset_keeps_order() {
        let m1 = model(&[(0, 1, 5), (1, 2, 3), (2, 4, 6)]);
        let m2 = model(&[(0, 10, 50), (2, 40, 60)]);
        let merged = m1.merge_consistent(&m2).unwrap();
        assert_eq!(merged, m1.normalize());
    }

    #[test]
    fn merge_disjoint() {
        let merged = model(&[(0, 1, 2)])
            .merge_consistent(&model(&[(1, 1, 2)]))
            .unwrap();
        assert_eq!(merged.vertex_set(), BTreeSet::from([0, 1]));
        assert!(merged.is_normalized());
    }

    #[test]
    fn merge_overlapping_example() {
        let m1 = model(&[(0, 1, 4), (1, 2, 6)]);
        let m2 = model(&[(1, 1, 3), (2, 2, 5)]);
        let merged = m1.merge_consistent(&m2).unwrap();
        assert!(merged.is_consistent_with(&m1));
        assert!(merged.is_consistent_with(&m2));
        let g = merged.to_graph();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2));
        // Hand-run of the midpoint rule: c lands on [11, 19] against a = [4, 12]
        // after scaling, so a and c overlap.
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn merge_rejects_inconsistent() {
        let m1 = model(&[(0, 1, 3), (1, 2, 4)]);
        let m2 = model(&[(0, 3, 4), (1, 1, 2)]);
        assert_eq!(
            m1.merge_consistent(&m2),
            Err(ModelError::InconsistentModels(0, 1))
        );
    }

    #[test]
    fn normalize_rank_map() {
        let m = model(&[(0, 10, 30), (1, 20, 40)]);
        assert_eq!(m.normalize(), model(&[(0, 1, 3), (1, 2, 4)]));
        let n = m.normalize();
        assert_eq!(n.normalize(), n);
    }

    #[test]
    fn restrict_cases() {
        let m = model(&[(0, 1, 5), (1, 2, 3), (2, 4, 6)]);
        assert_eq!(m.restrict(&m.vertex_set()).unwrap(), m);
        let r = m.restrict(&BTreeSet::from([0, 2])).unwrap();
        assert_eq!(r.get(2), Some(Interval::new(4, 6)));
        assert!(r.is_consistent_with(&m));
        assert!(m.restrict(&BTreeSet::new()).unwrap().is_empty());
        assert_eq!(
            m.restrict(&BTreeSet::from([7])),
            Err(ModelError::UnknownVertex(7))
        );
    }

    #[test]
    fn intersect_cases() {
        let m = model(&[(0, 1, 4), (1, 2, 6), (2, 5, 8)]);
        assert_eq!(
            intersect_models(std::slice::from_ref(&m)).unwrap(),
            m.to_graph()
        );
        assert_eq!(
            intersect_models(&[m.clone(), m.clone()]).unwrap(),
            m.to_graph()
        );
        assert_eq!(intersect_models(&[]), Err(ModelError::NoModels));
        assert_eq!(
            intersect_models(&[m, model(&[(0, 1, 2)])]),
            Err(ModelError::VertexSetMismatch)
        );
    }

    #[test]
    fn closed_intervals_with_ties() {
        let raw = BTreeMap::from([
            (0, Interval::new(0, 5)),
            (1, Interval::new(5, 9)),
            (2, Interval::new(7, 7)),
            (3, Interval::new(10, 11)),
        ]);
        let m = IntervalModel::from_closed_intervals(&raw).unwrap();
        assert!(m.is_normalized());
        assert_eq!(edges(&m.to_graph()), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn json_shape() {
        let m = model(&[(3, 1, 4), (7, 2, 6)]);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"3":[1,4],"7":[2,6]}"#);
        let back: IntervalModel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<IntervalModel>(r#"{"1":[1,4],"2":[4,6]}"#).is_err());
    }
}
