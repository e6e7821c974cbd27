//! Box representations: a `d`-dimensional axis-aligned box per vertex.
//!
//! A representation is the same thing as a `d`-tuple of interval models over
//! one vertex set; [`BoxRepresentation::to_models`] and
//! [`BoxRepresentation::from_models`] convert between the two views.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::interval::{Interval, IntervalModel, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoxError {
    #[error("box of vertex {vertex} has {found} intervals, expected {expected}")]
    WrongArity {
        vertex: VertexId,
        expected: usize,
        found: usize,
    },
    #[error("dimension {dimension}: {source}")]
    Dimension {
        dimension: usize,
        #[source]
        source: ModelError,
    },
    #[error("representation covers vertex {0}, which is not in the graph")]
    ExtraVertex(VertexId),
    #[error("representation is missing vertex {0}")]
    MissingVertex(VertexId),
    #[error("models are over different vertex sets")]
    VertexSetMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BoxJson", into = "BoxJson")]
pub struct BoxRepresentation {
    dim: usize,
    boxes: BTreeMap<VertexId, Vec<Interval>>,
}

#[derive(Serialize, Deserialize)]
struct BoxJson {
    d: usize,
    boxes: BTreeMap<VertexId, Vec<Interval>>,
}

impl TryFrom<BoxJson> for BoxRepresentation {
    type Error = BoxError;

    fn try_from(j: BoxJson) -> Result<Self, BoxError> {
        BoxRepresentation::new(j.d, j.boxes)
    }
}

impl From<BoxRepresentation> for BoxJson {
    fn from(r: BoxRepresentation) -> Self {
        BoxJson {
            d: r.dim,
            boxes: r.boxes,
        }
    }
}

/// Outcome of checking a representation against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Valid,
    /// `uv` is an edge but the boxes are separated in `dimension`.
    MissingAdjacency {
        u: VertexId,
        v: VertexId,
        dimension: usize,
    },
    /// `uv` is not an edge but the boxes intersect.
    SpuriousAdjacency {
        u: VertexId,
        v: VertexId,
    },
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

impl BoxRepresentation {
    pub fn new(dim: usize, boxes: BTreeMap<VertexId, Vec<Interval>>) -> Result<Self, BoxError> {
        for (&v, b) in &boxes {
            if b.len() != dim {
                return Err(BoxError::WrongArity {
                    vertex: v,
                    expected: dim,
                    found: b.len(),
                });
            }
        }
        let rep = BoxRepresentation { dim, boxes };
        for i in 0..dim {
            IntervalModel::new(rep.column(i)).map_err(|source| BoxError::Dimension {
                dimension: i,
                source,
            })?;
        }
        Ok(rep)
    }

    /// Zero-dimensional representation: every pair of (empty-product) boxes
    /// intersects, so it represents exactly the complete graphs.
    pub fn trivial<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        BoxRepresentation {
            dim: 0,
            boxes: vertices.into_iter().map(|v| (v, Vec::new())).collect(),
        }
    }

    fn column(&self, i: usize) -> BTreeMap<VertexId, Interval> {
        self.boxes.iter().map(|(&v, b)| (v, b[i])).collect()
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Option<&[Interval]> {
        self.boxes.get(&v).map(Vec::as_slice)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.boxes.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &[Interval])> + '_ {
        self.boxes.iter().map(|(&v, b)| (v, b.as_slice()))
    }

    pub fn boxes_intersect(&self, u: VertexId, v: VertexId) -> bool {
        match (self.boxes.get(&u), self.boxes.get(&v)) {
            (Some(a), Some(b)) => a.iter().zip(b).all(|(x, y)| x.intersects(y)),
            _ => false,
        }
    }

    /// The intersection graph of the boxes.
    pub fn to_graph(&self) -> Graph {
        let vs: Vec<VertexId> = self.boxes.keys().copied().collect();
        let mut edges = Vec::new();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if self.boxes_intersect(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(vs, edges).expect("distinct vertices never self-loop")
    }

    /// Checks `uv in E(g) <=> boxes of u and v intersect` for every pair.
    /// On failure reports the first violating pair in lexicographic order.
    pub fn verify(&self, g: &Graph) -> Result<Verification, BoxError> {
        if let Some(v) = self.vertices().find(|&v| !g.contains(v)) {
            return Err(BoxError::ExtraVertex(v));
        }
        if let Some(v) = g.vertices().find(|&v| !self.boxes.contains_key(&v)) {
            return Err(BoxError::MissingVertex(v));
        }
        let vs: Vec<VertexId> = g.vertices().collect();
        for (i, &u) in vs.iter().enumerate() {
            let bu = &self.boxes[&u];
            for &v in &vs[i + 1..] {
                let bv = &self.boxes[&v];
                let separating = bu.iter().zip(bv).position(|(x, y)| !x.intersects(y));
                match (g.has_edge(u, v), separating) {
                    (true, Some(dimension)) => {
                        return Ok(Verification::MissingAdjacency { u, v, dimension })
                    }
                    (false, None) => return Ok(Verification::SpuriousAdjacency { u, v }),
                    _ => {}
                }
            }
        }
        Ok(Verification::Valid)
    }

    /// One interval model per dimension.
    pub fn to_models(&self) -> Vec<IntervalModel> {
        (0..self.dim)
            .map(|i| IntervalModel::new(self.column(i)).expect("validated on construction"))
            .collect()
    }

    /// Stacks models over a common vertex set as dimensions.
    pub fn from_models(models: &[IntervalModel]) -> Result<Self, BoxError> {
        let Some(first) = models.first() else {
            return Ok(BoxRepresentation::trivial([]));
        };
        let vs: BTreeSet<VertexId> = first.vertex_set();
        if models.iter().any(|m| m.vertex_set() != vs) {
            return Err(BoxError::VertexSetMismatch);
        }
        let boxes = vs
            .iter()
            .map(|&v| {
                (
                    v,
                    models
                        .iter()
                        .map(|m| m.get(v).expect("same vertex set"))
                        .collect(),
                )
            })
            .collect();
        Ok(BoxRepresentation {
            dim: models.len(),
            boxes,
        })
    }

    /// Rank-normalizes every dimension independently.
    pub fn normalize(&self) -> BoxRepresentation {
        let models: Vec<IntervalModel> = self
            .to_models()
            .iter()
            .map(IntervalModel::normalize)
            .collect();
        if models.is_empty() {
            return self.clone();
        }
        BoxRepresentation::from_models(&models).expect("same vertex set")
    }
}
