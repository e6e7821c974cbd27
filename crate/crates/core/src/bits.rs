//! Dense bit encodings for small vertex sets: vertex masks in a `u32`,
//! vertex-pair (edge) masks in a `u128`. Limits the exhaustive searches to
//! 16 vertices.

use crate::graph::{Graph, VertexId};

pub(crate) const MAX_DENSE_VERTICES: usize = 16;

/// Bit index of the pair `{i, j}` (`i != j`).
#[inline]
pub(crate) fn pair_bit(i: usize, j: usize) -> u32 {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    (hi * (hi - 1) / 2 + lo) as u32
}

#[inline]
pub(crate) fn pair_mask(i: usize, j: usize) -> u128 {
    1u128 << pair_bit(i, j)
}

/// Mask of all pairs between `v` and the vertices in `set`.
#[inline]
pub(crate) fn star_mask(v: usize, set: u32) -> u128 {
    let mut m = 0u128;
    let mut rest = set & !(1 << v);
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        m |= pair_mask(u, v);
        rest &= rest - 1;
    }
    m
}

pub(crate) fn complete_mask(n: usize) -> u128 {
    if n < 2 {
        0
    } else {
        let pairs = n * (n - 1) / 2;
        if pairs == 128 {
            u128::MAX
        } else {
            (1u128 << pairs) - 1
        }
    }
}

/// A graph on at most 16 vertices re-indexed densely by ascending id.
#[derive(Debug, Clone)]
pub(crate) struct DenseGraph {
    pub ids: Vec<VertexId>,
    pub nbrs: Vec<u32>,
    pub edges: u128,
}

impl DenseGraph {
    pub fn new(g: &Graph) -> Option<Self> {
        let ids: Vec<VertexId> = g.vertices().collect();
        Self::on(g, &ids)
    }

    /// Induced subgraph on `ids` (ascending, all present in `g`).
    pub fn on(g: &Graph, ids: &[VertexId]) -> Option<Self> {
        if ids.len() > MAX_DENSE_VERTICES {
            return None;
        }
        let mut nbrs = vec![0u32; ids.len()];
        let mut edges = 0u128;
        for (i, &u) in ids.iter().enumerate() {
            for (j, &v) in ids.iter().enumerate().skip(i + 1) {
                if g.has_edge(u, v) {
                    nbrs[i] |= 1 << j;
                    nbrs[j] |= 1 << i;
                    edges |= pair_mask(i, j);
                }
            }
        }
        Some(DenseGraph {
            ids: ids.to_vec(),
            nbrs,
            edges,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn to_graph(&self, edges: u128) -> Graph {
        let n = self.len();
        let mut list = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if edges & pair_mask(i, j) != 0 {
                    list.push((self.ids[i], self.ids[j]));
                }
            }
        }
        Graph::from_edges(self.ids.iter().copied(), list).expect("dense ids are distinct")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_bits_are_a_bijection() {
        let n = 16;
        let mut seen = std::collections::BTreeSet::new();
        for j in 1..n {
            for i in 0..j {
                assert!(seen.insert(pair_bit(i, j)));
                assert_eq!(pair_bit(i, j), pair_bit(j, i));
            }
        }
        assert_eq!(seen.len(), 120);
        assert_eq!(*seen.iter().next_back().unwrap(), 119);
        assert_eq!(complete_mask(16).count_ones(), 120);
        assert_eq!(complete_mask(1), 0);
    }

    #[test]
    fn dense_round_trip() {
        let g = Graph::from_edges([10, 20, 30], [(10, 30)]).unwrap();
        let d = DenseGraph::new(&g).unwrap();
        assert_eq!(d.nbrs, vec![0b100, 0, 0b001]);
        assert_eq!(d.to_graph(d.edges), g);
        assert_eq!(star_mask(1, 0b111), pair_mask(0, 1) | pair_mask(1, 2));
    }
}
