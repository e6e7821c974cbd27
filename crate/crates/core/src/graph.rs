//! Simple undirected graphs over integer vertex ids.
//!
//! Graphs are values: every reduction returns a new graph and never renames the
//! surviving vertices, so a kernel can always be traced back to its input.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("not a cluster graph: ({}, {}, {}) induces a P3", .witness.0, .witness.1, .witness.2)]
    NotClusterGraph {
        witness: (VertexId, VertexId, VertexId),
    },
    #[error("labeling does not cover vertex {0}")]
    UnlabeledVertex(VertexId),
    #[error("labeling assigns position {position} to both {first} and {second}")]
    DuplicateLabel {
        position: i64,
        first: VertexId,
        second: VertexId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.adj.keys().collect::<Vec<_>>())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from a vertex list and an edge list. Edge endpoints are
    /// added to the vertex set implicitly; duplicate edges collapse.
    pub fn from_edges<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.adj.entry(v).or_default();
        }
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Edgeless graph on `0..n`.
    pub fn empty(n: u32) -> Self {
        Graph {
            adj: (0..n).map(|v| (v, BTreeSet::new())).collect(),
        }
    }

    /// Complete graph on `0..n`.
    pub fn complete(n: u32) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.link(u, v);
            }
        }
        g
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: u32) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.link(v - 1, v);
        }
        g
    }

    /// Cycle on `0..n`; needs `n >= 3`.
    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut g = Graph::path(n);
        g.link(n - 1, 0);
        g
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: u32, b: u32) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.link(u, v);
            }
        }
        g
    }

    /// Disjoint union; vertex ids of `other` are shifted past the largest id of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.adj.keys().next_back().map_or(0, |&v| v + 1);
        let mut g = self.clone();
        for v in other.vertices() {
            g.adj.entry(v + offset).or_default();
        }
        for (u, v) in other.edges() {
            g.link(u + offset, v + offset);
        }
        g
    }

    pub fn with_edge(mut self, u: VertexId, v: VertexId) -> Result<Self, GraphError> {
        self.insert_edge(u, v)?;
        Ok(self)
    }

    fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.link(u, v);
        Ok(())
    }

    fn link(&mut self, u: VertexId, v: VertexId) {
        debug_assert_ne!(u, v);
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    /// Neighbourhood of `v`; empty for unknown vertices.
    pub fn neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        static EMPTY: BTreeSet<VertexId> = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    /// True for complete graphs, including the empty graph and K1.
    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.values().all(|ns| ns.len() + 1 == n)
    }

    pub fn induced_subgraph(&self, s: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
        if let Some(&v) = s.iter().find(|v| !self.contains(**v)) {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(self.restrict_unchecked(s))
    }

    fn restrict_unchecked(&self, s: &BTreeSet<VertexId>) -> Graph {
        Graph {
            adj: s
                .iter()
                .map(|&v| {
                    let ns = self.adj[&v]
                        .iter()
                        .copied()
                        .filter(|u| s.contains(u))
                        .collect();
                    (v, ns)
                })
                .collect(),
        }
    }

    /// `G - s`. Unknown ids in `s` are ignored.
    pub fn without_vertices(&self, s: &BTreeSet<VertexId>) -> Graph {
        let keep: BTreeSet<VertexId> = self.vertices().filter(|v| !s.contains(v)).collect();
        self.restrict_unchecked(&keep)
    }

    pub fn without_vertex(&self, v: VertexId) -> Graph {
        self.without_vertices(&BTreeSet::from([v]))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Lexicographically smallest ordered triple `(a, b, c)` with `ab`, `bc`
    /// edges and `ac` a non-edge; `None` iff the graph is a cluster graph.
    pub fn find_induced_p3(&self) -> Option<(VertexId, VertexId, VertexId)> {
        for (&a, na) in &self.adj {
            for &b in na {
                for &c in self.neighbors(b) {
                    if c != a && !na.contains(&c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// All true-twin pairs `(u, v)`, `u < v`: adjacent with `N(u) - v = N(v) - u`.
    pub fn true_twin_pairs(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges()
            .filter(|&(u, v)| self.are_true_twins(u, v))
            .collect()
    }

    pub fn are_true_twins(&self, u: VertexId, v: VertexId) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        let nu = self.neighbors(u);
        let nv = self.neighbors(v);
        nu.len() == nv.len()
            && nu
                .iter()
                .filter(|&&w| w != v)
                .eq(nv.iter().filter(|&&w| w != u))
    }

    /// Lexicographically smallest true-twin pair, if any.
    pub fn first_true_twin_pair(&self) -> Option<(VertexId, VertexId)> {
        self.edges().find(|&(u, v)| self.are_true_twins(u, v))
    }

    /// Partition of a cluster graph into its cliques, ordered by smallest vertex.
    pub fn clusters(&self) -> Result<Vec<Vec<VertexId>>, GraphError> {
        if let Some(witness) = self.find_induced_p3() {
            return Err(GraphError::NotClusterGraph { witness });
        }
        let comps = self.components();
        debug_assert!(comps
            .iter()
            .all(|c| c.iter().all(|&v| self.degree(v) + 1 == c.len())));
        Ok(comps)
    }

    /// Longest edge stretch `max |lab(u) - lab(v)|` under a labeling; 0 when edgeless.
    pub fn bandwidth_of_labeling(&self, lab: &Labeling) -> Result<u64, GraphError> {
        if let Some(v) = self.vertices().find(|v| lab.get(*v).is_none()) {
            return Err(GraphError::UnlabeledVertex(v));
        }
        Ok(self
            .edges()
            .map(|(u, v)| lab.position[&u].abs_diff(lab.position[&v]))
            .max()
            .unwrap_or(0))
    }

    /// Canonical edge-list text: an optional `vertices:` header naming the
    /// isolated vertices, then one `u v` line per edge with `u < v`, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let isolated: Vec<VertexId> = self.vertices().filter(|&v| self.degree(v) == 0).collect();
        if !isolated.is_empty() {
            out.push_str("vertices:");
            for v in isolated {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list format. Blank lines and `#` comments are skipped.
    pub fn from_edge_list(text: &str) -> Result<Graph, ParseError> {
        let mut g = Graph::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| ParseError {
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                for tok in rest.split_whitespace() {
                    let v = parse_id(tok).map_err(err)?;
                    g.adj.entry(v).or_default();
                }
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(err(format!(
                    "expected two vertex ids, found {}",
                    toks.len()
                )));
            }
            let u = parse_id(toks[0]).map_err(err)?;
            let v = parse_id(toks[1]).map_err(err)?;
            g.insert_edge(u, v).map_err(|e| err(e.to_string()))?;
        }
        Ok(g)
    }
}

fn parse_id(tok: &str) -> Result<VertexId, String> {
    tok.parse::<VertexId>()
        .map_err(|_| format!("invalid vertex id {tok:?}"))
}

/// Injective assignment of integer positions to vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    position: BTreeMap<VertexId, i64>,
}

impl Labeling {
    pub fn new(position: BTreeMap<VertexId, i64>) -> Result<Self, GraphError> {
        let mut owner: BTreeMap<i64, VertexId> = BTreeMap::new();
        for (&v, &p) in &position {
            if let Some(&first) = owner.get(&p) {
                return Err(GraphError::DuplicateLabel {
                    position: p,
                    first,
                    second: v,
                });
            }
            owner.insert(p, v);
        }
        Ok(Labeling { position })
    }

    /// Labels vertices `order[i] -> i + 1`.
    pub fn from_order(order: &[VertexId]) -> Result<Self, GraphError> {
        let mut position = BTreeMap::new();
        for (i, &v) in order.iter().enumerate() {
            if let Some(prev) = position.insert(v, i as i64 + 1) {
                return Err(GraphError::DuplicateLabel {
                    position: prev,
                    first: v,
                    second: v,
                });
            }
        }
        Ok(Labeling { position })
    }

    pub fn get(&self, v: VertexId) -> Option<i64> {
        self.position.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.position.is_empty()
    }

    /// Vertices sorted by position.
    pub fn order(&self) -> Vec<VertexId> {
        let mut vs: Vec<(i64, VertexId)> = self.position.iter().map(|(&v, &p)| (p, v)).collect();
        vs.sort_unstable();
        vs.into_iter().map(|(_, v)| v).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, i64)> + '_ {
        self.position.iter().map(|(&v, &p)| (v, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[VertexId]) -> BTreeSet<VertexId> {
        vs.iter().copied().collect()
    }

    #[test]
    fn induced_subgraph_cases() {
        let k3 = Graph::complete(3);
        let k2 = k3.induced_subgraph(&set(&[1, 2])).unwrap();
        assert_eq!(k2, Graph::from_edges([], [(1, 2)]).unwrap());

        let p4 = Graph::path(4);
        let two = p4.induced_subgraph(&set(&[0, 2])).unwrap();
        assert_eq!(two.vertex_count(), 2);
        assert_eq!(two.edge_count(), 0);

        let c4 = Graph::cycle(4);
        assert_eq!(c4.induced_subgraph(&c4.vertex_set()).unwrap(), c4);

        assert_eq!(
            c4.induced_subgraph(&set(&[0, 9])),
            Err(GraphError::UnknownVertex(9))
        );
    }

    #[test]
    fn p3_detection() {
        assert_eq!(Graph::path(3).find_induced_p3(), Some((0, 1, 2)));
        let k3_k2 = Graph::complete(3).disjoint_union(&Graph::complete(2));
        assert_eq!(k3_k2.find_induced_p3(), None);
        let (a, b, c) = Graph::cycle(4).find_induced_p3().unwrap();
        let c4 = Graph::cycle(4);
        assert!(c4.has_edge(a, b) && c4.has_edge(b, c) && !c4.has_edge(a, c));
        assert_eq!((a, b, c), (0, 1, 2));
    }

    #[test]
    fn twins() {
        assert_eq!(
            Graph::complete(2).true_twin_pairs(),
            BTreeSet::from([(0, 1)])
        );
        assert!(Graph::cycle(4).true_twin_pairs().is_empty());
        assert_eq!(
            Graph::complete(3).true_twin_pairs(),
            BTreeSet::from([(0, 1), (0, 2), (1, 2)])
        );
    }

    #[test]
    fn cluster_partition() {
        let g = Graph::from_edges([1, 2, 3, 4], [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(g.clusters().unwrap(), vec![vec![1, 2, 3], vec![4]]);
        assert_eq!(
            Graph::path(3).clusters(),
            Err(GraphError::NotClusterGraph { witness: (0, 1, 2) })
        );
        assert_eq!(
            Graph::empty(3).clusters().unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn labeling_bandwidth() {
        let p3 = Graph::path(3);
        let lab = Labeling::from_order(&[0, 1, 2]).unwrap();
        assert_eq!(p3.bandwidth_of_labeling(&lab), Ok(1));

        let c4 = Graph::cycle(4);
        let lab = Labeling::from_order(&[0, 1, 2, 3]).unwrap();
        assert_eq!(c4.bandwidth_of_labeling(&lab), Ok(3));

        assert_eq!(
            Graph::empty(3).bandwidth_of_labeling(&Labeling::from_order(&[0, 1, 2]).unwrap()),
            Ok(0)
        );

        let partial = Labeling::from_order(&[0, 1]).unwrap();
        assert_eq!(
            p3.bandwidth_of_labeling(&partial),
            Err(GraphError::UnlabeledVertex(2))
        );
        assert!(Labeling::new(BTreeMap::from([(0, 5), (1, 5)])).is_err());
    }

    #[test]
    fn edge_list_io() {
        let g = Graph::from_edge_list("1 2\n2 3").unwrap();
        assert_eq!(g, Graph::from_edges([], [(1, 2), (2, 3)]).unwrap());
        assert_eq!(Graph::from_edge_list("").unwrap(), Graph::new());

        let messy = "# comment\n3 2\n\n2 1\nvertices: 7 1\n1 2\n";
        let g = Graph::from_edge_list(messy).unwrap();
        assert_eq!(g.to_edge_list(), "vertices: 7\n1 2\n2 3\n");
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);

        let err = Graph::from_edge_list("1 2\n1 x\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = Graph::from_edge_list("1 2 3").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(Graph::from_edge_list("4 4").is_err());
    }

    #[test]
    fn complete_detection() {
        assert!(Graph::new().is_complete());
        assert!(Graph::empty(1).is_complete());
        assert!(Graph::complete(4).is_complete());
        assert!(!Graph::path(3).is_complete());
    }
}
