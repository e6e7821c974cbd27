//! Path decompositions: validation, normalization, the interval model they
//! induce, and two ways of obtaining one (sliding windows over a labelling,
//! and an exact search for small graphs).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Graph, GraphError, Labeling, ParseError, VertexId};
use crate::interval::{Interval, IntervalModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdError {
    #[error("bag {bag} contains vertex {vertex}, which is not in the graph")]
    UnknownVertex { bag: usize, vertex: VertexId },
    #[error("vertex {0} is in no bag")]
    UncoveredVertex(VertexId),
    #[error("edge {0}-{1} is in no bag")]
    UncoveredEdge(VertexId, VertexId),
    #[error("vertex {vertex} occurs in bags {first} and {later} but not in bag {gap}")]
    BrokenContiguity {
        vertex: VertexId,
        first: usize,
        gap: usize,
        later: usize,
    },
    #[error("labelling has bandwidth {bandwidth}, above the requested width {width}")]
    BandwidthExceedsWidth { bandwidth: u64, width: usize },
    #[error(transparent)]
    Labeling(#[from] GraphError),
}

/// An ordered sequence of bags. Bag indices in errors and in
/// [`star_model`] are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathDecomposition {
    bags: Vec<BTreeSet<VertexId>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<BTreeSet<VertexId>>) -> Self {
        PathDecomposition { bags }
    }

    pub fn from_bags<I, B>(bags: I) -> Self
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = VertexId>,
    {
        PathDecomposition {
            bags: bags.into_iter().map(|b| b.into_iter().collect()).collect(),
        }
    }

    pub fn bags(&self) -> &[BTreeSet<VertexId>] {
        &self.bags
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Largest bag size minus one (0 when there are no non-empty bags).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Drops empty bags and bags contained in a neighbouring bag. On a valid
    /// decomposition every remaining bag introduces a new vertex, so there
    /// are at most `n` bags, and validity is preserved.
    pub fn normalized(&self) -> PathDecomposition {
        let mut bags: Vec<BTreeSet<VertexId>> = self
            .bags
            .iter()
            .filter(|b| !b.is_empty())
            .cloned()
            .collect();
        loop {
            let redundant = (0..bags.len()).find(|&i| {
                (i > 0 && bags[i].is_subset(&bags[i - 1]))
                    || (i + 1 < bags.len() && bags[i].is_subset(&bags[i + 1]))
            });
            match redundant {
                Some(i) => {
                    bags.remove(i);
                }
                None => break,
            }
        }
        PathDecomposition { bags }
    }

    /// Text form: one bag per line, ids separated by whitespace. Blank lines
    /// are empty bags; lines starting with `#` are ignored.
    pub fn from_text(text: &str) -> Result<PathDecomposition, ParseError> {
        let mut bags = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.starts_with('#') {
                continue;
            }
            let bag = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<VertexId>().map_err(|_| ParseError {
                        line: i + 1,
                        message: format!("not a vertex id: {tok:?}"),
                    })
                })
                .collect::<Result<BTreeSet<_>, _>>()?;
            bags.push(bag);
        }
        // Trailing blank lines carry no bags.
        while bags.last().is_some_and(BTreeSet::is_empty) {
            bags.pop();
        }
        Ok(PathDecomposition { bags })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.bags {
            let ids: Vec<String> = b.iter().map(u32::to_string).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }

    /// First and last (1-based) bag containing `v`.
    pub fn span(&self, v: VertexId) -> Option<(usize, usize)> {
        let first = self.bags.iter().position(|b| b.contains(&v))?;
        let last = self.bags.iter().rposition(|b| b.contains(&v))?;
        Some((first + 1, last + 1))
    }
}

/// Checks the three decomposition axioms and returns the width.
pub fn validate_pd(g: &Graph, pd: &PathDecomposition) -> Result<usize, PdError> {
    for (i, bag) in pd.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| !g.contains(v)) {
            return Err(PdError::UnknownVertex {
                bag: i + 1,
                vertex: v,
            });
        }
    }
    let mut spans: BTreeMap<VertexId, (usize, usize)> = BTreeMap::new();
    for v in g.vertices() {
        let (first, last) = pd.span(v).ok_or(PdError::UncoveredVertex(v))?;
        if let Some(gap) = (first..=last).find(|&i| !pd.bags[i - 1].contains(&v)) {
            return Err(PdError::BrokenContiguity {
                vertex: v,
                first,
                gap,
                later: last,
            });
        }
        spans.insert(v, (first, last));
    }
    for (u, v) in g.edges() {
        let (a, b) = (spans[&u], spans[&v]);
        if a.0.max(b.0) > a.1.min(b.1) {
            return Err(PdError::UncoveredEdge(u, v));
        }
    }
    Ok(pd.width())
}

/// The interval graph of a decomposition: vertices adjacent iff they share a
/// bag. Each vertex spans its first to last bag; touching spans are
/// resolved as overlapping.
pub fn star_model(pd: &PathDecomposition) -> IntervalModel {
    let mut spans: BTreeMap<VertexId, Interval> = BTreeMap::new();
    for (i, bag) in pd.bags.iter().enumerate() {
        let i = i as i64 + 1;
        for &v in bag {
            spans
                .entry(v)
                .and_modify(|iv| iv.right = i)
                .or_insert(Interval::new(i, i));
        }
    }
    IntervalModel::from_closed_intervals(&spans).expect("spans are ordered")
}

/// Consecutive windows of `width + 1` vertices in label order.
pub fn window_pd(g: &Graph, lab: &Labeling, width: usize) -> Result<PathDecomposition, PdError> {
    let bandwidth = g.bandwidth_of_labeling(lab)?;
    if bandwidth > width as u64 {
        return Err(PdError::BandwidthExceedsWidth { bandwidth, width });
    }
    let order = lab.order();
    let size = width + 1;
    if order.len() <= size {
        return Ok(PathDecomposition::from_bags([order]));
    }
    Ok(PathDecomposition::from_bags(
        order.windows(size).map(|w| w.to_vec()),
    ))
}

/// A minimum-width decomposition via vertex separation over subsets;
/// `None` above 20 vertices.
pub fn optimal_path_decomposition(g: &Graph) -> Option<PathDecomposition> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    if n > 20 {
        return None;
    }
    if n == 0 {
        return Some(PathDecomposition::default());
    }
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nbrs: Vec<u32> = ids
        .iter()
        .map(|&v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << index[u]))
        .collect();
    let boundary = |set: u32| -> u32 {
        (0..n)
            .filter(|&v| set & (1 << v) != 0 && nbrs[v] & !set != 0)
            .count() as u32
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    // cost[s]: best achievable max boundary over the prefixes building s.
    let mut cost = vec![u32::MAX; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    cost[0] = 0;
    for set in 1..=full {
        let b = boundary(set);
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let prev = set & !(1 << v);
            let c = cost[prev as usize].max(b);
            if c < cost[set as usize] {
                cost[set as usize] = c;
                choice[set as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = choice[set as usize];
        order.push(v as usize);
        set &= !(1 << v);
    }
    order.reverse();
    // Bag i: the i-th vertex plus every earlier vertex with a neighbour at
    // or after position i.
    let mut later = full;
    let mut placed = 0u32;
    let mut bags = Vec::with_capacity(n);
    for &v in &order {
        let mut bag = BTreeSet::from([ids[v]]);
        for u in 0..n {
            if placed & (1 << u) != 0 && nbrs[u] & later != 0 {
                bag.insert(ids[u]);
            }
        }
        bags.push(bag);
        placed |= 1 << v;
        later &= !(1 << v);
    }
    Some(PathDecomposition { bags }.normalized())
}
