//! Kernelization for boxicity parameterized by cluster vertex deletion.
//!
//! Pipeline: a greedy deletion set `X` hitting every induced P3, removal of
//! true twins, grouping of the clusters of `G - X` by the set of
//! neighbourhoods they see in `X`, and deletion of whole clusters from
//! classes larger than a bound depending only on `|X|`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::oracle::{brute_force_boxicity, OracleError};

/// Kernels above this size are not handed to the exact search.
pub const FPT_ORACLE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("vertices {0} and {1} are true twins")]
    TwinsPresent(VertexId, VertexId),
    #[error("G - X is not a cluster graph: {0}")]
    NotClusterGraph(#[from] GraphError),
    #[error("kernel has {vertices} vertices; exact search is limited to {limit}")]
    KernelTooLarge { vertices: usize, limit: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Greedy 3-approximation: while an induced P3 remains, delete all three of
/// its vertices (lexicographically smallest P3 first).
pub fn cvd_3approx(g: &Graph) -> BTreeSet<VertexId> {
    let mut x = BTreeSet::new();
    let mut rest = g.clone();
    while let Some((a, b, c)) = rest.find_induced_p3() {
        x.extend([a, b, c]);
        rest = rest.without_vertices(&BTreeSet::from([a, b, c]));
    }
    x
}

/// Deletes the larger vertex of the lexicographically smallest true-twin
/// pair until no twins remain.
pub fn remove_true_twins(g: &Graph) -> Graph {
    let mut out = g.clone();
    while let Some((_, v)) = out.first_true_twin_pair() {
        out = out.without_vertex(v);
    }
    out
}

/// Clusters of `G - X` sharing one set of `X`-neighbourhoods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// `{N(v) ∩ X : v ∈ C}`, identical for every member cluster `C`.
    pub signature: BTreeSet<BTreeSet<VertexId>>,
    /// Member clusters, each sorted, ordered by smallest vertex.
    pub members: Vec<Vec<VertexId>>,
    /// For every member, its vertices keyed by `X`-neighbourhood; matching
    /// keys across members gives the bijection between clusters.
    pub by_neighbourhood: Vec<BTreeMap<BTreeSet<VertexId>, VertexId>>,
}

impl EquivalenceClass {
    /// The vertex of member `j` corresponding to `v` in member `i`.
    pub fn correspondent(&self, i: usize, v: VertexId, j: usize) -> Option<VertexId> {
        let key = self.by_neighbourhood[i].iter().find(|(_, &u)| u == v)?.0;
        self.by_neighbourhood[j].get(key).copied()
    }
}

/// Groups the clusters of `G - X`; needs a twin-free graph.
pub fn equivalence_classes(
    g: &Graph,
    x: &BTreeSet<VertexId>,
) -> Result<Vec<EquivalenceClass>, KernelError> {
    let clusters = g.without_vertices(x).clusters()?;
    let mut classes: Vec<EquivalenceClass> = Vec::new();
    let mut index: BTreeMap<BTreeSet<BTreeSet<VertexId>>, usize> = BTreeMap::new();
    for cluster in clusters {
        let mut map: BTreeMap<BTreeSet<VertexId>, VertexId> = BTreeMap::new();
        for &v in &cluster {
            let nx: BTreeSet<VertexId> = g.neighbors(v).intersection(x).copied().collect();
            if let Some(&u) = map.get(&nx) {
                return Err(KernelError::TwinsPresent(u, v));
            }
            map.insert(nx, v);
        }
        // No two vertices share an X-neighbourhood, so |C| <= 2^|X|.
        debug_assert!(x.len() >= 32 || cluster.len() <= 1usize << x.len());
        let signature: BTreeSet<BTreeSet<VertexId>> = map.keys().cloned().collect();
        let at = *index.entry(signature.clone()).or_insert_with(|| {
            classes.push(EquivalenceClass {
                signature,
                members: Vec::new(),
                by_neighbourhood: Vec::new(),
            });
            classes.len() - 1
        });
        classes[at].members.push(cluster);
        classes[at].by_neighbourhood.push(map);
    }
    Ok(classes)
}

/// Largest class size the trimming rule tolerates:
/// `2 (2k + 2)^(2^(k+1) (2^k + k + 1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassBound {
    Exact(BigUint),
    /// Too large to materialise; no graph that fits in memory reaches it.
    Astronomical {
        approx_bits: u64,
    },
}

impl ClassBound {
    pub fn for_deletion_set(k: usize) -> ClassBound {
        let k32 = k as u32;
        let base = 2 * k as u64 + 2;
        let exponent = 2f64.powi(k32 as i32 + 1) * (2f64.powi(k32 as i32) + k as f64 + 1.0);
        let bits = 1.0 + exponent * (base as f64).log2();
        if bits > (1u64 << 20) as f64 {
            return ClassBound::Astronomical {
                approx_bits: bits.min(u64::MAX as f64) as u64,
            };
        }
        let exponent = (1u64 << (k + 1)) * ((1u64 << k) + k as u64 + 1);
        let value = BigUint::from(base).pow(exponent as u32) * 2u32;
        ClassBound::Exact(value)
    }

    pub fn exceeded_by(&self, size: usize) -> bool {
        match self {
            ClassBound::Exact(b) => BigUint::from(size) > *b,
            ClassBound::Astronomical { .. } => false,
        }
    }
}

/// Deletes member clusters (largest smallest-vertex first) while a class
/// has more members than the bound. Returns the trimmed graph and the number
/// of clusters deleted per class.
pub fn trim_classes(
    g: &Graph,
    classes: &[EquivalenceClass],
    bound: &ClassBound,
) -> (Graph, Vec<usize>) {
    let mut doomed: BTreeSet<VertexId> = BTreeSet::new();
    let mut deleted = Vec::with_capacity(classes.len());
    for class in classes {
        let mut members: Vec<&Vec<VertexId>> = class.members.iter().collect();
        members.sort_by_key(|c| c[0]);
        let mut count = 0;
        while bound.exceeded_by(members.len()) {
            let victim = members.pop().expect("non-empty class");
            doomed.extend(victim.iter().copied());
            count += 1;
        }
        deleted.push(count);
    }
    (g.without_vertices(&doomed), deleted)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub signature_size: usize,
    pub members: usize,
    pub deleted: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    #[serde(rename = "X")]
    pub x: Vec<VertexId>,
    pub classes: Vec<ClassReport>,
    /// False when a threshold override replaced the proven bound.
    pub sound: bool,
}

/// Runs the whole pipeline with the proven bound, or with `override_bound`
/// (which makes the result unsound).
pub fn kernelize_with(
    g: &Graph,
    override_bound: Option<usize>,
) -> Result<(Graph, KernelReport), KernelError> {
    let x = cvd_3approx(g);
    let twin_free = remove_true_twins(g);
    let x: BTreeSet<VertexId> = x.into_iter().filter(|&v| twin_free.contains(v)).collect();
    let classes = equivalence_classes(&twin_free, &x)?;
    let bound = match override_bound {
        Some(b) => ClassBound::Exact(BigUint::from(b)),
        None => ClassBound::for_deletion_set(x.len()),
    };
    let (kernel, deleted) = trim_classes(&twin_free, &classes, &bound);
    let report = KernelReport {
        x: x.into_iter().collect(),
        classes: classes
            .iter()
            .zip(deleted)
            .map(|(c, deleted)| ClassReport {
                signature_size: c.signature.len(),
                members: c.members.len(),
                deleted,
            })
            .collect(),
        sound: override_bound.is_none(),
    };
    Ok((kernel, report))
}

pub fn kernelize(g: &Graph) -> Result<(Graph, KernelReport), KernelError> {
    kernelize_with(g, None)
}

/// Decides `box(g) <= d` by exact search on the kernel.
pub fn solve_fpt(g: &Graph, d: usize) -> Result<bool, KernelError> {
    let (kernel, _) = kernelize(g)?;
    let n = kernel.vertex_count();
    // Every graph has boxicity at most n / 2.
    if 2 * d >= n {
        return Ok(true);
    }
    if n > FPT_ORACLE_LIMIT {
        return Err(KernelError::KernelTooLarge {
            vertices: n,
            limit: FPT_ORACLE_LIMIT,
        });
    }
    Ok(brute_force_boxicity(&kernel, d)?.is_some())
}
