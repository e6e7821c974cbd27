//! Benchmark fixtures shared by the criterion targets.

use boxkit::{Graph, Labeling, PathDecomposition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded `G(n, p)`, so runs compare.
pub fn random_graph(n: u32, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(0..n, edges).expect("simple graph")
}

/// Seeded graph on `0..n` whose edges join only ids at distance at most
/// `band`, so the identity order has bandwidth at most `band`.
pub fn banded_graph(n: u32, band: u32, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n.min(u + band + 1) {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(0..n, edges).expect("simple graph")
}

/// Identity-order window decomposition of minimal width for `g`.
pub fn identity_windows(g: &Graph) -> PathDecomposition {
    let order: Vec<u32> = g.vertices().collect();
    let lab = Labeling::from_order(&order).expect("distinct ids");
    let width = g.bandwidth_of_labeling(&lab).expect("labelling covers g") as usize;
    boxkit::window_pd(g, &lab, width).expect("width equals bandwidth")
}
