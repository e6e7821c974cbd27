mod common;

use std::collections::BTreeSet;

use boxkit::kernel::{equivalence_classes, trim_classes, ClassBound};
use boxkit::{
    boxicity, build_block, build_gn, build_k2n, cvd_3approx, dp_feasible, dp_run,
    enumerate_canonical_models, gn_box_representation, intersect_models, kernelize,
    optimal_path_decomposition, recognize_interval, reconstruct, remove_true_twins, validate_pd,
    window_pd, BoxRepresentation, DpStrategy, Graph, Labeling, VertexId,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn small_graphs() -> Vec<Graph> {
    (0..=6).flat_map(graphs_up_to_iso).collect()
}

fn oracle_box(g: &Graph) -> usize {
    boxicity(g).unwrap().0
}

#[test]
fn isomorphism_class_counts() {
    let counts: Vec<usize> = (0..=6).map(|n| graphs_up_to_iso(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
}

#[test]
fn p3_free_exactly_when_clusters_exist() {
    for g in small_graphs() {
        assert_eq!(g.find_induced_p3().is_none(), g.clusters().is_ok(), "{g:?}");
        if let Some((a, b, c)) = g.find_induced_p3() {
            assert!(g.has_edge(a, b) && g.has_edge(b, c) && !g.has_edge(a, c));
        }
    }
}

#[test]
fn twin_pairs_are_closed_within_twin_classes() {
    for g in small_graphs() {
        let pairs = g.true_twin_pairs();
        for &(u, v) in &pairs {
            assert!(u < v && g.are_true_twins(v, u));
            for &(x, y) in &pairs {
                // u ~ v and v ~ y imply u ~ y.
                if x == v && y != u {
                    assert!(pairs.contains(&(u.min(y), u.max(y))), "{g:?}");
                }
            }
        }
    }
}

#[test]
fn bandwidth_of_any_labeling_bounds_the_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(&mut rng, n, 0.4);
        let best = brute_bandwidth(&g);
        let mut order: Vec<VertexId> = (0..n).collect();
        order.shuffle(&mut rng);
        let lab = Labeling::from_order(&order).unwrap();
        assert!(g.bandwidth_of_labeling(&lab).unwrap() >= best);
    }
}

#[test]
fn recognition_agrees_with_exhaustive_models() {
    for g in (0..=5).flat_map(graphs_up_to_iso) {
        let exhaustive =
            enumerate_canonical_models(&g.vertex_set()).any(|m| overlap_graph(&m) == g);
        let found = recognize_interval(&g);
        assert_eq!(found.is_some(), exhaustive, "{g:?}");
        if let Some(m) = found {
            assert_eq!(overlap_graph(&m), g);
        }
    }
}

#[test]
fn recognition_agrees_with_interval_classes_on_six_vertices() {
    let classes = interval_graph_classes(6);
    for g in graphs_up_to_iso(6) {
        let found = recognize_interval(&g);
        assert_eq!(
            found.is_some(),
            classes.contains(&canonical_mask(&g)),
            "{g:?}"
        );
        if let Some(m) = found {
            assert_eq!(overlap_graph(&m), g);
        }
    }
}

#[test]
fn canonical_models_are_pairwise_inconsistent() {
    for m in 0..=3u32 {
        let s: BTreeSet<VertexId> = (0..m).collect();
        let all: Vec<_> = enumerate_canonical_models(&s).collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(!same_order_on_common(a, b));
            }
        }
    }
}

#[test]
fn consistency_is_an_equivalence_on_equal_vertex_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let vs: Vec<VertexId> = (0..4).collect();
    for _ in 0..500 {
        let a = random_model(&mut rng, &vs);
        let b = rescale(&mut rng, &a);
        let c = random_model(&mut rng, &vs);
        assert!(a.is_consistent_with(&a));
        assert!(a.is_consistent_with(&b) && b.is_consistent_with(&a));
        assert_eq!(a.is_consistent_with(&c), c.is_consistent_with(&a));
        assert_eq!(b.is_consistent_with(&c), a.is_consistent_with(&c));
        assert_eq!(a.is_consistent_with(&c), same_order_on_common(&a, &c));
        if a.is_consistent_with(&c) {
            assert_eq!(a.to_graph(), c.to_graph());
        }
    }
}

#[test]
fn verify_matches_model_intersection() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let n = rng.gen_range(1..=6u32);
        let d = rng.gen_range(1..=3);
        let vs: Vec<VertexId> = (0..n).collect();
        let models: Vec<_> = (0..d).map(|_| random_model(&mut rng, &vs)).collect();
        let rep = BoxRepresentation::from_models(&models).unwrap();
        let target = if rng.gen_bool(0.5) {
            intersect_graphs(&models.iter().map(overlap_graph).collect::<Vec<_>>())
        } else {
            random_graph(&mut rng, n, 0.5)
        };
        let valid = rep.verify(&target).unwrap().is_valid();
        assert_eq!(valid, intersect_models(&rep.to_models()).unwrap() == target);
    }
}

#[test]
fn boxicity_is_monotone_under_vertex_deletion() {
    for g in small_graphs() {
        let b = oracle_box(&g);
        for v in g.vertices() {
            assert!(oracle_box(&g.without_vertex(v)) <= b, "{g:?} minus {v}");
        }
    }
}

#[test]
fn boxicity_at_most_pathwidth_plus_two() {
    for g in small_graphs() {
        assert!(oracle_box(&g) <= brute_pathwidth(&g) + 2, "{g:?}");
    }
}

#[test]
fn known_boxicities() {
    assert_eq!(oracle_box(&Graph::complete(5)), 0);
    assert_eq!(oracle_box(&Graph::path(5)), 1);
    assert_eq!(oracle_box(&Graph::cycle(4)), 2);
    assert_eq!(oracle_box(&Graph::complete_bipartite(2, 3)), 2);
    let block = build_block();
    assert_eq!(oracle_box(&block.graph), 2);
    assert!(recognize_interval(&block.graph).is_none());
}

#[test]
fn twin_removal_preserves_boxicity() {
    for g in small_graphs() {
        let h = remove_true_twins(&g);
        assert!(h.true_twin_pairs().is_empty());
        assert_eq!(oracle_box(&h), oracle_box(&g), "{g:?}");
    }
}

#[test]
fn kernel_shape() {
    for g in small_graphs() {
        let (k, report) = kernelize(&g).unwrap();
        assert!(k.vertex_count() <= g.vertex_count());
        assert!(
            report.classes.iter().all(|c| c.deleted == 0),
            "sound bound fired on {g:?}"
        );
        let (again, _) = kernelize(&k).unwrap();
        assert_eq!(again, k);

        let x = cvd_3approx(&g);
        assert!(g.without_vertices(&x).clusters().is_ok());
        let h = remove_true_twins(&g);
        let x: BTreeSet<VertexId> = x.into_iter().filter(|&v| h.contains(v)).collect();
        let classes = equivalence_classes(&h, &x).unwrap();
        for class in &classes {
            for cluster in &class.members {
                assert!(cluster.len() <= 1 << x.len());
            }
        }
        if !x.is_empty() {
            let (trimmed, deleted) =
                trim_classes(&h, &classes, &ClassBound::for_deletion_set(x.len()));
            assert_eq!(trimmed, h);
            assert!(deleted.iter().all(|&d| d == 0));
        }
    }
}

#[test]
fn dp_lazy_and_exhaustive_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let n = rng.gen_range(2..=5u32);
        let g = random_graph(&mut rng, n, 0.5);
        let lab = Labeling::from_order(&(0..n).collect::<Vec<_>>()).unwrap();
        let width = g.bandwidth_of_labeling(&lab).unwrap() as usize;
        let pd = window_pd(&g, &lab, width).unwrap();
        for d in 1..=2 {
            let lazy = dp_feasible(&g, &pd, d).unwrap().is_some();
            let full = dp_run(&g, &pd, d, DpStrategy::Exhaustive { budget: 1 << 24 });
            if let Ok(run) = full {
                assert_eq!(run.chain.is_some(), lazy, "{g:?} d = {d}");
                if let Some(chain) = run.chain {
                    assert!(reconstruct(&g, &chain)
                        .unwrap()
                        .verify(&g)
                        .unwrap()
                        .is_valid());
                }
            }
        }
    }
}

#[test]
fn dp_monotone_and_complete() {
    for g in small_graphs()
        .into_iter()
        .filter(|g| g.vertex_count() >= 1 && !g.is_complete())
    {
        let pd = optimal_path_decomposition(&g).unwrap();
        let w = validate_pd(&g, &pd).unwrap();
        let b = oracle_box(&g);
        let mut previous = false;
        for d in 1..=w + 2 {
            let feasible = dp_feasible(&g, &pd, d).unwrap().is_some();
            assert!(
                !previous || feasible,
                "{g:?}: feasible at {} but not {d}",
                d - 1
            );
            if b <= d {
                assert!(feasible, "{g:?}: box {b} but infeasible at {d}");
            }
            previous = feasible;
        }
    }
}

#[test]
fn gadget_structure() {
    for n in 1..=6 {
        let gadget = build_gn(n).unwrap();
        let g = &gadget.graph;
        assert_eq!(g.vertex_count(), 8 * n);
        assert_eq!(g.edge_count(), 17 * n + 6 * (n - 1));
        for ids in &gadget.blocks {
            for (i, &a) in ids.w.iter().enumerate() {
                for &b in &ids.w[i + 1..] {
                    if g.has_edge(a, b) {
                        continue;
                    }
                    let cycle = BTreeSet::from([ids.u, ids.v, a, b]);
                    let sub = g.induced_subgraph(&cycle).unwrap();
                    assert_eq!(sub.edge_count(), 4);
                    assert!(sub.vertices().all(|x| sub.degree(x) == 2));
                }
            }
        }
        let rep = gn_box_representation(n).unwrap();
        let models = rep.to_models();
        let mut previous = None;
        for ids in &gadget.blocks {
            let dims: Vec<usize> = (0..2)
                .filter(|&k| models[k].adjacent(ids.u, ids.v))
                .collect();
            assert_eq!(dims.len(), 1);
            if let Some(p) = previous {
                assert_ne!(p, dims[0]);
            }
            previous = Some(dims[0]);
        }
    }
}

#[test]
fn k2n_small_cases() {
    let (p3, _) = build_k2n(1).unwrap();
    assert!(recognize_interval(&p3).is_some());
    let (c4, models) = build_k2n(2).unwrap();
    assert_eq!(intersect_models(&models).unwrap(), c4);
    assert_eq!(oracle_box(&c4), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn window_reconstruction_verifies(n in 1u32..=6, mask in any::<u16>(), seed in any::<u64>()) {
        let mut edges = Vec::new();
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask & (1 << (bit % 16)) != 0 {
                    edges.push((u, v));
                }
                bit += 1;
            }
        }
        let g = Graph::from_edges(0..n, edges).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<VertexId> = (0..n).collect();
        order.shuffle(&mut rng);
        let lab = Labeling::from_order(&order).unwrap();
        let width = g.bandwidth_of_labeling(&lab).unwrap() as usize;
        let pd = window_pd(&g, &lab, width).unwrap();
        let approx = boxkit::approx_boxicity(&g, &pd).unwrap();
        prop_assert!(approx.rep.verify(&g).unwrap().is_valid());
        prop_assert!(approx.d <= validate_pd(&g, &pd).unwrap() + 2);
        let b = oracle_box(&g);
        prop_assert!(approx.d <= b && b <= approx.d + 1);
    }

    #[test]
    fn normalize_keeps_the_graph(seed in any::<u64>(), n in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs: Vec<VertexId> = (0..n as VertexId).collect();
        let m = random_model(&mut rng, &vs);
        let once = m.normalize();
        prop_assert!(once.is_normalized());
        prop_assert_eq!(overlap_graph(&once), overlap_graph(&m));
    }
}
