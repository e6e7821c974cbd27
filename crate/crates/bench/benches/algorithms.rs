use std::collections::BTreeSet;
use std::hint::black_box;

use boxkit::{
    approx_boxicity, boxicity, build_gn, enumerate_canonical_models, gn_box_representation,
    kernelize, recognize_interval, stab_analysis, Graph,
};
use boxkit_bench::{banded_graph, identity_windows, random_graph};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    let cases = [
        ("c5", Graph::cycle(5)),
        ("k33", Graph::complete_bipartite(3, 3)),
        ("block", build_gn(1).unwrap().graph),
        ("random8", random_graph(8, 0.5, 1)),
    ];
    for (name, g) in &cases {
        group.bench_with_input(BenchmarkId::from_parameter(name), g, |b, g| {
            b.iter(|| boxicity(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn pathwidth_dp(c: &mut Criterion) {
    let mut group = c.benchmark_group("pw_approx");
    group.sample_size(10);
    for n in [10u32, 20, 40] {
        let g = banded_graph(n, 2, 0.7, u64::from(n));
        let pd = identity_windows(&g);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(g, pd), |b, (g, pd)| {
            b.iter(|| approx_boxicity(black_box(g), black_box(pd)).unwrap())
        });
    }
    group.finish();
}

fn kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernelize");
    for n in [20u32, 60] {
        let g = random_graph(n, 0.1, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| kernelize(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn recognition(c: &mut Criterion) {
    let g = Graph::path(500);
    c.bench_function("recognize/path500", |b| {
        b.iter(|| recognize_interval(black_box(&g)))
    });
}

fn enumeration(c: &mut Criterion) {
    let s: BTreeSet<u32> = (0..4).collect();
    c.bench_function("enumerate/4", |b| {
        b.iter(|| enumerate_canonical_models(black_box(&s)).count())
    });
}

fn gadgets(c: &mut Criterion) {
    let mut group = c.benchmark_group("gadgets");
    group.sample_size(10);
    group.bench_function("gn_rep/100", |b| {
        b.iter(|| gn_box_representation(black_box(100)).unwrap())
    });
    let rep = gn_box_representation(100).unwrap();
    let vs: BTreeSet<u32> = build_gn(100)
        .unwrap()
        .blocks
        .iter()
        .map(|ids| ids.v)
        .collect();
    group.bench_function("stab/100", |b| {
        b.iter(|| stab_analysis(black_box(&rep), black_box(&vs)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    exact,
    pathwidth_dp,
    kernel,
    recognition,
    enumeration,
    gadgets
);
criterion_main!(benches);
