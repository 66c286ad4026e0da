use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fforge_bench::{bounded_on_complete, complete_graph, random_specs, thick_cycle, triple_ring};
use fforge_core::partition::enumerate_partitions;
use fforge_core::solvers::{pack_bounded_k, pack_limited_hyper, pack_spanning_trees, solve};
use fforge_core::{check, ProblemKind};

fn partitions(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_partitions");
    for n in [6, 8, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| enumerate_partitions(n).unwrap().count()));
    }
    group.finish();
}

fn spanning(c: &mut Criterion) {
    let mut group = c.benchmark_group("pack_spanning_trees");
    group.sample_size(20);
    for (name, g, k) in [
        ("K6, k=2", complete_graph(6).unwrap(), 2),
        ("K7, k=3", complete_graph(7).unwrap(), 3),
        ("2xC7, k=2", thick_cycle(7, 2).unwrap(), 2),
    ] {
        group.bench_function(name, |b| b.iter(|| pack_spanning_trees(black_box(&g), k).unwrap()));
    }
    group.finish();
}

fn checks(c: &mut Criterion) {
    let spec = bounded_on_complete(7).unwrap();
    c.bench_function("check bounded K7", |b| b.iter(|| check(black_box(&spec), ProblemKind::Bounded).unwrap()));
    let specs = random_specs(42, 64).unwrap();
    c.bench_function("check 64 random specs x 3 kinds", |b| {
        b.iter(|| {
            for s in &specs {
                for kind in [ProblemKind::MBased, ProblemKind::Bounded, ProblemKind::Limited] {
                    black_box(check(s, kind).unwrap());
                }
            }
        })
    });
}

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solvers");
    group.sample_size(10);
    let bounded = bounded_on_complete(6).unwrap();
    group.bench_function("pack_bounded_k K6", |b| b.iter(|| pack_bounded_k(black_box(&bounded)).unwrap()));
    let ring = triple_ring(6, 1).unwrap();
    group.bench_function("pack_limited_hyper triple ring 6", |b| b.iter(|| pack_limited_hyper(black_box(&ring)).unwrap()));
    let specs = random_specs(7, 32).unwrap();
    group.bench_function("solve 32 random limited specs", |b| {
        b.iter(|| {
            for s in &specs {
                black_box(solve(s, ProblemKind::Limited).unwrap());
            }
        })
    });
    group.finish();
}

criterion_group!(benches, partitions, spanning, checks, solvers);
criterion_main!(benches);
