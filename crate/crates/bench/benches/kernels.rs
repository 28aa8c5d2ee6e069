//! Benchmarks for the hot kernels: vertex enumeration, the cell oracles,
//! pointwise diagonal evaluation, and transition maps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use associahedra::dd::vertex_enumeration;
use associahedra::diagonal::{magical_pairs, normal_cone_pairs, pointwise_diagonal, Sampler};
use associahedra::loday::{LodayRealization, ProductRealization, Weight};
use associahedra::operad::TransitionMap;

fn bench_vertex_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("vertex_enumeration");
    for n in [4usize, 5, 6] {
        let k = LodayRealization::build(Weight::standard(n), None).unwrap();
        group.bench_with_input(BenchmarkId::new("K", n), &k, |b, k| {
            b.iter(|| vertex_enumeration(&k.halfspaces).unwrap())
        });
    }
    group.finish();
}

fn bench_cell_oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("cells");
    group.sample_size(10);
    for n in [4usize, 5] {
        group.bench_with_input(BenchmarkId::new("magical", n), &n, |b, &n| {
            b.iter(|| magical_pairs(n).unwrap())
        });
        let p = ProductRealization::standard(n).unwrap();
        group.bench_with_input(BenchmarkId::new("cones", n), &p, |b, p| {
            b.iter(|| normal_cone_pairs(p).unwrap())
        });
    }
    group.finish();
}

fn bench_pointwise_diagonal(c: &mut Criterion) {
    let mut group = c.benchmark_group("pointwise_diagonal");
    for n in [4usize, 5] {
        let p = ProductRealization::standard(n).unwrap();
        let mut sampler = Sampler::new(1);
        let points: Vec<_> = (0..16).map(|_| sampler.sample(&p.vertices)).collect();
        group.bench_with_input(BenchmarkId::new("K", n), &p, |b, p| {
            let mut it = points.iter().cycle();
            b.iter(|| pointwise_diagonal(p, it.next().unwrap()).unwrap())
        });
    }
    group.finish();
}

fn bench_transition(c: &mut Criterion) {
    let mut group = c.benchmark_group("transition_map");
    group.sample_size(10);
    let src = LodayRealization::build(Weight::standard(4), None).unwrap();
    let dst = LodayRealization::build(Weight(vec![2, 1, 3, 1]), None).unwrap();
    let tr = TransitionMap::new(&src, &dst).unwrap();
    let mut sampler = Sampler::new(2);
    let z = sampler.sample(&src.vertices);
    for depth in [4u32, 8] {
        group.bench_with_input(BenchmarkId::new("depth", depth), &depth, |b, &d| {
            b.iter(|| tr.apply(&z, d).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_vertex_enumeration,
    bench_cell_oracles,
    bench_pointwise_diagonal,
    bench_transition
);
criterion_main!(benches);
