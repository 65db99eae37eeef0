use std::collections::BTreeSet;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use gred::graph::VertexSet;
use gred::parallel::parallel_complexity;
use gred::pivot::pivot_matrix;
use gred::poset::reducibility_poset;
use gred::reduction::{reduce, strategy_for};
use gred_bench::{random_graph, random_matrix};

fn gf2_core(c: &mut Criterion) {
    let m = random_matrix(128, 128, 1);
    c.bench_function("rank 128x128", |b| b.iter(|| black_box(&m).rank()));
    c.bench_function("rref 128x128", |b| b.iter(|| black_box(&m).rref()));

    // Invertible input for the inverse benchmark.
    let inv_input = (0..)
        .map(|seed| random_matrix(96, 96, seed))
        .find(|m| m.inverse().is_some())
        .unwrap();
    c.bench_function("inverse 96x96", |b| b.iter(|| black_box(&inv_input).inverse().unwrap()));
}

fn reductions(c: &mut Criterion) {
    let g = random_graph(16, 7);
    let full: VertexSet = g.label_set();
    c.bench_function("reduce full 16-vertex graph", |b| {
        b.iter(|| reduce(black_box(&g), black_box(&full)).unwrap())
    });
    c.bench_function("greedy strategy, 16 vertices", |b| {
        b.iter(|| strategy_for(black_box(&g), black_box(&full)).unwrap())
    });

    let a = random_matrix(64, 64, 3);
    let x: BTreeSet<usize> = (0..64).step_by(2).collect();
    c.bench_function("pivot 64x64 by half the indices", |b| {
        b.iter(|| pivot_matrix(black_box(&a), black_box(&x)))
    });
}

fn enumerations(c: &mut Criterion) {
    let g = random_graph(12, 5);
    c.bench_function("reducibility poset, 12 vertices", |b| {
        b.iter(|| reducibility_poset(black_box(&g)).unwrap())
    });

    let small = random_graph(7, 2);
    c.bench_function("parallel complexity, 7 vertices", |b| {
        b.iter(|| parallel_complexity(black_box(&small)).unwrap())
    });
}

criterion_group!(benches, gf2_core, reductions, enumerations);
criterion_main!(benches);
