// SPDX-License-Identifier: Apache-2.0

use awgraph_bench::grid_table;
use awgraph_core::{
    all_pairs_distances, build_grid, compute_aw, enumerate_k_aps, enumerate_rainbow_free_colorings,
    exists_rainbow_free_coloring, SearchConfig,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn ap_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_k_aps");
    for (m, n) in [(3, 3), (4, 4), (5, 6)] {
        let (g, _) = build_grid(m, n).unwrap();
        let d = all_pairs_distances(&g);
        for k in [3, 4] {
            group.bench_with_input(
                BenchmarkId::new(format!("k{k}"), format!("{m}x{n}")),
                &d,
                |b, d| b.iter(|| enumerate_k_aps(black_box(d), k).unwrap()),
            );
        }
    }
    group.finish();
}

fn nonexistence(c: &mut Criterion) {
    let mut group = c.benchmark_group("no_rainbow_free_4_coloring");
    group.sample_size(10);
    for (m, n) in [(3, 4), (4, 4), (2, 8)] {
        let t = grid_table(m, n);
        group.bench_function(format!("{m}x{n}"), |b| {
            b.iter(|| {
                exists_rainbow_free_coloring(black_box(&t), m * n, 4, &SearchConfig::default())
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn extremal_enumeration(c: &mut Criterion) {
    let t = grid_table(2, 7);
    c.bench_function("enumerate_2x7_r3", |b| {
        b.iter(|| {
            enumerate_rainbow_free_colorings(black_box(&t), 14, 3, &SearchConfig::default())
                .unwrap()
        })
    });
}

fn aw_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_aw");
    group.sample_size(10);
    for (m, n) in [(3, 3), (3, 5), (4, 4)] {
        let (g, _) = build_grid(m, n).unwrap();
        group.bench_function(format!("{m}x{n}"), |b| {
            b.iter(|| compute_aw(black_box(&g), 3, &SearchConfig::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    ap_enumeration,
    nonexistence,
    extremal_enumeration,
    aw_grid
);
criterion_main!(benches);
