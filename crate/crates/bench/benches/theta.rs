use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use plumbing_core::contfrac::{hz_check, CoprimePair};
use plumbing_core::dinv::max_k_squared;
use plumbing_core::lattice::theta_oracle;
use plumbing_core::recursion::theta;
use plumbing_core::samples;
use plumbing_core::PlumbingGraph;

/// A chain of `n` vertices with weight -3: the worst case for dense
/// elimination relative to the linear-time recursion.
fn chain(n: usize) -> PlumbingGraph {
    let weights = vec![-3; n];
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    PlumbingGraph::from_weights(&weights, &edges).expect("chain is a tree")
}

fn theta_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("theta");
    for n in [8, 32, 128] {
        let g = chain(n);
        group.bench_with_input(BenchmarkId::new("recursion", n), &g, |b, g| {
            b.iter(|| theta(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("oracle", n), &g, |b, g| {
            b.iter(|| theta_oracle(black_box(g)))
        });
    }
    group.finish();
}

fn d_invariant(c: &mut Criterion) {
    let graphs = samples::reference_graphs();
    let random = samples::random_definite_trees(7, 20, 10);
    c.bench_function("max_k_squared/reference", |b| {
        b.iter(|| {
            for g in graphs.iter().filter(|g| g.is_minimal()) {
                black_box(max_k_squared(black_box(g)).ok());
            }
        })
    });
    c.bench_function("max_k_squared/random20", |b| {
        b.iter(|| {
            for g in &random {
                black_box(max_k_squared(black_box(g)).ok());
            }
        })
    });
}

fn reciprocity(c: &mut Criterion) {
    let pairs: Vec<CoprimePair> = (2..400i64)
        .flat_map(|p| (1..p).step_by(7).filter_map(move |q| CoprimePair::from_ints(p, q).ok()))
        .collect();
    c.bench_function("hz_check", |b| {
        b.iter(|| pairs.iter().filter(|pq| hz_check(black_box(pq))).count())
    });
}

criterion_group!(benches, theta_routes, d_invariant, reciprocity);
criterion_main!(benches);
