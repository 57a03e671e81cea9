use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fgroup_bench::{batch, worked_example};
use fgroup_core::experiments::build_pocket_element;
use fgroup_core::length::bfs_ball;
use fgroup_core::{length, minimize_penalty};

fn worked(c: &mut Criterion) {
    let g = worked_example();
    c.bench_function("length worked example n=2", |b| b.iter(|| length(black_box(&g), 2).unwrap()));
}

fn random_batches(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize random batch");
    for max in [8, 14, 20] {
        let elements = batch(max);
        for n in [1, 3] {
            group.bench_with_input(BenchmarkId::new(format!("n={n}"), max), &elements, |b, els| {
                b.iter(|| {
                    for g in els {
                        black_box(minimize_penalty(g, n).unwrap());
                    }
                })
            });
        }
    }
    group.finish();
}

fn pocket(c: &mut Criterion) {
    let g = build_pocket_element(1, 4).unwrap();
    c.bench_function("length pocket k=1 n=4", |b| b.iter(|| length(black_box(&g), 4).unwrap()));
}

fn ball(c: &mut Criterion) {
    c.bench_function("bfs ball n=1 r=5", |b| b.iter(|| bfs_ball(1, 5).unwrap()));
}

criterion_group!(benches, worked, random_batches, pocket, ball);
criterion_main!(benches);
