use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lattice_games::{find_weight, solve_p0, solve_region};
use lattice_games_bench::nim_case;
use num::rational::BigRational;
use std::hint::black_box;

fn bench_box_solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_p0/nim");
    for d in [8usize, 12, 16] {
        let (rs, w) = nim_case(d);
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, _| {
            b.iter(|| black_box(solve_p0(&rs, &w).unwrap().stats().option_evaluations));
        });
    }
    group.finish();
}

fn bench_region_oracle(c: &mut Criterion) {
    let (rs, w) = nim_case(3);
    let budget = BigRational::from_integer(24.into());
    c.bench_function("solve_region/nim3_w24", |b| {
        b.iter(|| black_box(solve_region(&rs, &w, &budget).unwrap().len()));
    });
}

fn bench_weight_search(c: &mut Criterion) {
    let (rs, _) = nim_case(6);
    c.bench_function("find_weight/nim6", |b| {
        b.iter(|| black_box(find_weight(&rs).unwrap()));
    });
}

criterion_group!(
    benches,
    bench_box_solver,
    bench_region_oracle,
    bench_weight_search
);
criterion_main!(benches);
