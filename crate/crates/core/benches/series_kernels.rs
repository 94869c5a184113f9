use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qhodge::local_p2;
use qhodge::ring::rat;
use qhodge::series::{rat_series, RatSeries, Var};

fn integral(order: usize) -> RatSeries {
    local_p2::elliptic_periods(order).unwrap().pi0
}

fn fractional(order: usize) -> RatSeries {
    rat_series(Var::S, order, |k| rat(k as i64 * 7 + 1, k as i64 + 2))
}

fn mul_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_mul");
    for &n in &[32usize, 64, 128] {
        for (label, a) in [("integral", integral(n)), ("fractional", fractional(n))] {
            group.bench_with_input(BenchmarkId::new(format!("sequential/{label}"), n), &a, |b, a| {
                b.iter(|| black_box(a.mul_sequential(a)))
            });
            #[cfg(feature = "parallel")]
            group.bench_with_input(BenchmarkId::new(format!("parallel/{label}"), n), &a, |b, a| {
                b.iter(|| black_box(a.mul_parallel(a)))
            });
        }
    }
    group.finish();
}

fn reversion(c: &mut Criterion) {
    let mut group = c.benchmark_group("mirror_map_reversion");
    group.sample_size(10);
    for &n in &[32usize, 64] {
        let q = local_p2::local_mirror_map(n).unwrap().q_of_s;
        group.bench_with_input(BenchmarkId::from_parameter(n), &q, |b, q| {
            b.iter(|| black_box(q.revert().unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, mul_kernels, reversion);
criterion_main!(benches);
