use criterion::{criterion_group, criterion_main, Criterion};
use dpff_core::construct::{dp2_class35_surface, make_c14_surface};
use dpff_core::cubic::{count_points, find_lines, is_smooth};
use dpff_core::dp2::classify_dp2;
use dpff_core::weyl::{e6, e7};
use std::hint::black_box;

fn cubic(c: &mut Criterion) {
    // build the tables outside the timed loops
    let _ = (e6(), e7());
    let x = make_c14_surface(7, 0).unwrap().surface;
    c.bench_function("is_smooth q=7", |b| b.iter(|| is_smooth(black_box(&x)).unwrap()));
    c.bench_function("find_lines q=7", |b| b.iter(|| find_lines(black_box(&x)).unwrap()));
    c.bench_function("count_points q=7 n=2", |b| b.iter(|| count_points(black_box(&x), 2).unwrap()));
    let mut g = c.benchmark_group("construct");
    g.sample_size(10);
    g.bench_function("make_c14_surface q=4", |b| b.iter(|| make_c14_surface(black_box(4), 0).unwrap()));
    g.finish();
}

fn dp2(c: &mut Criterion) {
    let x = dp2_class35_surface();
    c.bench_function("classify_dp2 q=3", |b| b.iter(|| classify_dp2(black_box(&x), 4).unwrap()));
}

criterion_group!(benches, cubic, dp2);
criterion_main!(benches);
