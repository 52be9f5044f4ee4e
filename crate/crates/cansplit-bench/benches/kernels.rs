use cansplit::sds::{family_f, residual_parts, FamilyId};
use cansplit::splitting::{iterated_split, split, SplitRequest};
use cansplit::toric::{catalog, replay, walk_link, DEFAULT_EXPONENT_BOUND};
use cansplit_bench::{a19_quartic, mixed_germ, weighted_example};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_split(c: &mut Criterion) {
    let f = mixed_germ();
    let mut g = c.benchmark_group("split");
    for n in [8u64, 12, 16] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| split(&SplitRequest::new(black_box(f.clone()), 0, n)).unwrap())
        });
    }
    g.finish();
}

fn bench_a19(c: &mut Criterion) {
    let f = a19_quartic();
    let mut g = c.benchmark_group("a19");
    g.sample_size(10);
    g.bench_function("iterated_split_20", |b| b.iter(|| iterated_split(black_box(&f), &[0, 1], 20).unwrap()));
    g.finish();
}

fn bench_residual(c: &mut Criterion) {
    let mut g = c.benchmark_group("residual_parts");
    g.sample_size(10);
    for name in ["2", "4", "cA8"] {
        let id: FamilyId = name.parse().unwrap();
        let f = family_f(id).unwrap();
        g.bench_function(name, |b| b.iter(|| residual_parts(black_box(&f), 6, None).unwrap()));
    }
    g.finish();
}

fn bench_toric(c: &mut Criterion) {
    let t = weighted_example();
    c.bench_function("walk_link", |b| b.iter(|| walk_link(black_box(&t), DEFAULT_EXPONENT_BOUND).unwrap()));
    let mut g = c.benchmark_group("replay");
    g.sample_size(10);
    for e in catalog() {
        g.bench_function(e.name, |b| b.iter(|| replay(black_box(e)).unwrap()));
    }
    g.finish();
}

criterion_group!(kernels, bench_split, bench_a19, bench_residual, bench_toric);
criterion_main!(kernels);
