use std::hint::black_box;

use bookbind::layout::validate_with;
use bookbind::oracle::search_pages;
use bookbind::sweep::{sweep, Family};
use bookbind::{brute_force_mbt, circulant, embed, BundleSpec, Embedded, Execution, SearchBudget};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    let circ9 = circulant(9, &[1, 3]).unwrap();
    let bundle = BundleSpec::shift(3, 4, 2).unwrap().graph();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("refute_circ9_4_pages", name), |b| {
            b.iter(|| search_pages(black_box(&circ9), 4, SearchBudget::default(), exec).unwrap())
        });
        group.bench_function(BenchmarkId::new("mbt_bundle_3_4_2", name), |b| {
            b.iter(|| brute_force_mbt(black_box(&bundle), SearchBudget::default(), exec))
        });
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("s3-8_t3-14", name), |b| {
            b.iter(|| sweep(3..=8, 3..=14, Family::All, exec).unwrap())
        });
    }
    group.finish();
}

fn validation(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    let spec: BundleSpec = "s=12,t=40,phi=shift:8".parse().unwrap();
    let g = spec.graph();
    let Embedded::Built(r) = embed(&spec).unwrap() else { unreachable!() };
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("bundle_12_40_8", name), |b| {
            b.iter(|| validate_with(black_box(&g), &r.embedding, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle, sweeps, validation);
criterion_main!(benches);
