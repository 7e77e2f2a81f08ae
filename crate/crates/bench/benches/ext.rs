use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use digroup_bench::fixtures;
use digroup_core::envalg::{build_enveloping_algebra, derivation_ext1, rep_to_module};
use digroup_core::ext::{ext1_dim, is_split};
use digroup_core::halo::verify_collapse;

fn ext1(c: &mut Criterion) {
    let mut group = c.benchmark_group("ext1");
    for f in fixtures() {
        group.bench_function(format!("cocycles/{}", f.name), |b| {
            b.iter(|| ext1_dim(black_box(&f.quotient), black_box(&f.sub)).unwrap())
        });
        group.bench_function(format!("derivations/{}", f.name), |b| {
            b.iter(|| {
                let a = Arc::new(build_enveloping_algebra(f.quotient.digroup(), f.quotient.field()));
                let q = rep_to_module(&f.quotient, &a).unwrap();
                let w = rep_to_module(&f.sub, &a).unwrap();
                derivation_ext1(&q, &w).unwrap()
            })
        });
        group.bench_function(format!("halo_collapse/{}", f.name), |b| {
            b.iter(|| verify_collapse(black_box(&f.quotient), black_box(&f.sub)).unwrap())
        });
    }
    group.finish();
}

fn split(c: &mut Criterion) {
    let mut group = c.benchmark_group("split");
    for f in fixtures() {
        group.bench_function(f.name, |b| b.iter(|| is_split(black_box(&f.extension)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, ext1, split);
criterion_main!(benches);
