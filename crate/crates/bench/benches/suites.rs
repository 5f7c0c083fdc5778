use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qgv_core::hopf::{function_algebra, group_algebra};
use qgv_core::suite::{run_embed, run_fusion_algebra, run_monoid, run_tannaka, run_verify, SuiteOptions};
use qgv_core::{FiniteGroup, FiniteHopfStarAlgebra};

fn algebras() -> Vec<(String, FiniteHopfStarAlgebra)> {
    let mut out = Vec::new();
    for name in ["Z4", "S3"] {
        let g = FiniteGroup::builtin(name).unwrap();
        out.push((format!("C[{name}]"), group_algebra(&g)));
        out.push((format!("C^{name}"), function_algebra(&g)));
    }
    out
}

fn suites(c: &mut Criterion) {
    let opts = SuiteOptions::default();
    let algebras = algebras();
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for (name, h) in &algebras {
        group.bench_with_input(BenchmarkId::new("verify", name), h, |b, h| b.iter(|| run_verify(black_box(h), opts)));
        group.bench_with_input(BenchmarkId::new("monoid", name), h, |b, h| b.iter(|| run_monoid(black_box(h), opts)));
        group.bench_with_input(BenchmarkId::new("embed", name), h, |b, h| b.iter(|| run_embed(black_box(h), opts)));
        group.bench_with_input(BenchmarkId::new("tannaka", name), h, |b, h| b.iter(|| run_tannaka(black_box(h), opts)));
        group.bench_with_input(BenchmarkId::new("fusion", name), h, |b, h| {
            b.iter(|| run_fusion_algebra(black_box(h), None, opts))
        });
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
