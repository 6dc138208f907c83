//! Timings of the main pipelines on corpus germs, with the standard basis
//! cache disabled so every iteration does the full work.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use germlab_core::equising::generic_slice;
use germlab_core::symrep::{marar_coefficient, partitions_of};
use germlab_core::{invariant_report, whitney_verdict, FamilySpec, GenericOptions, GermSpec, LocalOptions};

fn uncached() -> GenericOptions {
    let base = GenericOptions::default();
    GenericOptions { local: LocalOptions { use_cache: false, ..base.local }, ..base }
}

fn reports(c: &mut Criterion) {
    let germs = [
        ("S1", GermSpec::mono("S1", 2, &["x1", "y^2", "y^3 - x1^2*y"]).unwrap()),
        ("H2", GermSpec::mono("H2", 2, &["x1", "y^3", "x1*y + y^5"]).unwrap()),
        ("S1 n3", GermSpec::mono("S1 n3", 3, &["x1", "x2", "y^2", "y^3 + x1^2*y + x2^2*y"]).unwrap()),
    ];
    let mut group = c.benchmark_group("invariant_report");
    for (name, f) in &germs {
        group.bench_function(*name, |b| b.iter(|| invariant_report(black_box(f), uncached()).unwrap()));
    }
    group.finish();
}

fn slices_and_verdicts(c: &mut Criterion) {
    let ruas = GermSpec::mono("ruas", 2, &["x1", "y^4", "x1^5*y - 5*x1^3*y^3 + 4*x1*y^5 + y^6"]).unwrap();
    c.bench_function("generic_slice/ruas", |b| {
        b.iter(|| generic_slice(black_box(&ruas), uncached(), "bench").unwrap())
    });
    let fam = FamilySpec::parse("rescaled S1", 2, "t", &[("p0", &["x1", "y^2", "y^3 - (1 + t)*x1^2*y"])]).unwrap();
    let mut group = c.benchmark_group("whitney_verdict");
    group.sample_size(10);
    group.bench_function("rescaled S1", |b| b.iter(|| whitney_verdict(black_box(&fam), 2, uncached()).unwrap()));
    group.finish();
}

fn coefficients(c: &mut Criterion) {
    c.bench_function("marar_coefficients/k<=8", |b| {
        b.iter(|| (1..=8).flat_map(partitions_of).map(|g| marar_coefficient(&g)).collect::<Vec<_>>())
    });
}

criterion_group!(benches, reports, slices_and_verdicts, coefficients);
criterion_main!(benches);
