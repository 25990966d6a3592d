use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use parterre::curves::enumerate_long_curves;
use parterre::diagrams::{crossing_variations, synthesize, twist_assignments};
use parterre::invariants::{alexander, jones};
use parterre::templates::valid_templates;
use parterre_bench::largest_diagrams;

fn curves(c: &mut Criterion) {
    let mut group = c.benchmark_group("long_curves");
    for n in [3, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| enumerate_long_curves(n)));
    }
    group.finish();
}

fn templates(c: &mut Criterion) {
    c.bench_function("valid_templates/3", |b| b.iter(|| valid_templates(black_box(3))));
}

fn synthesis(c: &mut Criterion) {
    let jobs: Vec<_> = valid_templates(3)
        .iter()
        .flat_map(crossing_variations)
        .flat_map(|k| twist_assignments(&k, 18).into_iter().map(move |tv| (k.clone(), tv)))
        .take(200)
        .collect();
    c.bench_function("synthesize/200", |b| {
        b.iter(|| jobs.iter().map(|(k, tv)| synthesize(k, tv).unwrap().len()).sum::<usize>())
    });
}

fn invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("invariants");
    group.sample_size(20);
    for budget in [14, 16, 18] {
        let pds = largest_diagrams(budget, 8);
        group.bench_with_input(BenchmarkId::new("jones", budget), &pds, |b, pds| {
            b.iter(|| pds.iter().map(|pd| jones(pd).unwrap().max_degree()).sum::<i64>())
        });
        group.bench_with_input(BenchmarkId::new("alexander", budget), &pds, |b, pds| {
            b.iter(|| pds.iter().map(|pd| alexander(pd).unwrap().max_degree()).sum::<i64>())
        });
    }
    group.finish();
}

criterion_group!(pipeline, curves, templates, synthesis);
criterion_group!(knots, invariants);
criterion_main!(pipeline, knots);
