//! Parallel against sequential execution of the per-subset Hochster sum and
//! of the randomized property suite.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use linklab_core::harness::suites::{random_property_suite_with, SuiteOptions};
use linklab_core::par::Execution;
use linklab_core::stanley_reisner::{hochster_betti_of_complex, SimplicialComplex};
use linklab_core::PrimeField;

const MODES: [(&str, Execution); 2] = [
    ("auto", Execution::Auto),
    ("sequential", Execution::Sequential),
];

fn hochster(c: &mut Criterion) {
    let field = PrimeField::new(32003).unwrap();
    // a closed strip of nine triangles on ten vertices
    let complex = SimplicialComplex::from_facets(
        10,
        &[
            0b0000000111,
            0b0000001110,
            0b0000011100,
            0b0000111000,
            0b0001110000,
            0b0011100000,
            0b0111000000,
            0b1110000000,
            0b1100000001,
        ],
    )
    .unwrap();
    let mut group = c.benchmark_group("hochster_betti");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| hochster_betti_of_complex(&complex, &field, exec))
        });
    }
    group.finish();
}

fn property_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("property_suite");
    group
        .sample_size(10)
        .measurement_time(Duration::from_secs(20));
    for (name, exec) in MODES {
        let opts = SuiteOptions {
            exec,
            ..Default::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, &opts| {
            b.iter(|| random_property_suite_with(8, 11, 4, 32003, opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, hochster, property_suite);
criterion_main!(benches);
