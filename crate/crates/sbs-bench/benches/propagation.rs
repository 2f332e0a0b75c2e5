use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use sbs_bench::{standard_params, thermal_start};
use sbs_core::{bogoliubov_propagator, default_step, integrate_moments, propagate, Covariance};

fn bench_propagators(c: &mut Criterion) {
    let params = standard_params();
    let vacuum = Covariance::vacuum();
    let thermal = thermal_start();

    c.bench_function("bogoliubov_propagator t=1", |b| {
        b.iter(|| bogoliubov_propagator(black_box(1.0), &params).unwrap())
    });

    c.bench_function("propagate vacuum t=1", |b| {
        b.iter(|| propagate(black_box(&vacuum), 1.0, &params).unwrap())
    });

    let mut group = c.benchmark_group("integrate_moments thermal t=1");
    for dt in [1e-2, 1e-3, 1e-4] {
        group.bench_with_input(format!("dt={dt:.0e}"), &dt, |b, &dt| {
            b.iter(|| integrate_moments(black_box(&thermal), 1.0, &params, dt).unwrap())
        });
    }
    group.finish();

    c.bench_function("integrate_moments default step t=2", |b| {
        let dt = default_step(&params);
        b.iter(|| integrate_moments(black_box(&thermal), 2.0, &params, dt).unwrap())
    });
}

criterion_group!(benches, bench_propagators);
criterion_main!(benches);
