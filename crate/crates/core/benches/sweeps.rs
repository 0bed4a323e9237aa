use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use conequant_core::curve::member::member_b_with;
use conequant_core::curve::{Divisor, GeneralizedDivisor, LocalPrec, Place};
use conequant_core::gen;
use conequant_core::quantize::{omega_tilde, order4_obstruction_with, standard_samples};
use conequant_core::rankin_cohen::lift::solve_lift_coefficients_with;
use conequant_core::Exec;

const STRATEGIES: [Exec; 2] = [Exec::Sequential, Exec::Parallel];

fn associativity(c: &mut Criterion) {
    let mut group = c.benchmark_group("associativity");
    for exec in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(exec.name()), &exec, |b, &exec| {
            b.iter(|| {
                exec.map_range(24, |k| {
                    let mut r = gen::rng(k as u64);
                    let (x, y, z) = (gen::light_psido(&mut r), gen::light_psido(&mut r), gen::light_psido(&mut r));
                    let xy = x.mul_to(&y, Some(x.top() + y.top() - 8)).unwrap();
                    xy.mul_to(&z, Some(xy.top() + z.top() - 8)).unwrap()
                })
            })
        });
    }
    group.finish();
}

fn lift_coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("lift_coefficients");
    for exec in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(exec.name()), &exec, |b, &exec| {
            b.iter(|| solve_lift_coefficients_with(12, 8, exec).unwrap())
        });
    }
    group.finish();
}

fn obstruction(c: &mut Criterion) {
    let samples = standard_samples();
    let mut group = c.benchmark_group("obstruction");
    for exec in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(exec.name()), &exec, |b, &exec| {
            b.iter(|| order4_obstruction_with(&samples, 3, exec).unwrap())
        });
    }
    group.finish();
}

fn membership(c: &mut Criterion) {
    let d = Divisor::single(Place::Infinity, 5);
    let lambda = GeneralizedDivisor::new();
    let ops: Vec<_> = (0..5).map(omega_tilde).collect();
    let mut group = c.benchmark_group("membership");
    for exec in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(exec.name()), &exec, |b, &exec| {
            b.iter(|| {
                exec.map(&ops, |t| member_b_with(t, &d, &lambda, LocalPrec::with_window(8), Exec::Sequential).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group! {
    name = sweeps;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(5));
    targets = associativity, lift_coefficients, obstruction, membership
}
criterion_main!(sweeps);
