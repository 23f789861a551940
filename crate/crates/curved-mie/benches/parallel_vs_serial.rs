//! Criterion comparison of the rayon path against the sequential loop on
//! the two workloads the CLI actually fans out: oracle sweeps over a
//! parameter grid, and batch eigenfunction sampling.
//!
//! Run with `cargo bench -p curved-mie`.  Building with
//! `--no-default-features` turns both entries into sequential runs, which
//! is the honest baseline for the comparison.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use curved_mie::model::PhysicalParams;
use curved_mie::oracle::extrapolated_curved;
use curved_mie::parallel::{map_ordered, Parallelism};
use curved_mie::spectrum::{level, SolvabilityMode};
use curved_mie::wavefunction::{eval_eigenfunction, Grid};

fn parameter_cases() -> Vec<(f64, f64, f64, u32)> {
    let mut cases = Vec::new();
    for v0 in [0.5, 1.0, 2.0] {
        for radius in [1.0, 2.0] {
            for m in [0u32, 1] {
                cases.push((v0, 1.0, radius, m));
            }
        }
    }
    cases
}

fn oracle_sweep(parallelism: Parallelism) -> f64 {
    let cases = parameter_cases();
    let sums = map_ordered(&cases, parallelism, |&(v0, a, radius, m)| {
        let p = PhysicalParams::new(1.0, 1.0, radius, a, v0).expect("valid parameters");
        extrapolated_curved(&p, m, 1024, 2)
            .expect("bound channel")
            .eigenvalues
            .iter()
            .sum::<f64>()
    });
    sums.iter().sum()
}

fn eigenfunction_batch(parallelism: Parallelism) -> f64 {
    let p = PhysicalParams::dimensionless_defaults();
    let grid = Grid::angular(4096).expect("valid grid");
    let jobs: Vec<u32> = (1..=8).collect();
    let norms = map_ordered(&jobs, parallelism, |&n| {
        let lv = level(&p, 0, n, SolvabilityMode::Rederived).expect("bound level");
        eval_eigenfunction(&p, &lv, grid).expect("evaluable").norm
    });
    norms.iter().sum()
}

fn bench_modes(c: &mut Criterion) {
    let modes = [
        ("parallel", Parallelism::Parallel),
        ("serial", Parallelism::Serial),
    ];

    let mut group = c.benchmark_group("oracle_sweep");
    group.sample_size(10);
    for (name, mode) in modes {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| oracle_sweep(mode));
        });
    }
    group.finish();

    let mut group = c.benchmark_group("eigenfunction_batch");
    group.sample_size(10);
    for (name, mode) in modes {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| eigenfunction_batch(mode));
        });
    }
    group.finish();
}

criterion_group!(benches, bench_modes);
criterion_main!(benches);
