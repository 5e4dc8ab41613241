use criterion::{black_box, criterion_group, criterion_main, Criterion};
use graded_ll::graded::{builtin_algebra, jacobi_check};
use graded_ll::operator::{hll_harmonic, raising};
use graded_ll::spectrum::{discretize_ll, gamma_plus_matrix, gamma_spectrum_probe, harmonic_spectrum_check};
use graded_ll::wave::harmonic_state;
use graded_ll_bench::{desk_grid, rep_one};

fn operators(c: &mut Criterion) {
    let (h, up) = (hll_harmonic(), raising());
    c.bench_function("normal-form product Hll * b†^3", |b| {
        b.iter(|| black_box(&h) * &black_box(&up).pow(3))
    });
    let d = builtin_algebra("D").unwrap();
    c.bench_function("closure and Jacobi for D", |b| b.iter(|| jacobi_check(black_box(&d))));
    let l = builtin_algebra("L").unwrap();
    c.bench_function("closure and Jacobi for L", |b| b.iter(|| jacobi_check(black_box(&l))));
}

fn states(c: &mut Criterion) {
    let rep = rep_one();
    c.bench_function("harmonic_state(6)", |b| b.iter(|| harmonic_state(black_box(6), &rep)));
}

fn numerics(c: &mut Criterion) {
    let rep = rep_one();
    let g = desk_grid();
    let ll = discretize_ll(&g, 2.0, 1.0, &rep).unwrap();
    let gp = gamma_plus_matrix(&g, &rep).unwrap();
    c.bench_function("pencil probe N=800", |b| b.iter(|| gamma_spectrum_probe(&ll, &gp, black_box(1.5))));
    let mut group = c.benchmark_group("spectrum");
    group.sample_size(10);
    group.bench_function("harmonic check N=800 count=5", |b| {
        b.iter(|| harmonic_spectrum_check(2.0, 1.0, &g, 5, &rep))
    });
    group.finish();
}

criterion_group!(benches, operators, states, numerics);
criterion_main!(benches);
