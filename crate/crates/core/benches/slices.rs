//! Parallel against sequential on the slice-heavy computations.

use criterion::{criterion_group, criterion_main, Criterion};
use qpoisson::calculus::{Calculus, Side};
use qpoisson::duality::{eg_bracket, is_unimodular};
use qpoisson::hochschild::{hochschild_dims, FiniteGradedAlgebra, HochCoefficients};
use qpoisson::koszul::verify_theorem1;
use qpoisson::parallel;
use qpoisson::poisson::{homology_dims, Which};

fn both<R>(c: &mut Criterion, name: &str, f: impl Fn() -> R) {
    let mut g = c.benchmark_group(name);
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(&f));
    g.bench_function("sequential", |b| b.iter(|| parallel::sequential(&f)));
    g.finish();
}

fn benches(c: &mut Criterion) {
    let calc = Calculus::get(3, Side::Primal);
    let xyz = eg_bracket(&calc.poly("x1*x2*x3 + x1^3 - 2*x2^3").unwrap()).unwrap();
    both(c, "hp_high betti, w <= 5", || homology_dims(&xyz, Which::HpHigh, 0..=3, -3..=5).unwrap());
    both(c, "koszul comparison, w <= 3", || verify_theorem1(&xyz, 3).unwrap());
    let dual = xyz.koszul_dual();
    both(c, "koszul unimodularity, w <= 3", || is_unimodular(&dual, 3).unwrap());
    let ext = FiniteGradedAlgebra::exterior(2).unwrap();
    both(c, "hochschild dims, level <= 4", || hochschild_dims(&ext, HochCoefficients::SelfValued, 4));
}

criterion_group!(slices, benches);
criterion_main!(slices);
