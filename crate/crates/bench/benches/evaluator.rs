use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use norlund_core::asymp::{dispatch, optimal_truncation};
use norlund_core::cpx::BigComplex;
use norlund_core::descent::{trace_paths, DEFAULT_MAX_LEN, DEFAULT_STEP};
use norlund_core::prec::PrecisionConfig;
use norlund_core::ratcore::{self, ComplexRational};
use norlund_core::saddle::{expansion_coefficients, SaddleContext};
use num_complex::Complex64;
use rug::Rational;
use std::hint::black_box;

fn bench_exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact");
    for n in [10u32, 20, 40] {
        g.bench_with_input(BenchmarkId::new("polynomial", n), &n, |b, &n| {
            b.iter(|| black_box(ratcore::norlund_polynomial(n)))
        });
    }
    let z = ComplexRational::new(Rational::from((2, 3)), Rational::from((1, 4)));
    g.bench_function("eval_n40", |b| {
        b.iter(|| black_box(ratcore::eval_exact(40, &z)))
    });
    g.finish();
}

fn bench_coefficients(c: &mut Criterion) {
    let cfg = PrecisionConfig::default();
    let p = cfg.bits();
    let z = BigComplex::from_f64(p, 2.0 / 3.0, 0.25);
    let mut g = c.benchmark_group("coefficients");
    for kmax in [5usize, 10, 20] {
        g.bench_with_input(BenchmarkId::new("generate", kmax), &kmax, |b, &kmax| {
            b.iter(|| {
                let ctx = SaddleContext::new(z.clone(), 0).unwrap();
                black_box(expansion_coefficients(&ctx, kmax).unwrap())
            })
        });
    }
    g.finish();
}

fn bench_asymptotics(c: &mut Criterion) {
    let cfg = PrecisionConfig::default();
    let p = cfg.bits();
    let mut g = c.benchmark_group("asymptotics");
    for (name, x, y) in [("complex", 2.0 / 3.0, 0.25), ("real_gt_one", 2.0, 0.0)] {
        let z = BigComplex::from_f64(p, x, y);
        g.bench_function(BenchmarkId::new("dispatch_k3", name), |b| {
            b.iter(|| black_box(dispatch(20, &z, 3, &cfg).unwrap()))
        });
    }
    let z = BigComplex::from_f64(p, 2.0 / 3.0, 0.25);
    g.bench_function("optimal_truncation_k14", |b| {
        b.iter(|| black_box(optimal_truncation(10, &z, 14, &cfg).unwrap()))
    });
    g.finish();
}

fn bench_paths(c: &mut Criterion) {
    c.bench_function("paths/trace_four_branches", |b| {
        b.iter(|| {
            black_box(
                trace_paths(
                    Complex64::new(1.0, 1.0),
                    0,
                    DEFAULT_STEP,
                    DEFAULT_MAX_LEN,
                )
                .unwrap(),
            )
        })
    });
}

criterion_group!(
    benches,
    bench_exact,
    bench_coefficients,
    bench_asymptotics,
    bench_paths
);
criterion_main!(benches);
