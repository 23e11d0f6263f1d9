//! Throughput of the three hot paths: per-mode evolution, radial quadrature
//! at increasing panel counts, and a whole-space norm at one time.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sdwave_core::harness::{banded_solution_plan, solution_l2_sq, QuadSettings};
use sdwave_core::{
    characteristic_roots, evolve_exact, integrate_radial, make_gaussian, Complex, InitialDatum,
    ModelParams, QuadraturePlan, RadialIntegrand, Segment,
};

fn bench_evolve(c: &mut Criterion) {
    let params = ModelParams::new(2.0, 3).unwrap();
    let frequencies: Vec<f64> = (0..512)
        .map(|i| 1e-2 * (1e3f64).powf(i as f64 / 511.0))
        .collect();
    let roots: Vec<_> = frequencies
        .iter()
        .map(|&r| characteristic_roots(&params, r).unwrap())
        .collect();
    let u0 = Complex::new(0.8, 0.0);
    let u1 = Complex::new(-0.35, 0.0);
    c.bench_function("evolve_exact/512_modes", |b| {
        b.iter(|| {
            let mut acc = Complex::new(0.0, 0.0);
            for pair in &roots {
                acc += evolve_exact(black_box(pair), u0, u1, black_box(10.0)).u_hat;
            }
            acc
        })
    });
}

fn bench_quadrature(c: &mut Criterion) {
    let mut group = c.benchmark_group("integrate_radial");
    for panels in [32usize, 128, 512] {
        let plan =
            QuadraturePlan::from_segments(vec![Segment::new(0.0, 8.0, panels)], 12, None).unwrap();
        let f = RadialIntegrand::smooth(|r| (-r * r).exp() * (3.0 * r).cos(), 3).unwrap();
        group.throughput(criterion::Throughput::Elements(plan.total_panels() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(panels), &plan, |b, plan| {
            b.iter(|| integrate_radial(black_box(&f), plan, 1e-10).unwrap().value)
        });
    }
    group.finish();
}

fn bench_norm(c: &mut Criterion) {
    let params = ModelParams::new(2.0, 3).unwrap();
    let u0 = InitialDatum::zero(3);
    let u1 = make_gaussian(1.0, 0.5, 3).unwrap();
    let settings = QuadSettings::default();
    let plan = banded_solution_plan(1e4, &params, &settings).unwrap();
    c.bench_function(
        &format!("solution_l2_sq/t=1e4/{}_panels", plan.total_panels()),
        |b| {
            b.iter(|| {
                solution_l2_sq(black_box(1e4), &params, &u0, &u1, &settings)
                    .unwrap()
                    .value
            })
        },
    );
}

criterion_group!(benches, bench_evolve, bench_quadrature, bench_norm);
criterion_main!(benches);
