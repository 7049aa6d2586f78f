//! Hot-path benchmarks: field and Hessian evaluation, a full collapse
//! integration, minimum finding, and catalog loading.

use std::collections::BTreeMap;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nalgebra::DVector;

use chamberflow_core::flow::{integrate, minimal_point, FlowDomain, IntegrateOpts};
use chamberflow_core::meanfield::{hessian_rho, potential_rho, vector_field_x};
use chamberflow_core::rootsys::{default_catalog, Action};

fn action(name: &str) -> Action {
    Action::from_catalog(&default_catalog(), name, &BTreeMap::new()).unwrap()
}

fn bench_field(c: &mut Criterion) {
    let small = action("rho1-SU3-SO3");
    let large = action("rho14-G2-SO4");
    let y_small = DVector::from_row_slice(&[0.4, 0.1]);
    let y_large = small_interior_point(&large);

    let mut g = c.benchmark_group("field");
    g.bench_function("x_3roots", |b| {
        b.iter(|| vector_field_x(&small, black_box(&y_small)).unwrap())
    });
    g.bench_function("x_6roots", |b| {
        b.iter(|| vector_field_x(&large, black_box(&y_large)).unwrap())
    });
    g.bench_function("rho_6roots", |b| {
        b.iter(|| potential_rho(&large, black_box(&y_large)).unwrap())
    });
    g.bench_function("hessian_6roots", |b| {
        b.iter(|| hessian_rho(&large, black_box(&y_large)).unwrap())
    });
    g.finish();
}

fn small_interior_point(a: &Action) -> DVector<f64> {
    let r = &a.chamber.reference_point;
    r * 1.0
}

fn bench_integrate(c: &mut Criterion) {
    let a = action("rho1-SU3-SO3");
    let dom = FlowDomain::chamber(&a);
    let start = DVector::from_row_slice(&[std::f64::consts::FRAC_PI_6 / 2.0, 0.0]);
    let opts = IntegrateOpts::default();
    c.bench_function("integrate_collapse", |b| {
        b.iter(|| integrate(&dom, black_box(&start), &opts).unwrap())
    });
}

fn bench_minimal(c: &mut Criterion) {
    let a = action("rho5-SO10-U5");
    let dom = FlowDomain::chamber(&a);
    c.bench_function("minimal_point", |b| {
        b.iter(|| minimal_point(black_box(&dom)).unwrap())
    });
}

fn bench_catalog(c: &mut Criterion) {
    c.bench_function("catalog_load", |b| b.iter(default_catalog));
}

criterion_group!(
    benches,
    bench_field,
    bench_integrate,
    bench_minimal,
    bench_catalog
);
criterion_main!(benches);
