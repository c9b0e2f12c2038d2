//! Compares the data-parallel execution lane against the sequential
//! fallback on the two sweep shapes that dominate real workloads, plus one
//! end-to-end classification.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ringlab::polarity::weakly_jqp_element;
use ringlab::ring::{make_matrix_ring, make_triangular_ring, make_zn, DEFAULT_CONSTRUCTION_CAP};
use ringlab::structure::unit_inverse_of;
use ringlab::{exec, Caps};

fn unit_scan(c: &mut Criterion) {
    let z4 = make_zn(4, DEFAULT_CONSTRUCTION_CAP).unwrap();
    let m2 = make_matrix_ring(&z4, 2, DEFAULT_CONSTRUCTION_CAP).unwrap();
    let n = m2.order();
    let mut g = c.benchmark_group("unit_scan_m2_z4");
    g.bench_function("parallel", |b| {
        b.iter(|| black_box(exec::map_range(n, |u| unit_inverse_of(&m2, u))))
    });
    g.bench_function("sequential", |b| {
        b.iter(|| black_box(exec::seq::map_range(n, |u| unit_inverse_of(&m2, u))))
    });
    g.finish();
}

fn weakly_sweep(c: &mut Criterion) {
    let z3 = make_zn(3, DEFAULT_CONSTRUCTION_CAP).unwrap();
    let t2 = make_triangular_ring(&z3, 2, DEFAULT_CONSTRUCTION_CAP).unwrap();
    // Warm the radical and idempotent caches so both lanes time only the sweep.
    for a in 0..t2.order() {
        let _ = weakly_jqp_element(&t2, a).unwrap();
    }
    let n = t2.order();
    let mut g = c.benchmark_group("weakly_sweep_t2_z3");
    g.bench_function("parallel", |b| {
        b.iter(|| {
            black_box(exec::map_range(n, |a| weakly_jqp_element(&t2, a).unwrap().is_some()))
        })
    });
    g.bench_function("sequential", |b| {
        b.iter(|| {
            black_box(exec::seq::map_range(n, |a| weakly_jqp_element(&t2, a).unwrap().is_some()))
        })
    });
    g.finish();
}

fn classify_end_to_end(c: &mut Criterion) {
    let z3 = make_zn(3, DEFAULT_CONSTRUCTION_CAP).unwrap();
    c.bench_function("classify_m2_z3", |b| {
        b.iter(|| {
            // Fresh ring per iteration so per-ring caches do not carry over.
            let m2 = make_matrix_ring(&z3, 2, DEFAULT_CONSTRUCTION_CAP).unwrap();
            black_box(ringlab::polarity::classify_ring(&m2, &Caps::default()).unwrap())
        })
    });
}

criterion_group!(sweeps, unit_scan, weakly_sweep, classify_end_to_end);
criterion_main!(sweeps);
