use std::f64::consts::PI;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ludersgap::lgi::{k_values, InitialState, LgiParams, Rule};
use ludersgap::nci::{beta_values, NciParams};
use ludersgap::optim::{grid_scan_with, maximize_with, Dim, Execution, ParamBox};

fn k13_vn(x: &[f64]) -> f64 {
    let p = LgiParams::new(x[0], x[1], 1.0, InitialState::Ket001, Rule::VonNeumann);
    k_values(&p).map(|k| k.k13).unwrap_or(f64::NAN)
}

fn beta31_vn(x: &[f64]) -> f64 {
    let p = NciParams::new(x[0], x[1], x[2], x[3], x[4], Rule::VonNeumann);
    beta_values(&p).map(|b| b.b31).unwrap_or(f64::NAN)
}

fn couplings() -> ParamBox {
    ParamBox::new(vec![
        Dim::new("g1", -PI, PI, true),
        Dim::new("g2", -PI, PI, true),
    ])
    .unwrap()
}

fn nci_box() -> ParamBox {
    ParamBox::new(vec![
        Dim::new("theta", 0.0, 2.0 * PI, true),
        Dim::new("phi", 0.0, 2.0 * PI, true),
        Dim::new("eps", 0.0, 1.0, false),
        Dim::new("lam", 0.0, 1.0, false),
        Dim::new("del", 0.0, 1.0, false),
    ])
    .unwrap()
}

fn bench_lgi_scan(c: &mut Criterion) {
    let bx = couplings();
    let mut group = c.benchmark_group("lgi_k13_scan_61x61");
    for (label, exec) in [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ] {
        group.bench_function(label, |b| {
            b.iter(|| grid_scan_with(k13_vn, black_box(&bx), 61, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_nci_maximize(c: &mut Criterion) {
    let bx = nci_box();
    let mut group = c.benchmark_group("nci_beta31_maximize_7pt");
    group.sample_size(10);
    for (label, exec) in [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ] {
        group.bench_function(label, |b| {
            b.iter(|| maximize_with(beta31_vn, black_box(&bx), 7, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_lgi_scan, bench_nci_maximize);
criterion_main!(benches);
