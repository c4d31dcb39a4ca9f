use std::f64::consts::{FRAC_1_SQRT_2, PI};

use ludersgap::lgi::{k13_closed_equal_g, k_values, InitialState, LgiParams, Rule};
use ludersgap::nci::{beta_values, NciParams};
use ludersgap::optim::{
    default_points_per_dim, grid_scan, grid_scan_with, maximize, maximize_with, refine, Dim,
    Execution, ParamBox,
};

/// Root of the derivative of the equal-coupling closed form near 1.3.
const EQ7_ARGMAX: f64 = 1.3038754414796416;
const EQ7_MAX: f64 = 1.75650248872424;

fn coupling_box() -> ParamBox {
    ParamBox::new(vec![
        Dim::new("g1", -PI, PI, true),
        Dim::new("g2", -PI, PI, true),
    ])
    .unwrap()
}

fn k(g1: f64, g2: f64, xi: f64, rule: Rule) -> ludersgap::lgi::KValue {
    k_values(&LgiParams::new(g1, g2, xi, InitialState::Ket001, rule)).unwrap()
}

#[test]
fn equal_coupling_scan_and_refine() {
    let bx = ParamBox::new(vec![Dim::new("g", -PI, PI, true)]).unwrap();
    let f = |x: &[f64]| k13_closed_equal_g(x[0]);
    let scan = grid_scan(f, &bx, 629).unwrap();
    assert_eq!(scan.len(), 629);
    let (g0, v0) = (&scan[0].0, scan[0].1);
    assert!((g0[0].abs() - EQ7_ARGMAX).abs() < 0.01);
    assert!((v0 - 1.75).abs() < 0.01);
    let (g, v) = refine(f, g0, &bx).unwrap();
    assert!((v - EQ7_MAX).abs() < 1e-9);
    assert!((g[0].abs() - EQ7_ARGMAX).abs() < 1e-4);
    assert!((g[0].abs() - 1.31).abs() < 0.01);
}

#[test]
fn trivial_objectives() {
    let bx = ParamBox::new(vec![Dim::new("x", 0.0, 4.0, false)]).unwrap();
    let (x, v) = refine(|x| -(x[0] - 2.0).powi(2), &[1.0], &bx).unwrap();
    assert!((x[0] - 2.0).abs() < 1e-8 && v.abs() < 1e-8);

    let sq = ParamBox::new(vec![
        Dim::new("x", 0.0, 1.0, false),
        Dim::new("y", 0.0, 1.0, false),
    ])
    .unwrap();
    let scan = grid_scan(|x| -(x[0] - 0.5).powi(2) - (x[1] - 0.5).powi(2), &sq, 11).unwrap();
    assert_eq!(scan[0].0, vec![0.5, 0.5]);
    let flat = grid_scan(|_| 1.0, &sq, 5).unwrap();
    assert!(flat.iter().all(|(_, v)| *v == 1.0));
    assert_eq!(flat[0].0, vec![0.0, 0.0]);
    assert_eq!(flat[1].0, vec![0.0, 0.25]);
}

#[test]
fn table_point_refines_to_two() {
    let bx = coupling_box();
    let f = |x: &[f64]| k(x[0], x[1], FRAC_1_SQRT_2, Rule::VonNeumann).k23;
    let (x, v) = refine(f, &[PI - 0.05, PI - 0.05], &bx).unwrap();
    assert!((v - 2.0).abs() < 1e-6);
    for c in x {
        // periodic dims are reported in [-pi, pi)
        assert!((c.abs() - PI).abs() < 1e-3);
    }
}

#[test]
fn lgi_maxima() {
    let bx = coupling_box();
    let n = default_points_per_dim(2);
    let r = maximize(|x| k(x[0], x[1], 1.0, Rule::VonNeumann).k13, &bx, n).unwrap();
    assert!((r.value - 1.9097540491575038).abs() < 1e-9);
    assert!((r.value - 1.91).abs() < 0.005);
    assert!(r.value >= r.grid_best - 1e-12);
    let near = |a: f64, b: f64| (r.point[0] - a).abs() < 0.02 && (r.point[1] - b).abs() < 0.02;
    assert!(near(0.98, 1.85) || near(-0.98, -1.85), "{:?}", r.point);

    let r = maximize(|x| k(x[0], x[1], 1.0, Rule::Luders).k13, &bx, n).unwrap();
    assert!((r.value - 1.4589937121941612).abs() < 1e-9);
    assert!((r.value - 1.45).abs() < 0.01);
}

#[test]
fn nci_maximum_exceeds_luders_bound() {
    let bx = ParamBox::new(vec![
        Dim::new("theta", 0.0, 2.0 * PI, true),
        Dim::new("phi", 0.0, 2.0 * PI, true),
        Dim::new("eps", 0.0, 1.0, false),
        Dim::new("lam", 0.0, 1.0, false),
        Dim::new("del", 0.0, 1.0, false),
    ])
    .unwrap();
    let f = |x: &[f64]| {
        beta_values(&NciParams::new(
            x[0],
            x[1],
            x[2],
            x[3],
            x[4],
            Rule::VonNeumann,
        ))
        .unwrap()
        .b31
    };
    let r = maximize(f, &bx, 7).unwrap();
    assert!(r.value >= 1.99, "{r:?}");
    assert!(bx.contains(&r.point));
    assert!(r.point[0] < 2.0 * PI && r.point[1] < 2.0 * PI);
}

#[test]
fn execution_modes_agree_bitwise() {
    let bx = coupling_box();
    let f = |x: &[f64]| k(x[0], x[1], 0.6, Rule::VonNeumann).k12;
    let a = grid_scan_with(f, &bx, 31, Execution::Sequential).unwrap();
    let b = grid_scan_with(f, &bx, 31, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    let a = maximize_with(f, &bx, 31, Execution::Sequential).unwrap();
    let b = maximize_with(f, &bx, 31, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(maximize(f, &bx, 31).unwrap(), b);
}

#[test]
fn guards() {
    let big = ParamBox::new(
        (0..6)
            .map(|i| Dim::new(format!("x{i}"), 0.0, 1.0, false))
            .collect(),
    )
    .unwrap();
    assert!(grid_scan(|_| 0.0, &big, 100).is_err());
    let bx = coupling_box();
    assert!(grid_scan(|_| 0.0, &bx, 1).is_err());
    assert!(maximize(|x| if x[0] > 0.0 { f64::NAN } else { 0.0 }, &bx, 5).is_err());
    assert!(ParamBox::new(vec![Dim::new("x", 1.0, 1.0, false)]).is_err());
    assert!(ParamBox::new(vec![]).is_err());
}
