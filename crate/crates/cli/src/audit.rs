//! Closed-form expressions checked against direct simulation at seeded
//! random points.

use std::f64::consts::PI;

use anyhow::Result;
use ludersgap::lgi::{
    self, k13_closed_equal_g, k_closed_form_as, InitialState, KClosedForm, LgiParams, Rule,
    Transcription,
};
use ludersgap::nci::{self, beta_luders_closed, beta_vn_closed, NciParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{format_g12, Report};

pub const POINTS: usize = 500;
pub const AGREEMENT_TOL: f64 = 1e-9;
const SEED: u64 = 0x1d6a_2015;

pub const PASS: &str = "pass";
pub const SUSPECT: &str = "suspect-typo";

/// Point -> (closed form, simulation).
type Check = Box<dyn Fn(&[f64]) -> Result<(f64, f64)>>;

struct Item {
    equation: &'static str,
    form: &'static str,
    names: &'static [&'static str],
    check: Check,
}

const COUPLINGS: &[&str] = &["g1", "g2", "xi"];
const NCI: &[&str] = &["theta", "phi", "eps", "lam", "del"];

fn sample(rng: &mut ChaCha8Rng, names: &[&str]) -> Vec<f64> {
    names
        .iter()
        .map(|n| match *n {
            "g" | "g1" | "g2" => rng.gen_range(-PI..PI),
            "theta" | "phi" => rng.gen_range(0.0..2.0 * PI),
            _ => rng.gen_range(0.0..=1.0),
        })
        .collect()
}

fn k_sim(which: KClosedForm, x: &[f64]) -> Result<f64> {
    let p = LgiParams::new(x[0], x[1], x[2], which.initial_state(), Rule::VonNeumann);
    Ok(which.select(&lgi::k_values(&p)?))
}

fn k_item(which: KClosedForm, form: Transcription, form_name: &'static str) -> Item {
    Item {
        equation: which.label(),
        form: form_name,
        names: COUPLINGS,
        check: Box::new(move |x| {
            Ok((
                k_closed_form_as(which, form, x[0], x[1], x[2]),
                k_sim(which, x)?,
            ))
        }),
    }
}

fn beta_item(equation: &'static str, rule: Rule, pick: fn(&nci::BetaValue) -> f64) -> Item {
    Item {
        equation,
        form: "literal",
        names: NCI,
        check: Box::new(move |x| {
            let p = NciParams::new(x[0], x[1], x[2], x[3], x[4], rule);
            let closed = match rule {
                Rule::Luders => beta_luders_closed(p.theta, p.phi),
                Rule::VonNeumann => beta_vn_closed(&p),
            };
            Ok((pick(&closed), pick(&nci::beta_values(&p)?)))
        }),
    }
}

fn items() -> Vec<Item> {
    use KClosedForm::*;
    use Transcription::*;
    vec![
        Item {
            equation: "k13_equal_g",
            form: "literal",
            names: &["g"],
            check: Box::new(|x| {
                let p = LgiParams::new(x[0], x[0], 1.0, InitialState::Ket001, Rule::VonNeumann);
                Ok((k13_closed_equal_g(x[0]), lgi::k_values(&p)?.k13))
            }),
        },
        beta_item("b31_luders", Rule::Luders, |b| b.b31),
        beta_item("b23_luders", Rule::Luders, |b| b.b23),
        beta_item("b12_luders", Rule::Luders, |b| b.b12),
        k_item(K13, Literal, "literal"),
        k_item(K13, G2Factor, "g2-factor"),
        k_item(K13, Corrected, "corrected"),
        k_item(K23, Literal, "literal"),
        k_item(K23, Corrected, "corrected"),
        k_item(K12, Literal, "literal"),
        k_item(K12, Corrected, "corrected"),
        k_item(K12Ket100, Literal, "literal"),
        beta_item("n13v", Rule::VonNeumann, |b| b.b31),
        beta_item("n23v", Rule::VonNeumann, |b| b.b23),
        beta_item("n12v", Rule::VonNeumann, |b| b.b12),
        Item {
            // k13v with the g2 factor, specialised to xi = 1 and g1 = g2,
            // against the equal-coupling closed form
            equation: "k13v_reduction",
            form: "g2-factor",
            names: &["g"],
            check: Box::new(|x| {
                Ok((
                    k_closed_form_as(K13, G2Factor, x[0], x[0], 1.0),
                    k13_closed_equal_g(x[0]),
                ))
            }),
        },
    ]
}

pub fn run() -> Result<Report> {
    let mut r = Report::new(
        "audit",
        &[
            "equation",
            "form",
            "points",
            "max_deviation",
            "verdict",
            "worst_point",
        ],
    );
    for (k, item) in items().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + k as u64);
        let mut worst = (-1.0f64, Vec::new());
        for _ in 0..POINTS {
            let x = sample(&mut rng, item.names);
            let (closed, sim) = (item.check)(&x)?;
            let d = (closed - sim).abs();
            // NaN deviations count as the worst possible
            if d.is_nan() || d > worst.0 {
                worst = (if d.is_nan() { f64::MAX } else { d }, x);
            }
        }
        let verdict = if worst.0 < AGREEMENT_TOL {
            PASS
        } else {
            SUSPECT
        };
        let point = item
            .names
            .iter()
            .zip(&worst.1)
            .map(|(n, v)| format!("{n}={}", format_g12(*v)))
            .collect::<Vec<_>>()
            .join(";");
        r.push(vec![
            item.equation.into(),
            item.form.into(),
            POINTS.into(),
            worst.0.into(),
            verdict.into(),
            point.into(),
        ]);
    }
    Ok(r)
}

/// Verdict of a `(equation, form)` row, if present.
pub fn verdict<'a>(report: &'a Report, equation: &str, form: &str) -> Option<&'a str> {
    use crate::report::Cell;
    report
        .rows
        .iter()
        .find_map(|row| match (&row[0], &row[1], &row[4]) {
            (Cell::Text(e), Cell::Text(f), Cell::Text(v)) if e == equation && f == form => {
                Some(v.as_str())
            }
            _ => None,
        })
}
