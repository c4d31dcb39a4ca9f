use std::collections::BTreeMap;

use anyhow::{bail, Result};
use ludersgap::lgi::{self, Rule};
use ludersgap::nci;
use ludersgap::optim::{default_points_per_dim, maximize, ArgMaxResult, Dim, ParamBox};

use crate::report::{Cell, Report};
use crate::spec::{rule_name, RunSpec, Scenario};

/// The three K (or beta) values at `values` under the spec's rule.
pub fn outputs(spec: &RunSpec, sc: Scenario, values: &BTreeMap<String, f64>) -> Result<[f64; 3]> {
    Ok(match sc {
        Scenario::Lgi => {
            let k = lgi::k_values(&spec.lgi_params(values)?)?;
            [k.k13, k.k23, k.k12]
        }
        Scenario::Nci => {
            let b = nci::beta_values(&spec.nci_params(values)?)?;
            [b.b31, b.b23, b.b12]
        }
    })
}

pub fn evaluate(spec: &RunSpec) -> Result<Report> {
    let sc = spec.check_params(&[])?;
    let selected = spec.rule()?;
    let mut r = Report::new(
        "evaluate",
        &["quantity", "value", "luders", "vn", "correction"],
    );
    // (label, luders, vn, correction) for three correlators, then three combinations
    let rows: Vec<(&str, f64, f64, f64)> = match sc {
        Scenario::Lgi => {
            let p = spec.lgi_params(&spec.params)?;
            let l = lgi::correlators(&p.with_rule(Rule::Luders))?;
            let v = lgi::correlators(&p.with_rule(Rule::VonNeumann))?;
            let d = lgi::correction_terms(&p)?;
            let (kl, kv, kd) = (l.k_values(), v.k_values(), d.k_values());
            vec![
                ("c12", l.c12, v.c12, d.c12),
                ("c23", l.c23, v.c23, d.c23),
                ("c13", l.c13, v.c13, d.c13),
                ("k13", kl.k13, kv.k13, kd.k13),
                ("k23", kl.k23, kv.k23, kd.k23),
                ("k12", kl.k12, kv.k12, kd.k12),
            ]
        }
        Scenario::Nci => {
            let p = spec.nci_params(&spec.params)?;
            let l = nci::correlators(&p.with_rule(Rule::Luders))?;
            let v = nci::correlators(&p.with_rule(Rule::VonNeumann))?;
            let d = nci::correction_terms(&p)?;
            let (bl, bv, bd) = (l.beta_values(), v.beta_values(), d.beta_values());
            vec![
                ("c12", l.c12, v.c12, d.c12),
                ("c23", l.c23, v.c23, d.c23),
                ("c31", l.c31, v.c31, d.c31),
                ("b31", bl.b31, bv.b31, bd.b31),
                ("b23", bl.b23, bv.b23, bd.b23),
                ("b12", bl.b12, bv.b12, bd.b12),
            ]
        }
    };
    for (name, l, v, d) in rows {
        let value = if selected == Rule::Luders { l } else { v };
        r.push(vec![
            name.into(),
            value.into(),
            l.into(),
            v.into(),
            d.into(),
        ]);
    }
    Ok(r)
}

pub fn sweep(
    spec: &RunSpec,
    axis: &str,
    from: Option<f64>,
    to: Option<f64>,
    steps: usize,
) -> Result<Report> {
    let sc = spec.check_params(&[axis])?;
    if steps == 0 {
        bail!("--steps must be positive");
    }
    let (lo, hi, _) = sc.domain(axis)?;
    let (a, b) = (from.unwrap_or(lo), to.unwrap_or(hi));
    let [o1, o2, o3] = sc.outputs();
    let mut r = Report::new("sweep", &[axis, o1, o2, o3]);
    for i in 0..steps {
        let x = if steps == 1 {
            a
        } else {
            a + (b - a) * i as f64 / (steps - 1) as f64
        };
        let out = outputs(spec, sc, &spec.values_with(&[(axis, x)]))?;
        r.push(vec![x.into(), out[0].into(), out[1].into(), out[2].into()]);
    }
    Ok(r)
}

pub fn parameter_box(sc: Scenario, vary: &[String]) -> Result<ParamBox> {
    let dims = vary
        .iter()
        .map(|name| {
            let (lo, hi, periodic) = sc.domain(name)?;
            Ok(Dim::new(name.clone(), lo, hi, periodic))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ParamBox::new(dims)?)
}

/// Maximize one output over the `vary` parameters, holding the rest at the
/// spec's values.
pub fn maximize_target(
    spec: &RunSpec,
    target: &str,
    vary: &[String],
    points: Option<usize>,
) -> Result<ArgMaxResult> {
    let free: Vec<&str> = vary.iter().map(String::as_str).collect();
    let sc = spec.check_params(&free)?;
    let Some(idx) = sc.outputs().iter().position(|o| *o == target) else {
        bail!(
            "unknown target `{target}` for this scenario (expected one of {:?})",
            sc.outputs()
        );
    };
    let bx = parameter_box(sc, vary)?;
    // surface invalid fixed parameters as a named error rather than a NaN objective
    let corner: Vec<(&str, f64)> = free
        .iter()
        .copied()
        .zip(bx.dims().iter().map(|d| d.lo))
        .collect();
    outputs(spec, sc, &spec.values_with(&corner))?;
    let objective = |x: &[f64]| {
        let overrides: Vec<(&str, f64)> = free.iter().copied().zip(x.iter().copied()).collect();
        outputs(spec, sc, &spec.values_with(&overrides)).map_or(f64::NAN, |o| o[idx])
    };
    let n = points.unwrap_or_else(|| default_points_per_dim(vary.len()));
    Ok(maximize(objective, &bx, n)?)
}

pub fn default_vary(sc: Scenario) -> Vec<String> {
    match sc {
        Scenario::Lgi => vec!["g1".into(), "g2".into()],
        Scenario::Nci => sc.parameters().iter().map(|s| s.to_string()).collect(),
    }
}

pub fn maximize_cmd(
    spec: &RunSpec,
    target: &str,
    vary: &[String],
    points: Option<usize>,
) -> Result<Report> {
    let vary = if vary.is_empty() {
        default_vary(spec.scenario()?)
    } else {
        vary.to_vec()
    };
    let res = maximize_target(spec, target, &vary, points)?;
    let mut cols = vec!["target", "rule", "value", "grid_best", "evaluations"];
    cols.extend(vary.iter().map(String::as_str));
    let mut r = Report::new("maximize", &cols);
    let mut row: Vec<Cell> = vec![
        target.into(),
        rule_name(spec.rule()?).into(),
        res.value.into(),
        res.grid_best.into(),
        res.evaluations.into(),
    ];
    row.extend(res.point.iter().map(|&x| Cell::Num(x)));
    r.push(row);
    Ok(r)
}
