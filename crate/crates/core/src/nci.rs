//! Noncontextual combinations for three mutually commuting dichotomic qutrit
//! observables `A_i = I - 2|alpha_i><alpha_i|`.
//!
//! Each pair correlator is a separate two-measurement experiment on a fresh
//! copy of `psi(theta, phi)`: the first-listed observable is measured first,
//! under the selected rule and with its own basis parameter (`eps` for `A1`,
//! `lam` for `A2`, `del` for `A3`); the second is read through its coarse
//! blocks. No evolution happens between the two measurements.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::lgi::{check_unit_interval, Rule};
use crate::matcore::{pure_state, CMatrix, CVector, DensityMatrix, Unitary};
use crate::measure::{
    projectors_from_basis, sequential_correlation, vn_correction_term, EigenBasis, Measurement,
    UpdateRule,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NciParams {
    pub theta: f64,
    pub phi: f64,
    pub eps: f64,
    pub lam: f64,
    pub del: f64,
    pub rule: Rule,
}

impl NciParams {
    pub fn new(theta: f64, phi: f64, eps: f64, lam: f64, del: f64, rule: Rule) -> Self {
        Self {
            theta,
            phi,
            eps,
            lam,
            del,
            rule,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("theta", self.theta),
            ("phi", self.phi),
            ("eps", self.eps),
            ("lam", self.lam),
            ("del", self.del),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        check_unit_interval("eps", self.eps)?;
        check_unit_interval("lam", self.lam)?;
        check_unit_interval("del", self.del)
    }

    pub fn with_rule(self, rule: Rule) -> Self {
        Self { rule, ..self }
    }

    /// Basis parameter belonging to observable `i` (1-based).
    pub fn basis_param(&self, i: usize) -> f64 {
        match i {
            1 => self.eps,
            2 => self.lam,
            _ => self.del,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaValue {
    pub b31: f64,
    pub b23: f64,
    pub b12: f64,
}

/// `<A1 A2>`, `<A2 A3>`, `<A3 A1>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NciCorrelators {
    pub c12: f64,
    pub c23: f64,
    pub c31: f64,
}

impl NciCorrelators {
    pub fn beta_values(&self) -> BetaValue {
        BetaValue {
            b31: self.c12 + self.c23 - self.c31,
            b23: self.c12 - self.c23 + self.c31,
            b12: -self.c12 + self.c23 + self.c31,
        }
    }
}

/// Ordered pairs `(first, second)` in the order `c12, c23, c31`.
pub const PAIRS: [(usize, usize); 3] = [(1, 2), (2, 3), (3, 1)];

fn alpha(i: usize) -> CVector {
    let s = FRAC_1_SQRT_2;
    match i {
        1 => CVector::from_real(&[-s, 0.0, s]),
        2 => CVector::from_real(&[s, 0.0, s]),
        3 => CVector::from_real(&[0.0, 1.0, 0.0]),
        _ => unreachable!("observable index checked by caller"),
    }
}

fn check_observable(i: usize) -> Result<()> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "observable",
            value: i as f64,
            lo: 1.0,
            hi: 3.0,
        })
    }
}

/// `A_i = I - 2 |alpha_i><alpha_i|` for `i = 1, 2, 3`.
pub fn nci_observables() -> [CMatrix; 3] {
    [1, 2, 3].map(|i| {
        CMatrix::identity(3)
            .sub(&CMatrix::projector(&alpha(i)).scale_real(2.0))
            .expect("3x3")
    })
}

/// Unprimed eigenvectors `(v1, v2, v3)` with eigenvalues `(-1, 1, 1)`.
fn anchors(i: usize) -> [CVector; 3] {
    let s = FRAC_1_SQRT_2;
    match i {
        1 => [
            CVector::from_real(&[-s, 0.0, s]),
            CVector::from_real(&[s, 0.0, s]),
            CVector::from_real(&[0.0, 1.0, 0.0]),
        ],
        2 => [
            CVector::from_real(&[s, 0.0, s]),
            CVector::from_real(&[-s, 0.0, s]),
            CVector::from_real(&[0.0, 1.0, 0.0]),
        ],
        _ => [
            CVector::from_real(&[0.0, 1.0, 0.0]),
            CVector::from_real(&[0.0, 0.0, 1.0]),
            CVector::from_real(&[1.0, 0.0, 0.0]),
        ],
    }
}

/// Eigenbasis of `A_i` with the `+1` pair rotated by `param`:
/// `v2' = p v2 + sqrt(1-p^2) v3`, `v3' = sqrt(1-p^2) v2 - p v3`.
pub fn nci_basis(observable: usize, param: f64) -> Result<EigenBasis> {
    check_observable(observable)?;
    if !param.is_finite() {
        return Err(Error::NonFinite {
            name: "basis parameter",
            value: param,
        });
    }
    check_unit_interval("basis parameter", param)?;
    let [v1, v2, v3] = anchors(observable);
    let c = (1.0 - param * param).sqrt();
    EigenBasis::new(vec![
        (v1, -1.0),
        (v2.combine(param, &v3, c)?, 1.0),
        (v2.combine(c, &v3, -param)?, 1.0),
    ])
}

/// Pure state `(sin(theta) sin(phi), cos(theta) sin(phi), cos(phi))`.
pub fn psi(theta: f64, phi: f64) -> Result<DensityMatrix> {
    pure_state(&psi_ket(theta, phi))
}

pub fn psi_ket(theta: f64, phi: f64) -> CVector {
    CVector::from_real(&[theta.sin() * phi.sin(), theta.cos() * phi.sin(), phi.cos()])
}

fn first_measurement(p: &NciParams, i: usize) -> Result<(EigenBasis, Measurement)> {
    let basis = nci_basis(i, p.basis_param(i))?;
    let rule = match p.rule {
        Rule::Luders => UpdateRule::Luders,
        Rule::VonNeumann => UpdateRule::VonNeumann(basis.clone()),
    };
    let m = Measurement::new(&basis, &rule)?;
    Ok((basis, m))
}

/// `<A_first A_second>`: measure `A_first` (with its basis parameter from
/// `p`), then read `A_second`.
pub fn pair_correlator(p: &NciParams, first: usize, second: usize) -> Result<f64> {
    check_observable(first)?;
    check_observable(second)?;
    p.validate()?;
    let rho = psi(p.theta, p.phi)?;
    let (_, m) = first_measurement(p, first)?;
    let blocks = projectors_from_basis(&nci_basis(second, 1.0)?);
    sequential_correlation(&rho, &m, &Unitary::identity(3), &blocks)
}

pub fn correlators(p: &NciParams) -> Result<NciCorrelators> {
    let [c12, c23, c31] = PAIRS.map(|(i, j)| pair_correlator(p, i, j));
    Ok(NciCorrelators {
        c12: c12?,
        c23: c23?,
        c31: c31?,
    })
}

pub fn beta_values(p: &NciParams) -> Result<BetaValue> {
    Ok(correlators(p)?.beta_values())
}

/// Lüders minus von Neumann value of each pair correlator.
pub fn correction_terms(p: &NciParams) -> Result<NciCorrelators> {
    p.validate()?;
    let rho = psi(p.theta, p.phi)?;
    let obs = nci_observables();
    let [c12, c23, c31] = PAIRS.map(|(i, j)| {
        let basis = nci_basis(i, p.basis_param(i))?;
        vn_correction_term(&rho, &basis, &obs[j - 1])
    });
    Ok(NciCorrelators {
        c12: c12?,
        c23: c23?,
        c31: c31?,
    })
}

/// Closed-form Lüders values.
pub fn beta_luders_closed(theta: f64, phi: f64) -> BetaValue {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    BetaValue {
        b31: 1.0 - 2.0 * (cp + st * sp).powi(2),
        b23: 1.0 - 2.0 * (cp - st * sp).powi(2),
        b12: 1.0 - 4.0 * ct * ct * sp * sp,
    }
}

/// Published closed-form von Neumann values (`n13v`, `n23v`, `n12v`),
/// transcribed literally. They disagree with direct simulation away from a
/// few special points; see the audit command.
pub fn beta_vn_closed(p: &NciParams) -> BetaValue {
    let (e, l, d) = (p.eps, p.lam, p.del);
    let (e2, l2, d2) = (e * e, l * l, d * d);
    let (e4, l4, d4) = (e2 * e2, l2 * l2, d2 * d2);
    let se = (1.0 - e2).sqrt();
    let sl = (1.0 - l2).sqrt();
    let sd = (1.0 - d2).sqrt();
    let r2 = std::f64::consts::SQRT_2;
    let (st, ct) = p.theta.sin_cos();
    let (sp, cp) = p.phi.sin_cos();
    let c2t = (2.0 * p.theta).cos();
    let s2t = (2.0 * p.theta).sin();
    let s2p = (2.0 * p.phi).sin();
    let (cp2, sp2, st2) = (cp * cp, sp * sp, st * st);

    let b31 =
        (-1.0 + 2.0 * e2 - 2.0 * e4 + (-1.0 + l2) * 2.0 * l2 + 2.0 * d * (1.0 - 2.0 * d2) * sd)
            * cp2
            + ((e - l) * (e + l) * (-1.0 + e2 + l2)
                + (1.0 - 3.0 * e2 + 3.0 * e4 + 3.0 * l2 - 3.0 * l4) * c2t
                + 2.0 * d * (-1.0 + 2.0 * d2) * sd * st2
                + r2 * (e * (1.0 - 2.0 * e2) * se + l * (1.0 - 2.0 * l2) * sl) * s2t)
                * sp2
            - (r2 * (e * (-1.0 + 2.0 * e2) * se + l * (-1.0 + 2.0 * l2) * sl) * ct
                + st
                + 2.0 * (-e2 + e4 - l2 + l4 + 2.0 * d2 - 2.0 * d4) * st)
                * s2p;

    let b23 = (-1.0 + 2.0 * e2 + 2.0 * e4 + 2.0 * l2 - 2.0 * l4 + 2.0 * d * (-1.0 + 2.0 * d2) * sd)
        * cp2
        + (-e2 + e4 - l2
            + l4
            + (1.0 - 3.0 * e2 + 3.0 * e4 - 3.0 * l2 + 3.0 * l4) * c2t
            + 2.0 * d * (1.0 - 2.0 * d2) * sd * st2
            + r2 * (e * (1.0 - 2.0 * e2) * se + l * (-1.0 + 2.0 * l2) * sl) * s2t)
            * sp2
        + (r2 * (e * (1.0 - 2.0 * e2) * se + l * (1.0 - 2.0 * l2) * sl) * ct
            + st
            + 2.0 * (e2 - e4 - l2 + l4 + 2.0 * d2 - 2.0 * d4) * st)
            * s2p;

    let b12 =
        (-1.0 + 2.0 * e2 + 2.0 * e4 + (-1.0 + l2) * 2.0 * l2 + 2.0 * d * (-1.0 + 2.0 * d2) * sd)
            * cp2
            - (1.0 - e2 + e4 - l2
                + l4
                + (2.0 - 3.0 * e2 + 3.0 * e4 - 3.0 * l2 + 3.0 * l4) * c2t
                + 2.0 * d * (-1.0 + 2.0 * d2) * sd * st2
                + r2 * (e * (1.0 - 2.0 * e2) * se + l * (-1.0 + 2.0 * l2) * sl) * s2t)
                * sp2
            + (r2 * (e * (-1.0 + 2.0 * e2) * se + l * (-1.0 + 2.0 * l2) * sl) * ct
                + (-1.0 - 2.0 * e2 + 2.0 * e4 + 2.0 * l2 - 2.0 * l4 + 4.0 * d2 - 4.0 * d4) * st)
                * s2p;

    BetaValue { b31, b23, b12 }
}
