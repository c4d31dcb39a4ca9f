//! Three-time Leggett-Garg scenario on a qutrit.
//!
//! The dichotomic observable is `M1 = -|1><1| + |2><2| + |3><3|`, measured at
//! `t1`, `t2`, `t3` with `H = gamma J_x` evolution in between. Only the
//! products `g1 = gamma (t2 - t1)` and `g2 = gamma (t3 - t2)` enter.
//! Correlators are computed by evolving the state (Schrödinger picture)
//! and measuring in the fixed `M1` basis after each propagator.

use crate::error::{Error, Result};
use crate::matcore::{propagator, pure_state, CMatrix, CVector, DensityMatrix};
use crate::measure::{
    projectors_from_basis, sequential_correlation, vn_correction_term, EigenBasis, Measurement,
    ProjectorSet, UpdateRule,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InitialState {
    /// `(0, 0, 1)^T`
    Ket001,
    /// `(1, 0, 0)^T`
    Ket100,
}

impl InitialState {
    pub fn ket(self) -> CVector {
        match self {
            InitialState::Ket001 => CVector::basis(3, 2),
            InitialState::Ket100 => CVector::basis(3, 0),
        }
    }

    pub fn density(self) -> DensityMatrix {
        pure_state(&self.ket()).expect("basis kets are normalized")
    }
}

/// Which update rule a scenario applies to its first measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Luders,
    VonNeumann,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LgiParams {
    pub g1: f64,
    pub g2: f64,
    pub xi: f64,
    pub initial_state: InitialState,
    pub rule: Rule,
}

impl LgiParams {
    pub fn new(g1: f64, g2: f64, xi: f64, initial_state: InitialState, rule: Rule) -> Self {
        Self {
            g1,
            g2,
            xi,
            initial_state,
            rule,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("g1", self.g1), ("g2", self.g2), ("xi", self.xi)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        check_unit_interval("xi", self.xi)
    }

    pub fn with_rule(self, rule: Rule) -> Self {
        Self { rule, ..self }
    }
}

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name,
            value,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(())
}

/// The three Leggett-Garg combinations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KValue {
    pub k13: f64,
    pub k23: f64,
    pub k12: f64,
}

/// Two-time correlators `<M_r M_s>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LgiCorrelators {
    pub c12: f64,
    pub c23: f64,
    pub c13: f64,
}

impl LgiCorrelators {
    pub fn k_values(&self) -> KValue {
        KValue {
            k13: self.c12 + self.c23 - self.c13,
            k23: self.c12 - self.c23 + self.c13,
            k12: -self.c12 + self.c23 + self.c13,
        }
    }
}

/// `M1` eigenbasis with the degenerate `+1` pair rotated by `xi`:
/// `|1>` (-1), `xi|2> + sqrt(1-xi^2)|3>` (+1), `sqrt(1-xi^2)|2> - xi|3>` (+1).
pub fn m1_basis(xi: f64) -> Result<EigenBasis> {
    if !xi.is_finite() {
        return Err(Error::NonFinite {
            name: "xi",
            value: xi,
        });
    }
    check_unit_interval("xi", xi)?;
    let c = (1.0 - xi * xi).sqrt();
    EigenBasis::new(vec![
        (CVector::basis(3, 0), -1.0),
        (CVector::from_real(&[0.0, xi, c]), 1.0),
        (CVector::from_real(&[0.0, c, -xi]), 1.0),
    ])
}

pub fn m1_observable() -> CMatrix {
    CMatrix::diag_real(&[-1.0, 1.0, 1.0])
}

fn m1_blocks() -> ProjectorSet {
    projectors_from_basis(&m1_basis(1.0).expect("xi = 1 is valid"))
}

/// Accumulated coupling before the first measurement of pair `(r, s)` and
/// between its two measurements.
fn pair_couplings(p: &LgiParams, r: usize, s: usize) -> Result<(f64, f64)> {
    match (r, s) {
        (1, 2) => Ok((0.0, p.g1)),
        (2, 3) => Ok((p.g1, p.g2)),
        (1, 3) => Ok((0.0, p.g1 + p.g2)),
        _ => Err(Error::InvalidPair { r, s }),
    }
}

fn first_measurement(p: &LgiParams) -> Result<(EigenBasis, Measurement)> {
    let basis = m1_basis(p.xi)?;
    let rule = match p.rule {
        Rule::Luders => UpdateRule::Luders,
        Rule::VonNeumann => UpdateRule::VonNeumann(basis.clone()),
    };
    let m = Measurement::new(&basis, &rule)?;
    Ok((basis, m))
}

fn correlator_with(
    p: &LgiParams,
    first: &Measurement,
    second: &ProjectorSet,
    r: usize,
    s: usize,
) -> Result<f64> {
    let (before, between) = pair_couplings(p, r, s)?;
    let rho = p.initial_state.density().evolve(&propagator(before)?)?;
    sequential_correlation(&rho, first, &propagator(between)?, second)
}

/// `<M_r M_s>` for `(r, s)` in `{(1,2), (2,3), (1,3)}`.
pub fn lgi_correlator(p: &LgiParams, r: usize, s: usize) -> Result<f64> {
    p.validate()?;
    let (_, first) = first_measurement(p)?;
    correlator_with(p, &first, &m1_blocks(), r, s)
}

pub fn correlators(p: &LgiParams) -> Result<LgiCorrelators> {
    p.validate()?;
    let (_, first) = first_measurement(p)?;
    let second = m1_blocks();
    Ok(LgiCorrelators {
        c12: correlator_with(p, &first, &second, 1, 2)?,
        c23: correlator_with(p, &first, &second, 2, 3)?,
        c13: correlator_with(p, &first, &second, 1, 3)?,
    })
}

pub fn k_values(p: &LgiParams) -> Result<KValue> {
    Ok(correlators(p)?.k_values())
}

/// Lüders minus von Neumann correlator for each pair, from the cross terms of
/// the degenerate `+1` block (in order `(1,2), (2,3), (1,3)`).
pub fn correction_terms(p: &LgiParams) -> Result<LgiCorrelators> {
    p.validate()?;
    let basis = m1_basis(p.xi)?;
    let obs = m1_observable();
    let term = |r, s| -> Result<f64> {
        let (before, between) = pair_couplings(p, r, s)?;
        let rho = p.initial_state.density().evolve(&propagator(before)?)?;
        let u = propagator(between)?;
        let heisenberg = u.mat().adjoint().mul(&obs)?.mul(u.mat())?;
        vn_correction_term(&rho, &basis, &heisenberg)
    };
    Ok(LgiCorrelators {
        c12: term(1, 2)?,
        c23: term(2, 3)?,
        c13: term(1, 3)?,
    })
}

/// `K13` for the von Neumann rule at `xi = 1`, `g1 = g2 = g`, state `(0,0,1)`:
/// `(1 + 32 cos g - 20 cos 2g + 3 cos 4g) / 16`.
pub fn k13_closed_equal_g(g: f64) -> f64 {
    (1.0 + 32.0 * g.cos() - 20.0 * (2.0 * g).cos() + 3.0 * (4.0 * g).cos()) / 16.0
}

/// Closed-form von Neumann K values as a function of `(g1, g2, xi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KClosedForm {
    /// `K13`, state `(0,0,1)`
    K13,
    /// `K23`, state `(0,0,1)`
    K23,
    /// `K12`, state `(0,0,1)`
    K12,
    /// `K12`, state `(1,0,0)`
    K12Ket100,
}

impl KClosedForm {
    pub const ALL: [KClosedForm; 4] = [
        KClosedForm::K13,
        KClosedForm::K23,
        KClosedForm::K12,
        KClosedForm::K12Ket100,
    ];

    pub fn label(self) -> &'static str {
        match self {
            KClosedForm::K13 => "k13v",
            KClosedForm::K23 => "k23v",
            KClosedForm::K12 => "k12v",
            KClosedForm::K12Ket100 => "k12v2",
        }
    }

    pub fn initial_state(self) -> InitialState {
        match self {
            KClosedForm::K12Ket100 => InitialState::Ket100,
            _ => InitialState::Ket001,
        }
    }

    /// Pick the matching component out of a simulated [`KValue`].
    pub fn select(self, k: &KValue) -> f64 {
        match self {
            KClosedForm::K13 => k.k13,
            KClosedForm::K23 => k.k23,
            KClosedForm::K12 | KClosedForm::K12Ket100 => k.k12,
        }
    }
}

/// Which version of a closed-form expression to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transcription {
    /// Exactly as printed.
    Literal,
    /// Only for `k13v`: the repeated `sin^2(g1/2)` factor read as `sin^2(g2/2)`.
    G2Factor,
    /// All typos found by comparison with simulation fixed.
    Corrected,
}

/// Closed form exactly as published.
pub fn k_closed_form(which: KClosedForm, g1: f64, g2: f64, xi: f64) -> f64 {
    k_closed_form_as(which, Transcription::Literal, g1, g2, xi)
}

/// Closed form under a chosen [`Transcription`]. `G2Factor` only differs from
/// `Literal` for `k13v`.
///
/// Corrections relative to the published expressions:
/// * `k13v`: second `sin^2(g1/2)` is `sin^2(g2/2)`; inner `15 xi^2` is `15 xi^4`.
/// * `k23v`: `(1 - 2xi^2 + 2xi^2)` is `(1 - 2xi^2 + 2xi^4)`.
/// * `k12v`: the `cos(g1)` term carries `sin^4(g2/2)`, not `sin^2(g2/2)`.
pub fn k_closed_form_as(which: KClosedForm, form: Transcription, g1: f64, g2: f64, xi: f64) -> f64 {
    let x2 = xi * xi;
    let x4 = x2 * x2;
    let fixed = form == Transcription::Corrected;
    let (s1, c1, s2, c2) = (g1.sin(), g1.cos(), g2.sin(), g2.cos());
    let sh1 = (g1 / 2.0).sin().powi(2);
    let sh2 = (g2 / 2.0).sin().powi(2);
    let ss2 = (2.0 * g1).sin() * (2.0 * g2).sin();
    match which {
        KClosedForm::K13 => {
            let second_factor = if form == Transcription::Literal {
                sh1
            } else {
                sh2
            };
            let inner = if fixed { 15.0 * x4 } else { 15.0 * x2 };
            1.0 + (-2.0 - 11.0 * x2
                + 11.0 * x4
                + 9.0 * x2 * (-1.0 + x2) * c2
                + c1 * (4.0 - 21.0 * x2 + 21.0 * x4 + (2.0 - 15.0 * x2 + inner) * c2))
                * sh1
                * second_factor
                + (1.0 - 2.0 * x2 + 2.0 * x4) * s1 * s2
                - 0.25 * (1.0 - 6.0 * x2 + 6.0 * x4) * ss2
        }
        KClosedForm::K23 => {
            let last = if fixed { 2.0 * x4 } else { 2.0 * x2 };
            0.25 * (4.0
                + (-4.0 - 3.0 * x2 + 3.0 * x4 - 4.0 * c2
                    + x2 * (-1.0 + x2) * (4.0 * c2 + 9.0 * (2.0 * g2).cos())
                    + c1 * (2.0 - 21.0 * x2
                        + 21.0 * x4
                        + 4.0 * (1.0 - 3.0 * x2 + 3.0 * x4) * c2
                        + (2.0 - 15.0 * x2 + 15.0 * x4) * (2.0 * g2).cos()))
                    * sh1
                - 4.0 * (1.0 - 2.0 * x2 + last) * s1 * s2
                + (1.0 - 6.0 * x2 + 6.0 * x4) * ss2)
        }
        KClosedForm::K12 => {
            let cos_term_factor = if fixed { sh2 * sh2 } else { sh2 };
            0.25 * (4.0
                + (-8.0 - x2
                    + x4
                    + (-2.0 - 3.0 * x2 + 3.0 * x4) * c2
                    + (2.0 * g1).cos()
                        * (4.0 - 27.0 * x2 + 27.0 * x4 + (6.0 - 33.0 * x2 + 33.0 * x4) * c2))
                    * sh2
                - 8.0 * (1.0 - 3.0 * x2 + 3.0 * x4) * c1 * cos_term_factor
                - 4.0 * s1 * s2
                + 8.0 * x2 * (-1.0 + x2) * (-1.0 + 3.0 * c1 * c2) * s1 * s2
                + ss2)
        }
        KClosedForm::K12Ket100 => {
            (x2 - x4 + 2.0 - 16.0 * c1 * sh2 * ((3.0 * x4 - 3.0 * x2 + 1.0) * c2 + x4 - x2 + 3.0)
                + 2.0 * (2.0 * g2).cos()
                + 4.0
                    * (2.0 * g1).cos()
                    * sh2
                    * ((9.0 * x4 - 9.0 * x2 - 2.0) * c2 + 3.0 * x4 - 3.0 * x2 - 4.0)
                - 16.0 * s1 * s2
                - 4.0 * ss2
                - 3.0 * (x2 - 1.0) * x2 * (2.0 * g2).cos()
                + 4.0 * (x4 - x2 + 3.0) * c2)
                / 16.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn vn(g1: f64, g2: f64, xi: f64, state: InitialState) -> LgiParams {
        LgiParams::new(g1, g2, xi, state, Rule::VonNeumann)
    }

    #[test]
    fn m1_basis_endpoints() {
        // xi = 1 recovers the computational basis up to the sign of |3'>
        let b = m1_basis(1.0).unwrap();
        for (k, (v, _)) in b.entries().iter().enumerate() {
            assert_eq!(
                CMatrix::projector(v),
                CMatrix::projector(&CVector::basis(3, k))
            );
        }
        let b = m1_basis(0.0).unwrap();
        assert_eq!(b.entries()[1].0, CVector::basis(3, 2));
        assert_eq!(b.entries()[2].0, CVector::basis(3, 1));
        assert!(m1_basis(1.5).is_err());
        assert!(m1_basis(-0.1).is_err());
        assert!(m1_basis(f64::NAN).is_err());
    }

    #[test]
    fn m1_operator_is_xi_independent() {
        for k in 0..=20 {
            let xi = k as f64 / 20.0;
            let d = m1_basis(xi)
                .unwrap()
                .observable()
                .max_abs_diff(&m1_observable())
                .unwrap();
            assert!(d < 1e-12, "xi = {xi}: {d:e}");
        }
    }

    #[test]
    fn no_evolution_gives_unit_correlators() {
        for rule in [Rule::Luders, Rule::VonNeumann] {
            for state in [InitialState::Ket001, InitialState::Ket100] {
                let p = LgiParams::new(0.0, 0.0, 0.3, state, rule);
                let k = k_values(&p).unwrap();
                for v in [k.k13, k.k23, k.k12] {
                    assert!((v - 1.0).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn invalid_pair_is_an_error() {
        let p = vn(0.1, 0.2, 1.0, InitialState::Ket001);
        assert!(matches!(
            lgi_correlator(&p, 2, 1),
            Err(Error::InvalidPair { r: 2, s: 1 })
        ));
        assert!(lgi_correlator(&p, 1, 1).is_err());
        assert!(lgi_correlator(&p, 3, 4).is_err());
    }

    #[test]
    fn luders_correlator_ignores_xi() {
        let base = LgiParams::new(0.7, -1.9, 1.0, InitialState::Ket001, Rule::Luders);
        let reference = lgi_correlator(&base, 1, 2).unwrap();
        for k in 0..=10 {
            let p = LgiParams {
                xi: k as f64 / 10.0,
                ..base
            };
            assert!((lgi_correlator(&p, 1, 2).unwrap() - reference).abs() < 1e-12);
        }
    }

    #[test]
    fn k13_closed_equal_g_values() {
        assert_eq!(k13_closed_equal_g(0.0), 1.0);
        // (1 + 32 cos 1.31 - 20 cos 2.62 + 3 cos 5.24) / 16, evaluated independently
        let g: f64 = 1.31;
        let direct = (1.0 + 32.0 * g.cos() - 20.0 * (2.0 * g).cos() + 3.0 * (4.0 * g).cos()) / 16.0;
        assert_eq!(k13_closed_equal_g(1.31), direct);
        assert!((k13_closed_equal_g(1.31) - 1.75).abs() < 0.01);
    }

    #[test]
    fn quoted_points() {
        let k = k_values(&vn(0.98, 1.85, 1.0, InitialState::Ket001)).unwrap();
        assert!((k.k13 - 1.91).abs() < 0.005, "{k:?}");
        let k = k_values(&vn(PI, PI, FRAC_1_SQRT_2, InitialState::Ket001)).unwrap();
        assert!((k.k23 - 2.0).abs() < 0.005, "{k:?}");
        let k = k_values(&vn(PI, PI, FRAC_1_SQRT_2, InitialState::Ket100)).unwrap();
        assert!((k.k12 - 2.0).abs() < 0.005, "{k:?}");
    }

    #[test]
    fn rounded_quoted_points() {
        // Printed values are rounded down: 1.7564 and 3/4 + 1/sqrt2 = 1.4571.
        let k = k_values(&vn(1.31, 1.31, 1.0, InitialState::Ket001)).unwrap();
        assert!((k.k13 - k13_closed_equal_g(1.31)).abs() < 1e-12);
        assert!((k.k13 - 1.75).abs() < 0.01);
        let p = LgiParams::new(PI / 2.0, PI / 4.0, 1.0, InitialState::Ket001, Rule::Luders);
        let k = k_values(&p).unwrap();
        assert!(
            (k.k13 - (0.5 + FRAC_1_SQRT_2 + 0.25)).abs() < 1e-12,
            "{k:?}"
        );
        assert!((k.k13 - 1.45).abs() < 0.01);
    }

    #[test]
    fn corrected_k13v_reduces_to_equal_coupling_form() {
        for k in 0..50 {
            let g = -PI + 2.0 * PI * k as f64 / 49.0;
            let want = k13_closed_equal_g(g);
            for form in [Transcription::G2Factor, Transcription::Corrected] {
                let got = k_closed_form_as(KClosedForm::K13, form, g, g, 1.0);
                assert!((got - want).abs() < 1e-9, "{form:?} g={g}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn k23v_at_quoted_point() {
        let v = k_closed_form(KClosedForm::K23, PI, PI, FRAC_1_SQRT_2);
        assert!((v - 2.0).abs() < 0.01);
    }

    #[test]
    fn correction_terms_match_rule_difference() {
        let p = vn(0.4, 2.2, 0.37, InitialState::Ket001);
        let v = correlators(&p).unwrap();
        let l = correlators(&p.with_rule(Rule::Luders)).unwrap();
        let d = correction_terms(&p).unwrap();
        assert!((l.c12 - v.c12 - d.c12).abs() < 1e-12);
        assert!((l.c23 - v.c23 - d.c23).abs() < 1e-12);
        assert!((l.c13 - v.c13 - d.c13).abs() < 1e-12);
    }
}
