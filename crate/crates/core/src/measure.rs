//! Projective measurements and the two state-update rules.
//!
//! An [`EigenBasis`] is an ordered list of rank-1 eigenvectors with eigenvalue
//! labels. Its coarse-grained view, one projector per distinct eigenvalue, is
//! a [`ProjectorSet`]. The Lüders rule updates with the coarse projectors; the
//! von Neumann rule dephases in a chosen rank-1 eigenbasis, which is not
//! unique when the observable is degenerate.

use crate::error::{Error, Result};
use crate::matcore::{CMatrix, CVector, DensityMatrix, Unitary, C64};

/// Pairwise orthonormality tolerance for basis vectors.
pub const ORTHO_TOL: f64 = 1e-10;
/// Eigenvalues closer than this belong to the same block.
pub const DEGENERACY_TOL: f64 = 1e-9;
/// Outcomes at or below this probability have no conditional state.
pub const MIN_PROBABILITY: f64 = 1e-14;

/// Complete orthonormal basis of labelled eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenBasis {
    entries: Vec<(CVector, f64)>,
}

impl EigenBasis {
    pub fn new(entries: Vec<(CVector, f64)>) -> Result<Self> {
        let dim = match entries.first() {
            Some((v, _)) => v.dim(),
            None => return Err(Error::InvalidBasis("empty basis".into())),
        };
        if entries.len() != dim {
            return Err(Error::InvalidBasis(format!(
                "{} vectors for dimension {dim}",
                entries.len()
            )));
        }
        for (i, (vi, li)) in entries.iter().enumerate() {
            if !li.is_finite() {
                return Err(Error::InvalidBasis(format!(
                    "eigenvalue {li} of vector {i}"
                )));
            }
            for (j, (vj, _)) in entries.iter().enumerate().skip(i) {
                let overlap = vi.inner(vj)?;
                let want = if i == j { 1.0 } else { 0.0 };
                if (overlap - C64::new(want, 0.0)).norm() > ORTHO_TOL {
                    return Err(Error::InvalidBasis(format!(
                        "<v{i}|v{j}> = {overlap}, expected {want}"
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(CVector, f64)] {
        &self.entries
    }

    /// The observable `sum_k lambda_k |v_k><v_k|`.
    pub fn observable(&self) -> CMatrix {
        self.entries
            .iter()
            .fold(CMatrix::zeros(self.dim()), |acc, (v, l)| {
                acc.add(&CMatrix::projector(v).scale_real(*l))
                    .expect("basis vectors share a dimension")
            })
    }

    /// Rank-1 projectors whose label equals `eigenvalue`.
    pub fn rank_one_projectors(&self, eigenvalue: f64) -> Vec<CMatrix> {
        self.entries
            .iter()
            .filter(|(_, l)| (l - eigenvalue).abs() <= DEGENERACY_TOL)
            .map(|(v, _)| CMatrix::projector(v))
            .collect()
    }

    /// Distinct eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut labels: Vec<f64> = self.entries.iter().map(|(_, l)| *l).collect();
        labels.sort_by(f64::total_cmp);
        labels.dedup_by(|a, b| (*a - *b).abs() <= DEGENERACY_TOL);
        labels
    }

    /// Whether each vector of `self` is an eigenvector of `observable` with
    /// its label as eigenvalue.
    pub fn diagonalizes(&self, observable: &CMatrix) -> Result<bool> {
        for (v, l) in &self.entries {
            let image = observable.apply(v)?;
            let residual = image.combine(1.0, v, -l)?.norm();
            if residual > ORTHO_TOL {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Coarse projectors keyed by eigenvalue, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorSet {
    blocks: Vec<(f64, CMatrix)>,
}

impl ProjectorSet {
    pub fn blocks(&self) -> &[(f64, CMatrix)] {
        &self.blocks
    }

    pub fn block(&self, eigenvalue: f64) -> Option<&CMatrix> {
        self.blocks
            .iter()
            .find(|(l, _)| (l - eigenvalue).abs() <= DEGENERACY_TOL)
            .map(|(_, p)| p)
    }

    pub fn dim(&self) -> usize {
        self.blocks[0].1.dim()
    }

    pub fn observable(&self) -> CMatrix {
        self.blocks
            .iter()
            .fold(CMatrix::zeros(self.dim()), |acc, (l, p)| {
                acc.add(&p.scale_real(*l))
                    .expect("blocks share a dimension")
            })
    }

    /// Heisenberg picture `U^dagger P U` of every block.
    pub fn evolved(&self, u: &Unitary) -> Result<ProjectorSet> {
        let udag = u.mat().adjoint();
        let blocks = self
            .blocks
            .iter()
            .map(|(l, p)| Ok((*l, udag.mul(p)?.mul(u.mat())?)))
            .collect::<Result<_>>()?;
        Ok(ProjectorSet { blocks })
    }
}

/// Sum the rank-1 projectors of `b` within each eigenvalue group.
pub fn projectors_from_basis(b: &EigenBasis) -> ProjectorSet {
    let blocks = b
        .eigenvalues()
        .into_iter()
        .map(|l| {
            let p = b
                .rank_one_projectors(l)
                .iter()
                .fold(CMatrix::zeros(b.dim()), |acc, p| {
                    acc.add(p).expect("same dim")
                });
            (l, p)
        })
        .collect();
    ProjectorSet { blocks }
}

#[derive(Clone, Debug, PartialEq)]
pub enum UpdateRule {
    Luders,
    /// Dephasing in the given rank-1 eigenbasis of the measured observable.
    VonNeumann(EigenBasis),
}

/// A measured observable together with its update rule, validated once and
/// reusable across many states.
#[derive(Clone, Debug)]
pub struct Measurement {
    projectors: ProjectorSet,
    /// Kraus-like operators per outcome: the coarse block (Lüders) or the
    /// rank-1 projectors of that block (von Neumann).
    branches: Vec<(f64, Vec<CMatrix>)>,
}

impl Measurement {
    pub fn new(observable: &EigenBasis, rule: &UpdateRule) -> Result<Self> {
        let projectors = projectors_from_basis(observable);
        let branches = match rule {
            UpdateRule::Luders => projectors
                .blocks()
                .iter()
                .map(|(l, p)| (*l, vec![p.clone()]))
                .collect(),
            UpdateRule::VonNeumann(fine) => {
                if fine.dim() != observable.dim() {
                    return Err(Error::DimensionMismatch {
                        op: "von Neumann basis",
                        left: observable.dim(),
                        right: fine.dim(),
                    });
                }
                if !fine.diagonalizes(&observable.observable())? {
                    return Err(Error::InvalidBasis(
                        "von Neumann basis does not diagonalize the measured observable".into(),
                    ));
                }
                projectors
                    .blocks()
                    .iter()
                    .map(|(l, _)| (*l, fine.rank_one_projectors(*l)))
                    .collect()
            }
        };
        Ok(Self {
            projectors,
            branches,
        })
    }

    pub fn projectors(&self) -> &ProjectorSet {
        &self.projectors
    }

    pub fn outcomes(&self) -> impl Iterator<Item = f64> + '_ {
        self.branches.iter().map(|(l, _)| *l)
    }

    /// Unnormalized post-measurement state for `outcome`; its trace is the
    /// outcome probability.
    pub fn branch(&self, rho: &DensityMatrix, outcome: f64) -> Result<CMatrix> {
        let (_, ops) = self
            .branches
            .iter()
            .find(|(l, _)| (l - outcome).abs() <= DEGENERACY_TOL)
            .ok_or(Error::UnknownOutcome { outcome })?;
        self.apply_ops(rho.mat(), ops)
    }

    fn apply_ops(&self, rho: &CMatrix, ops: &[CMatrix]) -> Result<CMatrix> {
        let mut acc = CMatrix::zeros(rho.dim());
        for p in ops {
            acc = acc.add(&p.mul(rho)?.mul(p)?)?;
        }
        Ok(acc)
    }

    /// `Tr(P_m rho)` for the coarse block of `outcome`.
    pub fn probability(&self, rho: &DensityMatrix, outcome: f64) -> Result<f64> {
        let p = self
            .projectors
            .block(outcome)
            .ok_or(Error::UnknownOutcome { outcome })?;
        Ok(p.trace_product(rho.mat())?.re)
    }

    /// Outcome probability and normalized conditional state.
    pub fn update(&self, rho: &DensityMatrix, outcome: f64) -> Result<(f64, DensityMatrix)> {
        let probability = self.probability(rho, outcome)?;
        if probability <= MIN_PROBABILITY {
            return Err(Error::ZeroProbability {
                outcome,
                probability,
            });
        }
        let branch = self.branch(rho, outcome)?;
        let norm = branch.trace().re;
        let post = branch.hermitian_part().scale_real(1.0 / norm);
        Ok((probability, DensityMatrix::new(post)?))
    }

    /// Non-selective update: the sum of all branches.
    pub fn dephase(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let mut acc = CMatrix::zeros(rho.dim());
        for (_, ops) in &self.branches {
            acc = acc.add(&self.apply_ops(rho.mat(), ops)?)?;
        }
        Ok(DensityMatrix::from_trusted(acc.hermitian_part()))
    }
}

/// Probability of `outcome` and the conditional state after measuring the
/// observable defined by `b` under `rule`.
pub fn measure_update(
    rho: &DensityMatrix,
    b: &EigenBasis,
    rule: &UpdateRule,
    outcome: f64,
) -> Result<(f64, DensityMatrix)> {
    Measurement::new(b, rule)?.update(rho, outcome)
}

/// `sum_{m,n} m n p(m, n)` with
/// `p(m, n) = Tr[U rho_m U^dagger P_n]` and `rho_m` the unnormalized branch
/// of the first measurement. Zero-probability branches contribute zero.
pub fn sequential_correlation(
    rho: &DensityMatrix,
    first: &Measurement,
    u_mid: &Unitary,
    second: &ProjectorSet,
) -> Result<f64> {
    if rho.dim() != second.dim() || rho.dim() != u_mid.mat().dim() {
        return Err(Error::DimensionMismatch {
            op: "sequential_correlation",
            left: rho.dim(),
            right: second.dim(),
        });
    }
    // Second observable in the Heisenberg picture: B = U^dagger (sum n P_n) U.
    let b = second.evolved(u_mid)?.observable();
    let mut total = 0.0;
    for (m, ops) in &first.branches {
        let branch = first.apply_ops(rho.mat(), ops)?;
        total += m * branch.trace_product(&b)?.re;
    }
    Ok(total)
}

/// `1/2 Re Tr[rho (AB + BA)]`, the Lüders two-point correlator.
pub fn luders_closed_form(rho: &DensityMatrix, a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let anti = a.mul(b)?.add(&b.mul(a)?)?;
    Ok(0.5 * rho.mat().trace_product(&anti)?.re)
}

/// `Tr[(P1 rho P2 + P2 rho P1) B]` where `P1`, `P2` are the two rank-1
/// projectors spanning the +1 eigenspace of `b`. This is the amount by which
/// the von Neumann correlator falls below the Lüders one.
pub fn vn_correction_term(
    rho: &DensityMatrix,
    b: &EigenBasis,
    observable: &CMatrix,
) -> Result<f64> {
    let plus = b.rank_one_projectors(1.0);
    if plus.len() != 2 {
        return Err(Error::InvalidBasis(format!(
            "expected a two-fold degenerate +1 eigenspace, found {} vector(s)",
            plus.len()
        )));
    }
    let (p1, p2) = (&plus[0], &plus[1]);
    let cross = p1
        .mul(rho.mat())?
        .mul(p2)?
        .add(&p2.mul(rho.mat())?.mul(p1)?)?;
    Ok(cross.trace_product(observable)?.re)
}
