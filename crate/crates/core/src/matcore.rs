//! Dense complex linear algebra for small d-level systems.
//!
//! Everything here is a value type: operations take `&self` and return new
//! values. Dimension mismatches are reported as [`Error::DimensionMismatch`].

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Hermiticity and trace tolerance for [`DensityMatrix`].
pub const STATE_TOL: f64 = 1e-12;
/// Smallest admissible eigenvalue of a density matrix.
pub const PSD_TOL: f64 = -1e-10;
/// Entrywise tolerance of `U U^dagger = I`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Normalization tolerance for kets fed to [`pure_state`].
pub const NORM_TOL: f64 = 1e-12;

/// Complex column vector.
#[derive(Clone, PartialEq)]
pub struct CVector {
    entries: Vec<C64>,
}

impl CVector {
    pub fn new(entries: Vec<C64>) -> Self {
        assert!(!entries.is_empty(), "vector dimension must be positive");
        Self { entries }
    }

    pub fn from_real(entries: &[f64]) -> Self {
        Self::new(entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Computational basis ket `|index>` (zero based).
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            index < dim,
            "basis index {index} out of range for dim {dim}"
        );
        let mut entries = vec![ZERO; dim];
        entries[index] = ONE;
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn inner(&self, other: &CVector) -> Result<C64> {
        check_dims("inner", self.dim(), other.dim())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scale(&self, factor: C64) -> CVector {
        Self::new(self.entries.iter().map(|z| z * factor).collect())
    }

    pub fn add(&self, other: &CVector) -> Result<CVector> {
        check_dims("add", self.dim(), other.dim())?;
        Ok(Self::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// Linear combination `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &CVector, b: f64) -> Result<CVector> {
        check_dims("combine", self.dim(), other.dim())?;
        Ok(Self::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x * a + y * b)
                .collect(),
        ))
    }
}

impl fmt::Debug for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn from_vec(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::BadShape {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    /// Real matrix from row slices. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        assert!(
            dim > 0 && rows.iter().all(|r| r.len() == dim),
            "rows must form a square matrix"
        );
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| C64::new(x, 0.0)))
            .collect();
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0);
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = C64::new(v, 0.0);
        }
        m
    }

    /// `|a><b|`
    pub fn outer(a: &CVector, b: &CVector) -> Result<Self> {
        check_dims("outer", a.dim(), b.dim())?;
        let dim = a.dim();
        let mut data = Vec::with_capacity(dim * dim);
        for x in a.entries() {
            for y in b.entries() {
                data.push(x * y.conj());
            }
        }
        Ok(Self { dim, data })
    }

    /// Rank-1 projector `|v><v|`.
    pub fn projector(v: &CVector) -> Self {
        Self::outer(v, v).expect("same vector")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        check_dims("add", self.dim, other.dim)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        check_dims("sub", self.dim, other.dim)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, factor: C64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> CMatrix {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        check_dims("mul", self.dim, other.dim)?;
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(CMatrix { dim: n, data })
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        check_dims("apply", self.dim, v.dim())?;
        let n = self.dim;
        Ok(CVector::new(
            (0..n)
                .map(|i| (0..n).map(|k| self.data[i * n + k] * v.entries()[k]).sum())
                .collect(),
        ))
    }

    pub fn adjoint(&self) -> CMatrix {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i].conj());
            }
        }
        CMatrix { dim: n, data }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &CMatrix) -> Result<C64> {
        check_dims("trace_product", self.dim, other.dim)?;
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        Ok(acc)
    }

    /// `U self U^dagger`
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<CMatrix> {
        u.mul(self)?.mul(&u.adjoint())
    }

    /// `[self, other]`
    pub fn commutator(&self, other: &CMatrix) -> Result<CMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> Result<f64> {
        check_dims("max_abs_diff", self.dim, other.dim)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint()).expect("same dimension")
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// `(M + M^dagger) / 2`
    pub fn hermitian_part(&self) -> CMatrix {
        let adj = self.adjoint();
        self.zip_with(&adj, |a, b| (a + b) * 0.5)
    }

    /// Eigendecomposition of a Hermitian matrix: eigenvalues ascending,
    /// with matching orthonormal eigenvectors. Only the Hermitian part of
    /// `self` is used.
    pub fn eigh(&self) -> (Vec<f64>, Vec<CVector>) {
        let n = self.dim;
        let h = self.hermitian_part();
        let m = DMatrix::from_fn(n, n, |i, j| h.data[i * n + j]);
        let eig = m.symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = order
            .iter()
            .map(|&k| CVector::new(eig.eigenvectors.column(k).iter().copied().collect()))
            .collect();
        (values, vectors)
    }

    pub fn eigenvalues_hermitian(&self) -> Vec<f64> {
        self.eigh().0
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(C64, C64) -> C64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[C64]> = self.data.chunks(self.dim).collect();
        f.debug_struct("CMatrix")
            .field("dim", &self.dim)
            .field("rows", &rows)
            .finish()
    }
}

fn check_dims(op: &'static str, left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { op, left, right })
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    pub fn new(mat: CMatrix) -> Result<Self> {
        validate_density(&mat)?;
        Ok(Self { mat })
    }

    /// Maximally mixed state `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// Used where validity follows from construction (unitary conjugation of
    /// a valid state, normalized rank-1 projectors).
    pub(crate) fn from_trusted(mat: CMatrix) -> Self {
        debug_assert!(validate_density(&mat).is_ok(), "{mat:?}");
        Self { mat }
    }

    pub fn mat(&self) -> &CMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn evolve(&self, u: &Unitary) -> Result<DensityMatrix> {
        Ok(Self::from_trusted(
            self.mat.conjugate_by(u.mat())?.hermitian_part(),
        ))
    }

    /// Re-run the full invariant check (Hermitian, trace one, PSD).
    pub fn validate(&self) -> Result<()> {
        validate_density(&self.mat)
    }
}

fn validate_density(mat: &CMatrix) -> Result<()> {
    let herm = mat.hermiticity_defect();
    if herm > STATE_TOL {
        return Err(Error::InvalidDensityMatrix(format!(
            "hermiticity defect {herm:e}"
        )));
    }
    let tr = mat.trace();
    if (tr - ONE).norm() > STATE_TOL {
        return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
    }
    let min = mat
        .eigenvalues_hermitian()
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    if min < PSD_TOL {
        return Err(Error::InvalidDensityMatrix(format!(
            "negative eigenvalue {min:e}"
        )));
    }
    Ok(())
}

/// Matrix with `U U^dagger = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary {
    mat: CMatrix,
}

impl Unitary {
    pub fn new(mat: CMatrix) -> Result<Self> {
        let defect = mat
            .mul(&mat.adjoint())?
            .max_abs_diff(&CMatrix::identity(mat.dim()))?;
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self { mat })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim),
        }
    }

    pub fn mat(&self) -> &CMatrix {
        &self.mat
    }

    pub fn then(&self, later: &Unitary) -> Result<Unitary> {
        Ok(Self {
            mat: later.mat.mul(&self.mat)?,
        })
    }
}

/// Spin-1 `J_x` in the basis `|1>, |2>, |3>` (hbar = 1).
pub fn jx_spin1() -> CMatrix {
    let s = FRAC_1_SQRT_2;
    CMatrix::from_real_rows(&[&[0.0, s, 0.0], &[s, 0.0, s], &[0.0, s, 0.0]])
}

/// `exp(i g J_x)` for spin 1, using `J_x^3 = J_x`:
/// `I + i sin(g) J_x + (cos(g) - 1) J_x^2`.
///
/// The exponent carries a plus sign. For the real initial states and the
/// real measurement bases used by the Leggett-Garg scenario the correlators
/// are invariant under `g -> -g` applied to all couplings, so either sign
/// reproduces the same K values.
pub fn propagator(g: f64) -> Result<Unitary> {
    if !g.is_finite() {
        return Err(Error::NonFinite {
            name: "g",
            value: g,
        });
    }
    let jx = jx_spin1();
    let jx2 = jx.mul(&jx)?;
    let mat = CMatrix::identity(3)
        .add(&jx.scale(C64::new(0.0, g.sin())))?
        .add(&jx2.scale_real(g.cos() - 1.0))?;
    Ok(Unitary { mat })
}

/// `|v><v|` for a unit vector `v`.
pub fn pure_state(v: &CVector) -> Result<DensityMatrix> {
    let norm = v.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(DensityMatrix::from_trusted(CMatrix::projector(v)))
}
