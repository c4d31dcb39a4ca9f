//! Deterministic derivative-free maximization over a box.
//!
//! [`maximize`] evaluates the objective on a full lattice, then runs a
//! Nelder-Mead simplex from the best few lattice points. There is no
//! randomness anywhere, and lattice evaluation order never affects results:
//! values are ranked after the fact with row-major index as tie-break.

use crate::error::{Error, Result};

/// Upper bound on lattice size accepted by [`grid_scan`].
pub const MAX_GRID_EVALUATIONS: u128 = 100_000_000;
/// Seeds refined by [`maximize`].
pub const REFINE_SEEDS: usize = 5;
/// Initial simplex edge as a fraction of each dimension's span.
pub const SIMPLEX_EDGE: f64 = 0.02;
/// Stop when the simplex values spread less than this...
pub const VALUE_SPREAD_TOL: f64 = 1e-10;
/// ...and its vertices lie within this fraction of each span.
pub const POINT_SPREAD_TOL: f64 = 1e-10;
pub const MAX_REFINE_EVALUATIONS: usize = 10_000;

/// One named coordinate of a [`ParamBox`].
#[derive(Clone, Debug, PartialEq)]
pub struct Dim {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub periodic: bool,
}

impl Dim {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64, periodic: bool) -> Self {
        Self {
            name: name.into(),
            lo,
            hi,
            periodic,
        }
    }

    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }

    /// Wrap into `[lo, hi)` when periodic, clamp otherwise.
    pub fn project(&self, x: f64) -> f64 {
        if self.periodic {
            let mut y = self.lo + (x - self.lo).rem_euclid(self.span());
            // rem_euclid can round up to exactly span
            if y >= self.hi {
                y = self.lo;
            }
            y
        } else {
            x.clamp(self.lo, self.hi)
        }
    }

    /// `n` lattice coordinates. Periodic dimensions omit `hi`, which is the
    /// same point as `lo`.
    fn lattice(&self, n: usize) -> Vec<f64> {
        let steps = if self.periodic { n } else { n - 1 };
        (0..n)
            .map(|k| self.lo + self.span() * k as f64 / steps as f64)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamBox {
    dims: Vec<Dim>,
}

impl ParamBox {
    pub fn new(dims: Vec<Dim>) -> Result<Self> {
        if dims.is_empty() || dims.len() > 6 {
            return Err(Error::InvalidBox(format!(
                "{} dimensions, expected 1..=6",
                dims.len()
            )));
        }
        for d in &dims {
            if !(d.lo.is_finite() && d.hi.is_finite() && d.lo < d.hi) {
                return Err(Error::InvalidBox(format!(
                    "{}: [{}, {}]",
                    d.name, d.lo, d.hi
                )));
            }
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[Dim] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.dims.iter().map(|d| d.name.clone()).collect()
    }

    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        self.dims
            .iter()
            .zip(x)
            .map(|(d, &v)| d.project(v))
            .collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dims.len()
            && self
                .dims
                .iter()
                .zip(x)
                .all(|(d, &v)| v.is_finite() && (d.periodic || (d.lo..=d.hi).contains(&v)))
    }
}

/// Default lattice density for a box with `ndims` dimensions.
pub fn default_points_per_dim(ndims: usize) -> usize {
    match ndims {
        0..=2 => 121,
        3 | 4 => 41,
        _ => 11,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise falls
    /// back to sequential evaluation.
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArgMaxResult {
    pub names: Vec<String>,
    pub point: Vec<f64>,
    pub value: f64,
    /// Best lattice value, before refinement.
    pub grid_best: f64,
    pub grid_point: Vec<f64>,
    pub evaluations: usize,
}

impl ArgMaxResult {
    pub fn coordinate(&self, name: &str) -> Option<f64> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|k| self.point[k])
    }
}

struct Lattice {
    axes: Vec<Vec<f64>>,
    total: usize,
}

impl Lattice {
    fn new(bx: &ParamBox, points_per_dim: usize) -> Result<Self> {
        if points_per_dim < 2 {
            return Err(Error::InvalidBox(format!(
                "points_per_dim = {points_per_dim}, need at least 2"
            )));
        }
        let requested = (points_per_dim as u128).pow(bx.len() as u32);
        if requested > MAX_GRID_EVALUATIONS {
            return Err(Error::BudgetExceeded {
                requested,
                budget: MAX_GRID_EVALUATIONS,
            });
        }
        Ok(Self {
            axes: bx.dims.iter().map(|d| d.lattice(points_per_dim)).collect(),
            total: requested as usize,
        })
    }

    /// Row-major: the last dimension varies fastest.
    fn point(&self, mut index: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            *slot = axis[index % axis.len()];
            index /= axis.len();
        }
        out
    }

    fn evaluate<F>(&self, objective: &F, exec: Execution) -> Vec<f64>
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let eval = |i: usize| objective(&self.point(i));
        match exec {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..self.total).into_par_iter().map(eval).collect()
            }
            _ => (0..self.total).map(eval).collect(),
        }
    }
}

fn check_finite(values: &[f64], lattice: &Lattice) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFiniteObjective {
            point: lattice.point(i),
            value: values[i],
        }),
        None => Ok(()),
    }
}

/// Lattice indices ordered by value descending, then by index.
fn ranked(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    order
}

/// Exhaustive lattice evaluation, sorted by value (descending).
pub fn grid_scan<F>(
    objective: F,
    bx: &ParamBox,
    points_per_dim: usize,
) -> Result<Vec<(Vec<f64>, f64)>>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    grid_scan_with(objective, bx, points_per_dim, Execution::default())
}

pub fn grid_scan_with<F>(
    objective: F,
    bx: &ParamBox,
    points_per_dim: usize,
    exec: Execution,
) -> Result<Vec<(Vec<f64>, f64)>>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let lattice = Lattice::new(bx, points_per_dim)?;
    let values = lattice.evaluate(&objective, exec);
    check_finite(&values, &lattice)?;
    Ok(ranked(&values)
        .into_iter()
        .map(|i| (lattice.point(i), values[i]))
        .collect())
}

/// Nelder-Mead ascent from `start`. Returns the best point (projected into
/// the box) and its value.
pub fn refine<F>(objective: F, start: &[f64], bx: &ParamBox) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&[f64]) -> f64,
{
    let (point, value, _) = nelder_mead(&objective, start, bx)?;
    Ok((point, value))
}

fn nelder_mead<F>(objective: &F, start: &[f64], bx: &ParamBox) -> Result<(Vec<f64>, f64, usize)>
where
    F: Fn(&[f64]) -> f64,
{
    if !bx.contains(start) {
        return Err(Error::InvalidBox(format!(
            "start {start:?} outside the box"
        )));
    }
    let n = bx.len();
    let evaluations = std::cell::Cell::new(0usize);
    // Non-periodic coordinates are clamped into the box; periodic ones are
    // left unwrapped so the simplex keeps its shape across the seam.
    let admit = |x: Vec<f64>| -> Vec<f64> {
        bx.dims
            .iter()
            .zip(x)
            .map(|(d, v)| if d.periodic { v } else { d.project(v) })
            .collect()
    };
    let eval = |x: &[f64]| -> Result<f64> {
        evaluations.set(evaluations.get() + 1);
        let v = objective(&bx.project(x));
        if v.is_finite() {
            Ok(-v)
        } else {
            Err(Error::NonFiniteObjective {
                point: bx.project(x),
                value: v,
            })
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let x0 = start.to_vec();
    let f0 = eval(&x0)?;
    simplex.push((x0, f0));
    for (i, d) in bx.dims.iter().enumerate() {
        let mut x = start.to_vec();
        let step = SIMPLEX_EDGE * d.span();
        x[i] = if d.periodic || x[i] + step <= d.hi {
            x[i] + step
        } else {
            x[i] - step
        };
        let f = eval(&x)?;
        simplex.push((x, f));
    }

    loop {
        // stable sort keeps earlier vertices first among ties
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        let point_spread = bx.dims.iter().enumerate().all(|(k, d)| {
            simplex
                .iter()
                .all(|(x, _)| (x[k] - simplex[0].0[k]).abs() <= POINT_SPREAD_TOL * d.span())
        });
        if (worst - best <= VALUE_SPREAD_TOL && point_spread)
            || evaluations.get() >= MAX_REFINE_EVALUATIONS
        {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            admit(
                centroid
                    .iter()
                    .zip(&simplex[n].0)
                    .map(|(c, w)| c + t * (c - w))
                    .collect(),
            )
        };

        let xr = along(1.0);
        let fr = eval(&xr)?;
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let fe = eval(&xe)?;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            let xc = along(0.5);
            let fc = eval(&xc)?;
            (xc, fc)
        } else {
            let xc = along(-0.5);
            let fc = eval(&xc)?;
            (xc, fc)
        };
        if fc < worst.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = admit(
                anchor
                    .iter()
                    .zip(&vertex.0)
                    .map(|(a, v)| a + 0.5 * (v - a))
                    .collect(),
            );
            let f = eval(&x)?;
            *vertex = (x, f);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, f) = &simplex[0];
    Ok((bx.project(x), -f, evaluations.get()))
}

/// Grid scan followed by refinement from the top [`REFINE_SEEDS`] lattice
/// points.
pub fn maximize<F>(objective: F, bx: &ParamBox, points_per_dim: usize) -> Result<ArgMaxResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    maximize_with(objective, bx, points_per_dim, Execution::default())
}

pub fn maximize_with<F>(
    objective: F,
    bx: &ParamBox,
    points_per_dim: usize,
    exec: Execution,
) -> Result<ArgMaxResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let lattice = Lattice::new(bx, points_per_dim)?;
    let values = lattice.evaluate(&objective, exec);
    check_finite(&values, &lattice)?;
    let order = ranked(&values);
    let grid_best = values[order[0]];
    let grid_point = lattice.point(order[0]);
    let mut evaluations = lattice.total;

    let mut best: Option<(Vec<f64>, f64)> = None;
    for &idx in order.iter().take(REFINE_SEEDS) {
        let (x, f, used) = nelder_mead(&objective, &lattice.point(idx), bx)?;
        evaluations += used;
        if best.as_ref().is_none_or(|(_, b)| f > *b) {
            best = Some((x, f));
        }
    }
    let (point, value) = best.expect("at least one seed");
    Ok(ArgMaxResult {
        names: bx.names(),
        point,
        value,
        grid_best,
        grid_point: bx.project(&grid_point),
        evaluations,
    })
}
