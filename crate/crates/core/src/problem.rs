//! Problem instances, feasible-set types, objectives, and certificates.
//!
//! Two formulations are modeled.  The *margin* form minimizes `‖Ax‖²` over
//! the probability simplex (columns of `A` are label-signed datapoints).
//! The *regression* form minimizes `‖Ax − b‖²` over the l1-ball of a given
//! radius.  Feasible points are wrapped in validating types so that every
//! solver output can be checked against the set it claims to live in.

use crate::error::Error;
use crate::linalg;
use crate::matrix::ProblemMatrix;

/// Default absolute tolerance for feasibility checks.  Chosen for
/// double-precision accumulation over dimensions up to about 1e4.
pub const DEFAULT_FEASIBILITY_TOL: f64 = 1e-10;

/// How a margin-form instance came to be; some operations are only valid on
/// instances built a particular way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SvmOrigin {
    /// Columns supplied directly by the caller.
    Raw,
    /// Built by [`crate::reduction::soft_margin_dual`]: the top `data_dim`
    /// rows hold label-signed points, the bottom block is `(1/√c)·I`.
    SoftMarginDual { c: f64, data_dim: usize },
    /// Built by [`crate::reduction::lasso_to_svm`] /
    /// [`crate::reduction::nonneg_lasso_to_svm`].
    ReducedFromLasso,
}

/// Margin-form instance: minimize `‖Ax‖²` for `x` in the simplex.
#[derive(Debug, Clone)]
pub struct SvmInstance {
    matrix: ProblemMatrix,
    origin: SvmOrigin,
}

impl SvmInstance {
    pub fn new(matrix: ProblemMatrix, origin: SvmOrigin) -> Result<Self, Error> {
        if matrix.rows() == 0 || matrix.cols() == 0 {
            return Err(Error::InvalidArgument(
                "instance matrix must have at least one row and one column".into(),
            ));
        }
        check_finite_matrix(&matrix)?;
        Ok(Self { matrix, origin })
    }

    pub fn matrix(&self) -> &ProblemMatrix {
        &self.matrix
    }

    pub fn origin(&self) -> SvmOrigin {
        self.origin
    }

    /// Number of columns (candidate points).
    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// Row dimension.
    pub fn d(&self) -> usize {
        self.matrix.rows()
    }
}

/// Regression-form instance: minimize `‖Ax − b‖²` for `‖x‖₁ ≤ radius`.
#[derive(Debug, Clone)]
pub struct LassoInstance {
    matrix: ProblemMatrix,
    rhs: Vec<f64>,
    radius: f64,
}

impl LassoInstance {
    pub fn new(matrix: ProblemMatrix, rhs: Vec<f64>, radius: f64) -> Result<Self, Error> {
        if matrix.rows() == 0 || matrix.cols() == 0 {
            return Err(Error::InvalidArgument(
                "instance matrix must have at least one row and one column".into(),
            ));
        }
        check_finite_matrix(&matrix)?;
        if rhs.len() != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "rhs has length {}, matrix has {} rows",
                rhs.len(),
                matrix.rows()
            )));
        }
        if !rhs.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument("rhs entries must be finite".into()));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Self {
            matrix,
            rhs,
            radius,
        })
    }

    pub fn matrix(&self) -> &ProblemMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Number of columns.
    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// Row dimension.
    pub fn d(&self) -> usize {
        self.matrix.rows()
    }

    /// Residual `A x − b`.
    pub fn residual(&self, x: &[f64]) -> Vec<f64> {
        let mut r = self.matrix.matvec(x);
        for (ri, bi) in r.iter_mut().zip(&self.rhs) {
            *ri -= bi;
        }
        r
    }
}

fn check_finite_matrix(m: &ProblemMatrix) -> Result<(), Error> {
    for j in 0..m.cols() {
        if !m.col(j).iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "column {j} contains a non-finite entry"
            )));
        }
    }
    Ok(())
}

/// Point of the probability simplex: nonnegative coordinates summing to one
/// (both checked up to an absolute tolerance).
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVector {
    coords: Vec<f64>,
}

impl SimplexVector {
    /// Validate with the default tolerance.
    pub fn new(coords: Vec<f64>) -> Result<Self, Error> {
        Self::with_tol(coords, DEFAULT_FEASIBILITY_TOL)
    }

    /// Validate with a caller-chosen tolerance.
    pub fn with_tol(coords: Vec<f64>, tol: f64) -> Result<Self, Error> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("empty coordinate vector".into()));
        }
        if let Some((i, &v)) = coords
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < -tol)
        {
            return Err(Error::Infeasible(format!(
                "coordinate {i} = {v} is below 0 beyond tolerance {tol}"
            )));
        }
        let sum = linalg::compensated_sum(coords.iter().copied());
        if (sum - 1.0).abs() > tol {
            return Err(Error::Infeasible(format!(
                "coordinates sum to {sum}, not 1 within tolerance {tol}"
            )));
        }
        Ok(Self { coords })
    }

    /// The `j`-th vertex of the simplex in dimension `n`.
    pub fn vertex(n: usize, j: usize) -> Self {
        assert!(j < n, "vertex index out of range");
        let mut coords = vec![0.0; n];
        coords[j] = 1.0;
        Self { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coords
    }

    /// Indices with strictly positive weight.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Point of the unit l1-ball: `‖x‖₁ ≤ 1` up to tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Vector {
    coords: Vec<f64>,
}

impl L1Vector {
    /// Validate with the default tolerance.
    pub fn new(coords: Vec<f64>) -> Result<Self, Error> {
        Self::with_tol(coords, DEFAULT_FEASIBILITY_TOL)
    }

    /// Validate with a caller-chosen tolerance.
    pub fn with_tol(coords: Vec<f64>, tol: f64) -> Result<Self, Error> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("empty coordinate vector".into()));
        }
        if !coords.iter().all(|v| v.is_finite()) {
            return Err(Error::Infeasible("non-finite coordinate".into()));
        }
        let n1 = linalg::norm1(&coords);
        if n1 > 1.0 + tol {
            return Err(Error::Infeasible(format!(
                "l1 norm {n1} exceeds 1 beyond tolerance {tol}"
            )));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coords
    }

    /// Sum of absolute coordinate values.
    pub fn norm1(&self) -> f64 {
        linalg::norm1(&self.coords)
    }

    /// True when every coordinate is `≥ −tol` (membership in the filled
    /// simplex: nonnegative with total mass at most one).
    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.coords.iter().all(|&v| v >= -tol)
    }

    /// Indices with nonzero weight.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0.0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// A direction together with the normalized margin it attains: the minimum
/// over columns of `A_jᵀ w / ‖w‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorReport {
    pub direction: Vec<f64>,
    pub margin: f64,
}

/// Solution vector of either formulation.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Simplex(SimplexVector),
    L1(L1Vector),
}

impl Solution {
    /// Coordinates regardless of which feasible set the solution lives in.
    pub fn coords(&self) -> &[f64] {
        match self {
            Solution::Simplex(x) => x.coords(),
            Solution::L1(x) => x.coords(),
        }
    }

    pub fn as_simplex(&self) -> Option<&SimplexVector> {
        match self {
            Solution::Simplex(x) => Some(x),
            Solution::L1(_) => None,
        }
    }

    pub fn as_l1(&self) -> Option<&L1Vector> {
        match self {
            Solution::L1(x) => Some(x),
            Solution::Simplex(_) => None,
        }
    }
}

/// Outcome of a solver run: solution, objective, optimality certificate,
/// iteration count, and the seed that determinized the run.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: Solution,
    pub objective: f64,
    /// Duality-gap certificate for simplex solves, projected-gradient-step
    /// norm (scaled into a gap bound) for l1-ball solves.  Nonnegative.
    pub gap: f64,
    pub iterations: usize,
    pub seed: u64,
    /// True when the requested tolerance was reached before the iteration
    /// cap.
    pub converged: bool,
}

/// Squared norm of `A x` for a simplex point `x`.
pub fn svm_objective(inst: &SvmInstance, x: &SimplexVector) -> Result<f64, Error> {
    if x.dim() != inst.n() {
        return Err(Error::DimensionMismatch(format!(
            "point has dimension {}, instance has {} columns",
            x.dim(),
            inst.n()
        )));
    }
    Ok(linalg::sumsq(&inst.matrix.matvec(x.coords())))
}

/// Squared residual norm `‖A x − b‖²` for an l1-ball point `x`.
pub fn lasso_objective(inst: &LassoInstance, x: &L1Vector) -> Result<f64, Error> {
    if x.dim() != inst.n() {
        return Err(Error::DimensionMismatch(format!(
            "point has dimension {}, instance has {} columns",
            x.dim(),
            inst.n()
        )));
    }
    Ok(linalg::sumsq(&inst.residual(x.coords())))
}

/// Normalized margin of direction `w`: the minimum over columns of
/// `A_jᵀ w / ‖w‖`.  Negative when `w` fails to separate the columns from the
/// origin.
pub fn margin(inst: &SvmInstance, w: &[f64]) -> Result<SeparatorReport, Error> {
    if w.len() != inst.d() {
        return Err(Error::DimensionMismatch(format!(
            "direction has dimension {}, instance rows {}",
            w.len(),
            inst.d()
        )));
    }
    let norm = linalg::norm2(w);
    if norm <= 0.0 {
        return Err(Error::InvalidArgument(
            "direction vector must be nonzero".into(),
        ));
    }
    let m = (0..inst.n())
        .map(|j| inst.matrix.col_dot(j, w) / norm)
        .fold(f64::INFINITY, f64::min);
    Ok(SeparatorReport {
        direction: w.to_vec(),
        margin: m,
    })
}

/// Suboptimality certificate for a simplex point: the hull norm `‖Ax‖`
/// minus the best certified lower bound on the optimal hull norm.  Two
/// lower bounds are always valid — the margin of `Ax` as a direction, and
/// zero (a norm is never negative) — so the gap is
/// `‖Ax‖ − max(margin(Ax), 0)`.  The zero bound matters on instances whose
/// columns surround the origin: there the margin bound stays negative
/// forever, while this gap still certifies convergence to the optimum 0.
/// Defined as zero when `Ax = 0` (the global minimum is attained), and
/// clamped at zero so rounding cannot produce a negative certificate.
pub fn duality_gap(inst: &SvmInstance, x: &SimplexVector) -> Result<f64, Error> {
    if x.dim() != inst.n() {
        return Err(Error::DimensionMismatch(format!(
            "point has dimension {}, instance has {} columns",
            x.dim(),
            inst.n()
        )));
    }
    let z = inst.matrix.matvec(x.coords());
    let norm = linalg::norm2(&z);
    if norm == 0.0 {
        return Ok(0.0);
    }
    let m = (0..inst.n())
        .map(|j| inst.matrix.col_dot(j, &z) / norm)
        .fold(f64::INFINITY, f64::min);
    Ok((norm - m.max(0.0)).max(0.0))
}

/// Rewrite an instance of arbitrary radius as an equivalent radius-1
/// instance via the substitution `x = radius · u`: the matrix is scaled by
/// the radius, so the new objective at `u` equals the old objective at `x`.
pub fn normalize_radius(inst: &LassoInstance) -> LassoInstance {
    if inst.radius == 1.0 {
        return inst.clone();
    }
    let mut m = inst.matrix.clone();
    m.scale(inst.radius);
    LassoInstance {
        matrix: m,
        rhs: inst.rhs.clone(),
        radius: 1.0,
    }
}
