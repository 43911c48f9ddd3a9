//! Rewrites between the two problem forms and transport of solutions.
//!
//! Direction one (regression → margin): translate every column by `−b`; for
//! a signed problem first mirror the columns as `(A | −A)` so the l1-ball
//! becomes the simplex over `2n` cross-polytope vertices.  Objectives are
//! preserved point for point.
//!
//! Direction two (margin → regression): given a direction `w` that weakly
//! separates the columns from the origin with margin `σ > 0` and a strict
//! upper bound `D` on the column norms, translate all columns by
//! `b̃ = −(w/‖w‖)·D²/σ` and use `b̃` as the right-hand side.  On the simplex
//! the two objectives agree exactly, and the translation is chosen so far
//! out that any optimal l1-ball point can be pushed into the simplex without
//! increasing the objective (flip negative coordinates, then scale up).
//!
//! Also here: the dual of the squared-loss soft-margin classifier as a
//! margin-form instance, the always-available separator for it, and offset
//! handling via an appended constant feature.

use crate::error::Error;
use crate::linalg;
use crate::matrix::ProblemMatrix;
use crate::problem::{
    L1Vector, LassoInstance, SeparatorReport, SimplexVector, SvmInstance, SvmOrigin,
    DEFAULT_FEASIBILITY_TOL,
};

/// Which rewrite produced an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    LassoToSvm,
    NonnegToSvm,
    SvmToLasso,
}

/// Record of the translation data needed to transport solutions back.
#[derive(Debug, Clone)]
pub struct ReductionMeta {
    pub kind: ReductionKind,
    /// Separating direction used (margin → regression only).
    pub w: Option<Vec<f64>>,
    /// Its margin.
    pub sigma: Option<f64>,
    /// Strict upper bound on column norms.
    pub big_d: Option<f64>,
    /// Translation vector / right-hand side of the constructed instance.
    pub btilde: Option<Vec<f64>>,
    /// Column count of the source instance.
    pub source_n: usize,
}

/// Labeled classification data: points `X_i` (columns), labels `y_i ∈ {±1}`,
/// and the regularization constant `C` of the squared-loss soft-margin
/// objective.
#[derive(Debug, Clone)]
pub struct LabeledData {
    points: ProblemMatrix,
    labels: Vec<f64>,
    c: f64,
}

impl LabeledData {
    pub fn new(points: ProblemMatrix, labels: Vec<f64>, c: f64) -> Result<Self, Error> {
        if points.cols() == 0 || points.rows() == 0 {
            return Err(Error::InvalidArgument(
                "labeled data needs at least one point with at least one feature".into(),
            ));
        }
        if labels.len() != points.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} points",
                labels.len(),
                points.cols()
            )));
        }
        if let Some(bad) = labels.iter().find(|&&y| y != 1.0 && y != -1.0) {
            return Err(Error::InvalidArgument(format!(
                "labels must be +1 or -1, got {bad}"
            )));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "regularization constant must be positive, got {c}"
            )));
        }
        Ok(Self { points, labels, c })
    }

    pub fn points(&self) -> &ProblemMatrix {
        &self.points
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn n(&self) -> usize {
        self.points.cols()
    }

    pub fn d(&self) -> usize {
        self.points.rows()
    }
}

/// Rewrite a nonnegative regression problem (weights restricted to the
/// simplex) as a margin problem by translating every column by `−b`.
/// Because simplex weights sum to one, `‖(A − b·1ᵀ)x‖ = ‖Ax − b‖` for every
/// simplex point `x`.
pub fn nonneg_lasso_to_svm(a: &ProblemMatrix, b: &[f64]) -> Result<SvmInstance, Error> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "rhs has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let mut m = a.clone();
    for j in 0..m.cols() {
        for (v, bi) in m.col_mut(j).iter_mut().zip(b) {
            *v -= bi;
        }
    }
    SvmInstance::new(m, SvmOrigin::ReducedFromLasso)
}

/// Rewrite a radius-1 regression problem as a margin problem over `2n`
/// columns: mirror the columns as `(A | −A)`, then translate by `−b`.
/// Feasible points correspond through [`barycentric_expand`] /
/// [`barycentric_contract`] with equal objectives.
pub fn lasso_to_svm(inst: &LassoInstance) -> Result<(SvmInstance, ReductionMeta), Error> {
    if inst.radius() != 1.0 {
        return Err(Error::InvalidArgument(format!(
            "radius must be normalized to 1 before reduction (got {}); \
             call normalize_radius first",
            inst.radius()
        )));
    }
    let (a, b) = (inst.matrix(), inst.rhs());
    let n = a.cols();
    let mut m = ProblemMatrix::zeros(a.rows(), 2 * n);
    for j in 0..n {
        let src = a.col(j);
        for (i, (dst, bi)) in m.col_mut(j).iter_mut().zip(b).enumerate() {
            *dst = src[i] - bi;
        }
        for (i, (dst, bi)) in m.col_mut(n + j).iter_mut().zip(b).enumerate() {
            *dst = -src[i] - bi;
        }
    }
    let inst = SvmInstance::new(m, SvmOrigin::ReducedFromLasso)?;
    let meta = ReductionMeta {
        kind: ReductionKind::LassoToSvm,
        w: None,
        sigma: None,
        big_d: None,
        btilde: None,
        source_n: n,
    };
    Ok((inst, meta))
}

/// Write an l1-ball point as a convex combination of the `2n` cross-polytope
/// vertices: positive parts on the first block, negative parts on the
/// second, and the leftover mass `(1 − ‖x‖₁)/2` split evenly over the
/// first mirror pair (a canonical choice that makes the map deterministic).
pub fn barycentric_expand(x: &L1Vector) -> SimplexVector {
    let n = x.dim();
    let mut coords = vec![0.0; 2 * n];
    for (i, &v) in x.coords().iter().enumerate() {
        if v >= 0.0 {
            coords[i] = v;
        } else {
            coords[n + i] = -v;
        }
    }
    let slack = ((1.0 - x.norm1()) / 2.0).max(0.0);
    coords[0] += slack;
    coords[n] += slack;
    SimplexVector::with_tol(coords, DEFAULT_FEASIBILITY_TOL)
        .expect("expansion of a feasible point is feasible")
}

/// Collapse a `2n`-dimensional simplex point to the l1-ball: first block
/// minus second block.  Mirror pairs cancel, so the l1 norm never exceeds
/// the total mass.
pub fn barycentric_contract(x_simp: &SimplexVector) -> Result<L1Vector, Error> {
    let dim = x_simp.dim();
    if dim % 2 != 0 {
        return Err(Error::DimensionMismatch(format!(
            "expected an even dimension (mirrored blocks), got {dim}"
        )));
    }
    let n = dim / 2;
    let c = x_simp.coords();
    let coords: Vec<f64> = (0..n).map(|i| c[i] - c[n + i]).collect();
    L1Vector::with_tol(coords, DEFAULT_FEASIBILITY_TOL)
}

/// Rewrite a margin problem as a regression problem, given a separating
/// direction with positive margin and a strict upper bound `big_d` on the
/// column norms.  The right-hand side is `b̃ = −(w/‖w‖)·big_d²/σ` and the
/// columns are translated by `b̃`; on the simplex the objectives agree
/// exactly.
pub fn svm_to_lasso(
    inst: &SvmInstance,
    sep: &SeparatorReport,
    big_d: f64,
) -> Result<(LassoInstance, ReductionMeta), Error> {
    if sep.direction.len() != inst.d() {
        return Err(Error::DimensionMismatch(format!(
            "separator has dimension {}, instance rows {}",
            sep.direction.len(),
            inst.d()
        )));
    }
    let sigma = sep.margin;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::Precondition(format!(
            "separating margin must be strictly positive, got {sigma}"
        )));
    }
    let max_norm = inst.matrix().max_col_norm();
    if !(big_d.is_finite() && big_d > max_norm) {
        return Err(Error::Precondition(format!(
            "norm bound {big_d} must strictly exceed the largest column norm {max_norm}"
        )));
    }
    let wnorm = linalg::norm2(&sep.direction);
    if wnorm <= 0.0 {
        return Err(Error::Precondition("separator direction is zero".into()));
    }
    let scale = big_d * big_d / sigma / wnorm;
    let btilde: Vec<f64> = sep.direction.iter().map(|&wi| -wi * scale).collect();
    let mut m = inst.matrix().clone();
    for j in 0..m.cols() {
        for (v, bi) in m.col_mut(j).iter_mut().zip(&btilde) {
            *v += bi;
        }
    }
    let lasso = LassoInstance::new(m, btilde.clone(), 1.0)?;
    let meta = ReductionMeta {
        kind: ReductionKind::SvmToLasso,
        w: Some(sep.direction.clone()),
        sigma: Some(sigma),
        big_d: Some(big_d),
        btilde: Some(btilde),
        source_n: inst.n(),
    };
    Ok((lasso, meta))
}

fn require_svm_to_lasso(meta: &ReductionMeta, op: &str) -> Result<(), Error> {
    if meta.kind != ReductionKind::SvmToLasso {
        return Err(Error::WrongReduction(format!(
            "{op} is only valid on instances constructed from a margin problem \
             (the strict-improvement guarantee holds only there)"
        )));
    }
    Ok(())
}

/// On a constructed (margin → regression) instance, flipping every negative
/// coordinate to its absolute value strictly decreases the objective.
/// Returns the flipped point; rejects points that are already nonnegative.
pub fn flip_to_nonneg(
    _inst: &LassoInstance,
    meta: &ReductionMeta,
    x: &L1Vector,
) -> Result<L1Vector, Error> {
    require_svm_to_lasso(meta, "flip_to_nonneg")?;
    if !x.coords().iter().any(|&v| v < 0.0) {
        return Err(Error::InvalidArgument(
            "point is already nonnegative; flipping is a no-op".into(),
        ));
    }
    let coords: Vec<f64> = x.coords().iter().map(|&v| v.abs()).collect();
    L1Vector::with_tol(coords, DEFAULT_FEASIBILITY_TOL)
}

/// On a constructed instance, scaling a nonzero nonnegative point up to
/// total mass one strictly decreases the objective.  Returns the simplex
/// point `x / ‖x‖₁`; rejects the zero vector (nothing to scale).
pub fn scale_to_simplex(
    _inst: &LassoInstance,
    meta: &ReductionMeta,
    x: &L1Vector,
) -> Result<SimplexVector, Error> {
    require_svm_to_lasso(meta, "scale_to_simplex")?;
    if !x.is_nonnegative(DEFAULT_FEASIBILITY_TOL) {
        return Err(Error::Infeasible(
            "scaling requires a nonnegative point (flip first)".into(),
        ));
    }
    let mass = x.norm1();
    if mass == 0.0 {
        return Err(Error::InvalidArgument(
            "cannot scale the zero vector onto the simplex (degenerate input)".into(),
        ));
    }
    let coords: Vec<f64> = x.coords().iter().map(|&v| v.max(0.0) / mass).collect();
    SimplexVector::with_tol(coords, 1e-9)
}

/// Test oracle behind the two improvement maps: on a constructed instance
/// the residual at any filled-simplex point `x` makes a strictly positive
/// inner product with `−Ã·δ` for every nonzero filled-simplex step `δ`.
pub fn check_inner_positivity(
    inst: &LassoInstance,
    meta: &ReductionMeta,
    x: &L1Vector,
    delta: &L1Vector,
) -> Result<bool, Error> {
    require_svm_to_lasso(meta, "check_inner_positivity")?;
    if !x.is_nonnegative(DEFAULT_FEASIBILITY_TOL) || !delta.is_nonnegative(DEFAULT_FEASIBILITY_TOL)
    {
        return Err(Error::Infeasible(
            "positivity check expects nonnegative points".into(),
        ));
    }
    if delta.coords().iter().all(|&v| v == 0.0) {
        return Err(Error::InvalidArgument("step delta must be nonzero".into()));
    }
    let r = inst.residual(x.coords());
    let step = inst.matrix().matvec(delta.coords());
    Ok(-linalg::dot(&r, &step) > 0.0)
}

/// Dual of the squared-loss soft-margin classifier as a margin-form
/// instance: label-signed points stacked over `(1/√C)·I`, so the Gram
/// matrix is `ZᵀZ + (1/C)·I`.
pub fn soft_margin_dual(data: &LabeledData) -> SvmInstance {
    let (d, n) = (data.d(), data.n());
    let mut m = ProblemMatrix::zeros(d + n, n);
    let reg = 1.0 / data.c().sqrt();
    for j in 0..n {
        let y = data.labels()[j];
        let src = data.points().col(j).to_vec();
        let col = m.col_mut(j);
        for (i, v) in src.iter().enumerate() {
            col[i] = y * v;
        }
        col[d + j] = reg;
    }
    SvmInstance::new(m, SvmOrigin::SoftMarginDual { c: data.c(), data_dim: d })
        .expect("labeled data is validated at construction")
}

/// Separator that always exists for the soft-margin dual construction:
/// zeros on the data block, `1/√n` on the regularization block.  Its margin
/// is exactly `1/√(nC)`.
pub fn trivial_separator(n: usize, c: f64, d: usize) -> Result<SeparatorReport, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one point".into()));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "regularization constant must be positive, got {c}"
        )));
    }
    let mut w = vec![0.0; d + n];
    let val = 1.0 / (n as f64).sqrt();
    w[d..].fill(val);
    Ok(SeparatorReport {
        direction: w,
        margin: 1.0 / (n as f64 * c).sqrt(),
    })
}

/// Append a constant feature of value `t` to every point.  The classifier
/// offset is then absorbed into the weight vector; larger `t` weakens the
/// regularization applied to the offset.
pub fn augment_offset(data: &LabeledData, t: f64) -> Result<LabeledData, Error> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "offset feature value must be positive, got {t}"
        )));
    }
    let (d, n) = (data.d(), data.n());
    let mut m = ProblemMatrix::zeros(d + 1, n);
    for j in 0..n {
        let src = data.points().col(j).to_vec();
        let col = m.col_mut(j);
        col[..d].copy_from_slice(&src);
        col[d] = t;
    }
    LabeledData::new(m, data.labels().to_vec(), data.c())
}

/// A norm bound strictly dominating all columns: `(1 + eta)` times the
/// largest column norm.  Small `eta` keeps the constructed right-hand side
/// (which grows as the bound squared) well conditioned.
pub fn estimate_big_d(inst: &SvmInstance, eta: f64) -> Result<f64, Error> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "safety factor must be positive, got {eta}"
        )));
    }
    let max_norm = inst.matrix().max_col_norm();
    if max_norm == 0.0 {
        return Err(Error::InvalidArgument(
            "all columns are zero; no meaningful norm bound exists".into(),
        ));
    }
    Ok((1.0 + eta) * max_norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{lasso_objective, margin, svm_objective};
    use crate::synth;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn identity2() -> ProblemMatrix {
        ProblemMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    /// Two mirrored points on the x-axis, C = 1: Gram [[2,1],[1,2]].
    fn two_point_data() -> LabeledData {
        let pts = ProblemMatrix::from_columns(&[vec![1.0, 0.0], vec![-1.0, 0.0]]).unwrap();
        LabeledData::new(pts, vec![1.0, -1.0], 1.0).unwrap()
    }

    fn constructed_pair() -> (LassoInstance, ReductionMeta) {
        let inst = soft_margin_dual(&two_point_data());
        let sep = trivial_separator(2, 1.0, 2).unwrap();
        svm_to_lasso(&inst, &sep, 2.0).unwrap()
    }

    #[test]
    fn translation_by_rhs() {
        let svm = nonneg_lasso_to_svm(&identity2(), &[1.0, 0.0]).unwrap();
        assert_eq!(svm.matrix().col(0), &[0.0, 0.0]);
        assert_eq!(svm.matrix().col(1), &[-1.0, 1.0]);
        // b = 0 leaves the matrix unchanged.
        let same = nonneg_lasso_to_svm(&identity2(), &[0.0, 0.0]).unwrap();
        assert_eq!(same.matrix(), &identity2());
    }

    #[test]
    fn translation_preserves_objective_on_simplex() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let lasso = synth::random_lasso(&mut rng, 4, 6, 1.0);
            let svm = nonneg_lasso_to_svm(lasso.matrix(), lasso.rhs()).unwrap();
            let x = synth::random_simplex(&mut rng, 6);
            let via_svm = svm_objective(&svm, &x).unwrap();
            let direct = linalg::sumsq(&lasso.residual(x.coords()));
            assert!((via_svm - direct).abs() <= 1e-12);
        }
    }

    #[test]
    fn mirrored_reduction_worked_example() {
        let inst = LassoInstance::new(identity2(), vec![0.5, 0.5], 1.0).unwrap();
        let (svm, meta) = lasso_to_svm(&inst).unwrap();
        assert_eq!(meta.kind, ReductionKind::LassoToSvm);
        assert_eq!(meta.source_n, 2);
        assert_eq!(svm.matrix().col(0), &[0.5, -0.5]);
        assert_eq!(svm.matrix().col(1), &[-0.5, 0.5]);
        assert_eq!(svm.matrix().col(2), &[-1.5, -0.5]);
        assert_eq!(svm.matrix().col(3), &[-0.5, -1.5]);
        // The rhs has l1 norm 1, so it is exactly representable: both
        // optima are zero.
        let x = L1Vector::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(lasso_objective(&inst, &x).unwrap(), 0.0);
        let xs = SimplexVector::new(vec![0.5, 0.5, 0.0, 0.0]).unwrap();
        assert_eq!(svm_objective(&svm, &xs).unwrap(), 0.0);
    }

    #[test]
    fn reduction_rejects_unnormalized_radius() {
        let inst = LassoInstance::new(identity2(), vec![0.5, 0.5], 2.0).unwrap();
        assert!(lasso_to_svm(&inst).is_err());
    }

    #[test]
    fn expand_worked_example() {
        let x = L1Vector::new(vec![0.3, -0.2]).unwrap();
        let xs = barycentric_expand(&x);
        let expect = [0.55, 0.0, 0.25, 0.2];
        for (a, b) in xs.coords().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15, "{:?}", xs.coords());
        }
        // All-slack case.
        let zero = L1Vector::new(vec![0.0, 0.0]).unwrap();
        assert_eq!(barycentric_expand(&zero).coords(), &[0.5, 0.0, 0.5, 0.0]);
    }

    #[test]
    fn contract_basics() {
        let xs = SimplexVector::new(vec![0.5, 0.0, 0.5, 0.0]).unwrap();
        assert_eq!(barycentric_contract(&xs).unwrap().coords(), &[0.0, 0.0]);
        let v = SimplexVector::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(barycentric_contract(&v).unwrap().coords(), &[1.0, 0.0]);
        let odd = SimplexVector::new(vec![0.5, 0.25, 0.25]).unwrap();
        assert!(barycentric_contract(&odd).is_err());
    }

    #[test]
    fn expand_contract_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x = synth::random_l1(&mut rng, 7);
            let back = barycentric_contract(&barycentric_expand(&x)).unwrap();
            for (a, b) in back.coords().iter().zip(x.coords()) {
                // Exact up to one rounding of the slack addition.
                assert!((a - b).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn constructed_rhs_worked_example() {
        let (lasso, meta) = constructed_pair();
        let btilde = meta.btilde.as_ref().unwrap();
        let expect = [0.0, 0.0, -4.0, -4.0];
        for (a, b) in btilde.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "btilde = {btilde:?}");
        }
        assert_eq!(lasso.rhs(), btilde.as_slice());
        assert_eq!(lasso.radius(), 1.0);
    }

    #[test]
    fn constructed_instance_preserves_objective() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let inst = soft_margin_dual(&two_point_data());
        let sep = trivial_separator(2, 1.0, 2).unwrap();
        let (lasso, _) = svm_to_lasso(&inst, &sep, 2.0).unwrap();
        for _ in 0..50 {
            let x = synth::random_simplex(&mut rng, 2);
            let svm_val = svm_objective(&inst, &x).unwrap();
            let lasso_val = linalg::sumsq(&lasso.residual(x.coords()));
            assert!((svm_val - lasso_val).abs() <= 1e-12);
        }
    }

    #[test]
    fn construction_preconditions() {
        let inst = soft_margin_dual(&two_point_data());
        let sep = trivial_separator(2, 1.0, 2).unwrap();
        // Norm bound must strictly dominate the column norms (√2 here).
        assert!(svm_to_lasso(&inst, &sep, 2.0_f64.sqrt()).is_err());
        // Nonpositive margin is rejected.
        let bad = SeparatorReport {
            direction: sep.direction.clone(),
            margin: 0.0,
        };
        assert!(svm_to_lasso(&inst, &bad, 2.0).is_err());
    }

    #[test]
    fn flip_improves_strictly() {
        let (lasso, meta) = constructed_pair();
        let x = L1Vector::new(vec![-0.4, 0.3]).unwrap();
        let flipped = flip_to_nonneg(&lasso, &meta, &x).unwrap();
        assert_eq!(flipped.coords(), &[0.4, 0.3]);
        let before = lasso_objective(&lasso, &x).unwrap();
        let after = lasso_objective(&lasso, &flipped).unwrap();
        assert!(after < before);
        // -e1 flips to e1.
        let neg = L1Vector::new(vec![-1.0, 0.0]).unwrap();
        let pos = flip_to_nonneg(&lasso, &meta, &neg).unwrap();
        assert_eq!(pos.coords(), &[1.0, 0.0]);
        assert!(
            lasso_objective(&lasso, &pos).unwrap() < lasso_objective(&lasso, &neg).unwrap()
        );
        // Already nonnegative input is a signalled no-op.
        assert!(flip_to_nonneg(&lasso, &meta, &pos).is_err());
    }

    #[test]
    fn scale_improves_strictly() {
        let (lasso, meta) = constructed_pair();
        let x = L1Vector::new(vec![0.5, 0.0]).unwrap();
        let scaled = scale_to_simplex(&lasso, &meta, &x).unwrap();
        assert_eq!(scaled.coords(), &[1.0, 0.0]);
        let before = lasso_objective(&lasso, &x).unwrap();
        let after = linalg::sumsq(&lasso.residual(scaled.coords()));
        assert!(after < before);
        // Zero is degenerate.
        let zero = L1Vector::new(vec![0.0, 0.0]).unwrap();
        assert!(scale_to_simplex(&lasso, &meta, &zero).is_err());
    }

    #[test]
    fn improvement_maps_refuse_other_reductions() {
        let inst = LassoInstance::new(identity2(), vec![0.5, 0.5], 1.0).unwrap();
        let (_, meta) = lasso_to_svm(&inst).unwrap();
        let x = L1Vector::new(vec![-0.5, 0.0]).unwrap();
        assert!(matches!(
            flip_to_nonneg(&inst, &meta, &x),
            Err(Error::WrongReduction(_))
        ));
        assert!(matches!(
            scale_to_simplex(&inst, &meta, &x),
            Err(Error::WrongReduction(_))
        ));
        assert!(matches!(
            check_inner_positivity(&inst, &meta, &x, &x),
            Err(Error::WrongReduction(_))
        ));
    }

    #[test]
    fn inner_positivity_holds_on_constructed_instances() {
        let (lasso, meta) = constructed_pair();
        let x = L1Vector::new(vec![1.0, 0.0]).unwrap();
        let delta = L1Vector::new(vec![0.0, 1.0]).unwrap();
        assert!(check_inner_positivity(&lasso, &meta, &x, &delta).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let x = synth::random_filled_simplex(&mut rng, 2);
            let delta = synth::random_filled_simplex(&mut rng, 2);
            if delta.coords().iter().all(|&v| v == 0.0) {
                continue;
            }
            assert!(check_inner_positivity(&lasso, &meta, &x, &delta).unwrap());
        }
        // Zero step is rejected.
        let zero = L1Vector::new(vec![0.0, 0.0]).unwrap();
        assert!(check_inner_positivity(&lasso, &meta, &x, &zero).is_err());
    }

    #[test]
    fn zero_point_is_dominated_by_every_vertex() {
        let (lasso, meta) = constructed_pair();
        let zero_obj = linalg::sumsq(lasso.rhs());
        for j in 0..lasso.n() {
            let e = L1Vector::new(
                (0..lasso.n()).map(|i| if i == j { 1.0 } else { 0.0 }).collect(),
            )
            .unwrap();
            assert!(lasso_objective(&lasso, &e).unwrap() < zero_obj);
        }
        let _ = meta;
    }

    #[test]
    fn dual_construction_gram() {
        let inst = soft_margin_dual(&two_point_data());
        assert_eq!(inst.d(), 4);
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.matrix().gram(), vec![2.0, 1.0, 1.0, 2.0]);
        match inst.origin() {
            SvmOrigin::SoftMarginDual { c, data_dim } => {
                assert_eq!(c, 1.0);
                assert_eq!(data_dim, 2);
            }
            other => panic!("unexpected origin {other:?}"),
        }
        // Large C approaches the unregularized Gram.
        let pts = two_point_data();
        let hard = LabeledData::new(pts.points().clone(), pts.labels().to_vec(), 1e12).unwrap();
        let g = soft_margin_dual(&hard).matrix().gram();
        assert!((g[0] - 1.0).abs() < 1e-11);
    }

    #[test]
    fn trivial_separator_margin() {
        let sep = trivial_separator(2, 1.0, 2).unwrap();
        assert_eq!(sep.direction, vec![0.0, 0.0, 1.0 / 2.0_f64.sqrt(), 1.0 / 2.0_f64.sqrt()]);
        assert!((sep.margin - 1.0 / 2.0_f64.sqrt()).abs() < 1e-15);
        // n = 4, C = 0.25 gives margin exactly 1.
        assert_eq!(trivial_separator(4, 0.25, 3).unwrap().margin, 1.0);
        // Cross-check against direct evaluation on the instance.
        let inst = soft_margin_dual(&two_point_data());
        let recomputed = margin(&inst, &sep.direction).unwrap().margin;
        assert!((recomputed - sep.margin).abs() < 1e-12);
    }

    #[test]
    fn offset_augmentation() {
        let data = two_point_data();
        let aug = augment_offset(&data, 1.0).unwrap();
        assert_eq!(aug.d(), 3);
        assert_eq!(aug.points().col(0), &[1.0, 0.0, 1.0]);
        assert_eq!(aug.points().col(1), &[-1.0, 0.0, 1.0]);
        assert!(augment_offset(&data, 0.0).is_err());
    }

    #[test]
    fn norm_bound_estimation() {
        let m = ProblemMatrix::from_columns(&[vec![1.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let inst = SvmInstance::new(m, SvmOrigin::Raw).unwrap();
        let d = estimate_big_d(&inst, 0.01).unwrap();
        assert!((d - 1.01 * 2.0_f64.sqrt()).abs() < 1e-15);
        assert!((estimate_big_d(&inst, 1.0).unwrap() - 2.0 * 2.0_f64.sqrt()).abs() < 1e-15);
        let zeros = SvmInstance::new(ProblemMatrix::zeros(2, 2), SvmOrigin::Raw).unwrap();
        assert!(estimate_big_d(&zeros, 0.01).is_err());
    }

    #[test]
    fn labeled_data_validation() {
        let pts = identity2();
        assert!(LabeledData::new(pts.clone(), vec![1.0, 0.0], 1.0).is_err());
        assert!(LabeledData::new(pts.clone(), vec![1.0], 1.0).is_err());
        assert!(LabeledData::new(pts.clone(), vec![1.0, -1.0], 0.0).is_err());
        assert!(LabeledData::new(pts, vec![1.0, -1.0], 1.0).is_ok());
    }
}
