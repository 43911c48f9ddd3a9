//! Safe column elimination for both problem forms.
//!
//! Given any feasible reference point and a bound `subopt` on its objective
//! suboptimality, the optimal residual lies within a ball of radius
//! `√subopt` around the reference residual (the objective is the squared
//! norm of the residual over a convex set, so the usual projection
//! inequality `‖r_ref‖² − ‖r*‖² ≥ ‖r_ref − r*‖²` applies).  Columns whose
//! correlation with every residual in that ball stays strictly below the
//! best achievable correlation can never satisfy the optimality condition
//! for an active column, so they carry zero weight in **every** optimal
//! solution and may be dropped before solving.
//!
//! The regression form compares absolute correlations (coordinates may take
//! either sign); the margin form compares signed correlations against the
//! virtual residual `−Ax_ref` (weights are nonnegative and the target is
//! the origin).  Discarded margin-form columns are exactly the points
//! guaranteed not to be support vectors.

use crate::error::Error;
use crate::linalg;
use crate::problem::{
    lasso_objective, svm_objective, L1Vector, LassoInstance, SimplexVector, SvmInstance,
};

/// Outcome of a screening pass: a partition of the column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreeningReport {
    pub kept: Vec<usize>,
    pub discarded: Vec<usize>,
    /// Radius `√subopt` of the safe ball around the reference residual.
    pub radius_used: f64,
    /// Objective value of the reference point.
    pub reference_objective: f64,
}

impl ScreeningReport {
    /// Copy of a regression instance keeping only the surviving columns.
    pub fn restrict_lasso(&self, inst: &LassoInstance) -> Result<LassoInstance, Error> {
        LassoInstance::new(
            inst.matrix().keep_columns(&self.kept)?,
            inst.rhs().to_vec(),
            inst.radius(),
        )
    }

    /// Copy of a margin instance keeping only the surviving columns.
    pub fn restrict_svm(&self, inst: &SvmInstance) -> Result<SvmInstance, Error> {
        SvmInstance::new(inst.matrix().keep_columns(&self.kept)?, inst.origin())
    }

    /// Lift a solution of the restricted instance back to the original
    /// index space (zeros on discarded columns).
    pub fn expand_solution(&self, restricted: &[f64], full_len: usize) -> Vec<f64> {
        let mut full = vec![0.0; full_len];
        for (&j, &v) in self.kept.iter().zip(restricted) {
            full[j] = v;
        }
        full
    }
}

fn partition(upper: &[f64], lower_best: f64) -> (Vec<usize>, Vec<usize>) {
    let mut kept = Vec::new();
    let mut discarded = Vec::new();
    for (j, &u) in upper.iter().enumerate() {
        if u < lower_best {
            discarded.push(j);
        } else {
            kept.push(j);
        }
    }
    (kept, discarded)
}

/// Safe sphere test for the regression form.  `subopt` must upper-bound
/// `objective(x_ref) − optimum` (a solver's gap certificate qualifies).
/// Every discarded column has zero weight in every optimal solution.
pub fn screen_lasso(
    inst: &LassoInstance,
    x_ref: &L1Vector,
    subopt: f64,
) -> Result<ScreeningReport, Error> {
    if !(subopt.is_finite() && subopt >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "suboptimality bound must be nonnegative, got {subopt}"
        )));
    }
    let reference_objective = lasso_objective(inst, x_ref)?;
    let rho = subopt.sqrt();
    // r_ref = b − A x_ref.
    let r_ref: Vec<f64> = inst
        .residual(x_ref.coords())
        .into_iter()
        .map(|v| -v)
        .collect();
    let a = inst.matrix();
    let r_norm = linalg::norm2(&r_ref);
    let mut upper = Vec::with_capacity(a.cols());
    let mut best_lower = f64::NEG_INFINITY;
    for j in 0..a.cols() {
        let corr = a.col_dot(j, &r_ref).abs();
        let slack = linalg::norm2(a.col(j)) * rho + dot_error(a.rows(), a.col(j), r_norm);
        upper.push(corr + slack);
        best_lower = best_lower.max(corr - slack);
    }
    let (kept, discarded) = partition(&upper, best_lower);
    Ok(ScreeningReport {
        kept,
        discarded,
        radius_used: rho,
        reference_objective,
    })
}

/// Worst-case rounding error of a length-`rows` dot product between a
/// column and the reference residual.  Without this floor, a reference
/// point converged to machine precision (`subopt` rounding to zero) would
/// turn the comparison into an exact tie-break and discard columns whose
/// correlation trails the best by a single ulp.
fn dot_error(rows: usize, col: &[f64], r_norm: f64) -> f64 {
    rows as f64 * f64::EPSILON * linalg::norm2(col) * r_norm
}

/// Safe sphere test for the margin form (signed correlations against the
/// virtual residual `−A x_ref`).  Discarded columns are guaranteed
/// non-support-vectors in every optimal solution.
pub fn screen_svm(
    inst: &SvmInstance,
    x_ref: &SimplexVector,
    subopt: f64,
) -> Result<ScreeningReport, Error> {
    if !(subopt.is_finite() && subopt >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "suboptimality bound must be nonnegative, got {subopt}"
        )));
    }
    let reference_objective = svm_objective(inst, x_ref)?;
    let rho = subopt.sqrt();
    let a = inst.matrix();
    let r_ref: Vec<f64> = a.matvec(x_ref.coords()).into_iter().map(|v| -v).collect();
    let r_norm = linalg::norm2(&r_ref);
    let mut upper = Vec::with_capacity(a.cols());
    let mut best_lower = f64::NEG_INFINITY;
    for j in 0..a.cols() {
        let corr = a.col_dot(j, &r_ref);
        let slack = linalg::norm2(a.col(j)) * rho + dot_error(a.rows(), a.col(j), r_norm);
        upper.push(corr + slack);
        best_lower = best_lower.max(corr - slack);
    }
    let (kept, discarded) = partition(&upper, best_lower);
    Ok(ScreeningReport {
        kept,
        discarded,
        radius_used: rho,
        reference_objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ProblemMatrix;
    use crate::problem::SvmOrigin;
    use crate::reduction::{barycentric_expand, lasso_to_svm};
    use crate::solver::{solve_lasso_pg, solve_svm_fw, SolverConfig};
    use crate::synth;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tight_cfg() -> SolverConfig {
        SolverConfig {
            tol: 1e-12,
            max_iter: 200_000,
            ..Default::default()
        }
    }

    #[test]
    fn screen_discards_weak_column_and_preserves_optimum() {
        // Columns e1, e2, and a weakly correlated diagonal stub, with the
        // target far along e1: only column 0 can be active.
        let a = ProblemMatrix::from_columns(&[
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.1, 0.1],
        ])
        .unwrap();
        let inst = LassoInstance::new(a, vec![2.0, 0.0], 1.0).unwrap();
        let rep = solve_lasso_pg(&inst, &tight_cfg()).unwrap();
        let screen = screen_lasso(&inst, rep.solution.as_l1().unwrap(), rep.gap).unwrap();
        assert!(screen.discarded.contains(&2), "{screen:?}");
        assert!(screen.kept.contains(&0));
        // Re-solving the restricted instance reproduces the optimum.
        let small = screen.restrict_lasso(&inst).unwrap();
        let rep_small = solve_lasso_pg(&small, &tight_cfg()).unwrap();
        assert!((rep_small.objective - rep.objective).abs() <= 1e-10);
    }

    #[test]
    fn huge_suboptimality_discards_nothing() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let inst = synth::random_lasso(&mut rng, 5, 8, 1.0);
        let x = synth::random_l1(&mut rng, 8);
        let screen = screen_lasso(&inst, &x, 1e6).unwrap();
        assert!(screen.discarded.is_empty());
        assert_eq!(screen.kept.len(), 8);
        assert!(screen_lasso(&inst, &x, -1.0).is_err());
    }

    #[test]
    fn discarded_set_grows_as_the_bound_tightens() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let inst = synth::random_lasso(&mut rng, 10, 15, 1.0);
        let rep = solve_lasso_pg(&inst, &tight_cfg()).unwrap();
        let x_ref = rep.solution.as_l1().unwrap();
        let mut last: Option<Vec<usize>> = None;
        for subopt in [1.0, 1e-2, 1e-4, 1e-8, 0.0] {
            let screen = screen_lasso(&inst, x_ref, subopt).unwrap();
            if let Some(prev) = &last {
                for j in prev {
                    assert!(
                        screen.discarded.contains(j),
                        "shrinking the bound lost column {j}"
                    );
                }
            }
            last = Some(screen.discarded);
        }
    }

    #[test]
    fn screen_svm_discards_interior_column() {
        // Two orthonormal columns plus one far outside the margin: the far
        // column has slack optimality conditions and must go.
        let a = ProblemMatrix::from_columns(&[
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![2.0, 2.0],
        ])
        .unwrap();
        let inst = SvmInstance::new(a, SvmOrigin::Raw).unwrap();
        let rep = solve_svm_fw(&inst, &tight_cfg());
        // The squared objective drops by at most (non-squared gap) times
        // (‖Ax‖ + best margin) ≤ 2‖Ax‖·gap; be generous.
        let subopt = 4.0 * rep.objective.sqrt() * rep.gap + 1e-15;
        let screen = screen_svm(&inst, rep.solution.as_simplex().unwrap(), subopt).unwrap();
        assert!(screen.discarded.contains(&2), "{screen:?}");
        let small = screen.restrict_svm(&inst).unwrap();
        let rep_small = solve_svm_fw(&small, &tight_cfg());
        assert!((rep_small.objective - rep.objective).abs() <= 1e-10);
    }

    #[test]
    fn screening_transfers_through_the_reduction() {
        // At a tight reference, a regression column dies exactly when both
        // of its mirrored margin-form columns die.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let inst = synth::random_lasso(&mut rng, 6, 9, 1.0);
            let rep = solve_lasso_pg(&inst, &tight_cfg()).unwrap();
            let x_ref = rep.solution.as_l1().unwrap();
            let subopt = 1e-14;
            let lasso_screen = screen_lasso(&inst, x_ref, subopt).unwrap();
            let (svm, _) = lasso_to_svm(&inst).unwrap();
            let svm_screen =
                screen_svm(&svm, &barycentric_expand(x_ref), subopt).unwrap();
            let n = inst.n();
            for j in 0..n {
                let lasso_dead = lasso_screen.discarded.contains(&j);
                let both_dead = svm_screen.discarded.contains(&j)
                    && svm_screen.discarded.contains(&(n + j));
                assert_eq!(lasso_dead, both_dead, "column {j}");
            }
        }
    }

    #[test]
    fn expand_solution_reinflates_indices() {
        let screen = ScreeningReport {
            kept: vec![0, 2],
            discarded: vec![1],
            radius_used: 0.0,
            reference_objective: 0.0,
        };
        assert_eq!(screen.expand_solution(&[0.4, 0.6], 3), vec![0.4, 0.0, 0.6]);
    }
}
