//! Solvers and reductions connecting two classic problems of sparse learning:
//! least-squares regression constrained to an l1-ball, and maximum-margin
//! classification posed as a quadratic program over the probability simplex.
//!
//! The two problems are interchangeable: any l1-constrained regression can be
//! rewritten as a margin problem by doubling the columns and absorbing the
//! right-hand side, and any margin problem can be rewritten as a regression
//! by translating the columns along a separating direction.  This crate
//! provides both rewrites with exact objective bookkeeping, solvers for each
//! formulation (a simplex-constrained Frank-Wolfe method with duality-gap
//! certificates, a projected-gradient method for the l1-ball, and a
//! perceptron), a randomized solver that touches only a sublinear number of
//! matrix entries, kernelized variants, and safe rules that discard columns
//! which provably cannot appear in any optimal solution.
//!
//! # Layout
//!
//! * [`matrix`] — dense column-major matrix storage and products.
//! * [`problem`] — problem instances, feasible vectors, objectives, and
//!   certificates.
//! * [`reduction`] — rewrites between the two formulations and the dual of
//!   the soft-margin classifier.
//! * [`solver`] — Frank-Wolfe, projected gradient, l1 projection, perceptron.
//! * [`sublinear`] — entry-sampling solver with an access-counting oracle.
//! * [`kernel`] — kernelized regression over doubled columns.
//! * [`screening`] — safe column elimination for both formulations.
//! * [`synth`] — seeded random instance generators for testing and benchmarks.

pub mod error;
pub mod kernel;
pub mod linalg;
pub mod matrix;
pub mod problem;
pub mod reduction;
pub mod screening;
pub mod solver;
pub mod sublinear;
pub mod synth;

pub use error::Error;
pub use matrix::ProblemMatrix;
pub use problem::{
    duality_gap, lasso_objective, margin, normalize_radius, svm_objective, L1Vector,
    LassoInstance, SeparatorReport, SimplexVector, Solution, SolveReport, SvmInstance, SvmOrigin,
};
pub use reduction::{
    augment_offset, barycentric_contract, barycentric_expand, check_inner_positivity,
    estimate_big_d, flip_to_nonneg, lasso_to_svm, nonneg_lasso_to_svm, scale_to_simplex,
    soft_margin_dual, svm_to_lasso, trivial_separator, LabeledData, ReductionMeta,
};
pub use solver::{perceptron, project_l1, solve_lasso_pg, solve_svm_fw, SolverConfig, StepRule};
