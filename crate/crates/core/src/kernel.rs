//! Kernelized regression over mirrored, translated points.
//!
//! In feature space the reduction's `2n` points are `±Ψ(A_i) − Ψ(b)`.
//! Their pairwise inner products only involve kernel values between the
//! original points and the target:
//!
//! ```text
//! K[u, v] = s_u s_v κ(P_u, P_v) − s_u κ(P_u, b) − s_v κ(P_v, b) + κ(b, b)
//! ```
//!
//! with `s = +1` on the first block and `−1` on the second.  The resulting
//! `2n × 2n` Gram matrix feeds the same Frank-Wolfe engine as the explicit
//! solver, reading only pairwise products.

use crate::error::Error;
use crate::linalg;
use crate::matrix::ProblemMatrix;
use crate::problem::{SimplexVector, Solution, SolveReport};
use crate::reduction::barycentric_contract;
use crate::solver::{frank_wolfe, GramOracle, SolverConfig};
use crate::L1Vector;

/// Tolerance on symmetry of supplied kernel matrices.
const SYMMETRY_TOL: f64 = 1e-10;
/// How far below zero the smallest eigenvalue of an assembled Gram matrix
/// may sit before it is rejected as not positive semidefinite.
const MIN_EIGENVALUE_TOL: f64 = 1e-8;

/// Kernel function choice.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    /// `κ(y, z) = yᵀz`.
    Linear,
    /// `κ(y, z) = (yᵀz + coef0)^degree`, `degree ≥ 1`.
    Polynomial { degree: u32, coef0: f64 },
    /// `κ(y, z) = exp(−gamma·‖y − z‖²)`, `gamma > 0`.
    Rbf { gamma: f64 },
    /// Pairwise kernel values over the `n + 1` points `{A_1.., A_n, b}`,
    /// supplied directly (row/column `n` is the target `b`).
    Precomputed(PointKernelMatrix),
}

impl KernelSpec {
    fn validate(&self) -> Result<(), Error> {
        match self {
            KernelSpec::Linear | KernelSpec::Precomputed(_) => Ok(()),
            KernelSpec::Polynomial { degree, coef0 } => {
                if *degree < 1 {
                    return Err(Error::InvalidKernel(
                        "polynomial degree must be at least 1".into(),
                    ));
                }
                if !coef0.is_finite() {
                    return Err(Error::InvalidKernel("coef0 must be finite".into()));
                }
                Ok(())
            }
            KernelSpec::Rbf { gamma } => {
                if !(gamma.is_finite() && *gamma > 0.0) {
                    return Err(Error::InvalidKernel(format!(
                        "rbf gamma must be positive, got {gamma}"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Symmetric matrix of kernel values over a list of points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointKernelMatrix {
    values: Vec<f64>,
    m: usize,
}

impl PointKernelMatrix {
    /// Row-major `m × m` buffer; must be symmetric within `1e-10`.
    pub fn new(values: Vec<f64>, m: usize) -> Result<Self, Error> {
        if values.len() != m * m {
            return Err(Error::DimensionMismatch(format!(
                "kernel matrix buffer has {} entries, expected {}",
                values.len(),
                m * m
            )));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidKernel("non-finite kernel value".into()));
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if (values[i * m + j] - values[j * m + i]).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidKernel(format!(
                        "kernel matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { values, m })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.m + j]
    }
}

/// Assembled `2n × 2n` Gram matrix of the mirrored translated points,
/// validated symmetric and positive semidefinite (up to eigenvalue
/// tolerance `−1e-8`).
#[derive(Debug, Clone)]
pub struct KernelLassoGram {
    gram: Vec<f64>,
    n: usize,
    signs: Vec<f64>,
}

impl KernelLassoGram {
    /// `gram` is row-major `(2n) × (2n)`.
    pub fn new(gram: Vec<f64>, n: usize) -> Result<Self, Error> {
        let m = 2 * n;
        if n == 0 || gram.len() != m * m {
            return Err(Error::DimensionMismatch(format!(
                "gram buffer has {} entries, expected {} (n = {n})",
                gram.len(),
                m * m
            )));
        }
        if !gram.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidKernel("non-finite gram entry".into()));
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if (gram[i * m + j] - gram[j * m + i]).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidKernel(format!(
                        "gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let min_eig = linalg::symmetric_eigenvalues(&gram, m)
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -MIN_EIGENVALUE_TOL {
            return Err(Error::InvalidKernel(format!(
                "gram matrix is not positive semidefinite \
                 (smallest eigenvalue {min_eig:e})"
            )));
        }
        let signs = (0..m).map(|j| if j < n { 1.0 } else { -1.0 }).collect();
        Ok(Self { gram, n, signs })
    }

    pub fn gram(&self) -> &[f64] {
        &self.gram
    }

    /// Original column count (the gram is `2n × 2n`).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `+1` on the first block, `−1` on the mirrored block.
    pub fn signs(&self) -> &[f64] {
        &self.signs
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.gram[u * self.dim() + v]
    }
}

/// Evaluate a kernel on a pair of points.  Precomputed kernels have no
/// pointwise form and are rejected.
pub fn kernel_eval(spec: &KernelSpec, y: &[f64], z: &[f64]) -> Result<f64, Error> {
    spec.validate()?;
    if y.len() != z.len() {
        return Err(Error::DimensionMismatch(format!(
            "points have dimensions {} and {}",
            y.len(),
            z.len()
        )));
    }
    match spec {
        KernelSpec::Linear => Ok(linalg::dot(y, z)),
        KernelSpec::Polynomial { degree, coef0 } => {
            Ok((linalg::dot(y, z) + coef0).powi(*degree as i32))
        }
        KernelSpec::Rbf { gamma } => {
            let dist_sq = linalg::compensated_sum(
                y.iter().zip(z).map(|(a, b)| (a - b) * (a - b)),
            );
            Ok((-gamma * dist_sq).exp())
        }
        KernelSpec::Precomputed(_) => Err(Error::InvalidArgument(
            "precomputed kernels carry no pointwise evaluation rule".into(),
        )),
    }
}

/// Build the `2n × 2n` Gram matrix of the mirrored translated points from a
/// matrix, a target vector, and a kernel.
pub fn kernel_lasso_gram(
    a: &ProblemMatrix,
    b: &[f64],
    spec: &KernelSpec,
) -> Result<KernelLassoGram, Error> {
    spec.validate()?;
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "target has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let n = a.cols();
    // Pairwise kernel values over the n + 1 points {A_1, .., A_n, b}.
    let p = n + 1;
    let points = match spec {
        KernelSpec::Precomputed(pk) => {
            if pk.size() != p {
                return Err(Error::DimensionMismatch(format!(
                    "precomputed kernel covers {} points, expected {} \
                     (n columns plus the target)",
                    pk.size(),
                    p
                )));
            }
            pk.clone()
        }
        _ => {
            let mut values = vec![0.0; p * p];
            let point = |i: usize| -> &[f64] { if i < n { a.col(i) } else { b } };
            for i in 0..p {
                for j in i..p {
                    let v = kernel_eval(spec, point(i), point(j))?;
                    values[i * p + j] = v;
                    values[j * p + i] = v;
                }
            }
            PointKernelMatrix::new(values, p)?
        }
    };

    let m = 2 * n;
    let kbb = points.get(n, n);
    let mut gram = vec![0.0; m * m];
    for u in 0..m {
        let (pu, su) = (u % n, if u < n { 1.0 } else { -1.0 });
        for v in u..m {
            let (pv, sv) = (v % n, if v < n { 1.0 } else { -1.0 });
            let val = su * sv * points.get(pu, pv) - su * points.get(pu, n)
                - sv * points.get(pv, n)
                + kbb;
            gram[u * m + v] = val;
            gram[v * m + u] = val;
        }
    }
    KernelLassoGram::new(gram, n)
}

struct MatrixOracle<'a> {
    k: &'a [f64],
    m: usize,
}

impl GramOracle for MatrixOracle<'_> {
    fn n(&self) -> usize {
        self.m
    }

    fn diag(&self, j: usize) -> f64 {
        self.k[j * self.m + j]
    }

    fn column(&mut self, j: usize) -> &[f64] {
        // Symmetric: row j doubles as column j.
        &self.k[j * self.m..(j + 1) * self.m]
    }

    fn recompute(&mut self, x: &[f64], h: &mut [f64]) {
        h.iter_mut().for_each(|v| *v = 0.0);
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                let row = &self.k[j * self.m..(j + 1) * self.m];
                linalg::axpy(xj, row, h);
            }
        }
    }
}

/// Minimize `xᵀKx` over the simplex with the Gram-form Frank-Wolfe solver
/// (gradient `2Kx`; no feature access).  Returns the solve report together
/// with the signed pullback coefficients (first block minus mirrored
/// block), which solve the kernel-space regression problem.
pub fn solve_kernel_lasso(gram: &KernelLassoGram, cfg: &SolverConfig) -> (SolveReport, L1Vector) {
    let mut oracle = MatrixOracle {
        k: gram.gram(),
        m: gram.dim(),
    };
    let out = frank_wolfe(&mut oracle, cfg);
    let x = SimplexVector::with_tol(out.x, 1e-9)
        .expect("solver iterates remain on the simplex");
    let pullback = barycentric_contract(&x).expect("gram dimension is even by construction");
    let report = SolveReport {
        solution: Solution::Simplex(x),
        objective: out.objective,
        gap: out.gap,
        iterations: out.iterations,
        seed: cfg.seed,
        converged: out.converged,
    };
    (report, pullback)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::lasso_to_svm;
    use crate::synth;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kernel_eval_basics() {
        let e1 = [1.0, 0.0];
        assert_eq!(kernel_eval(&KernelSpec::Linear, &e1, &e1).unwrap(), 1.0);
        assert_eq!(
            kernel_eval(&KernelSpec::Rbf { gamma: 0.7 }, &e1, &e1).unwrap(),
            1.0
        );
        let poly = KernelSpec::Polynomial {
            degree: 2,
            coef0: 0.0,
        };
        assert_eq!(
            kernel_eval(&poly, &[1.0, 1.0], &[1.0, -1.0]).unwrap(),
            0.0
        );
        assert!(kernel_eval(&KernelSpec::Linear, &e1, &[1.0]).is_err());
        let bad = KernelSpec::Polynomial {
            degree: 0,
            coef0: 0.0,
        };
        assert!(kernel_eval(&bad, &e1, &e1).is_err());
        assert!(kernel_eval(&KernelSpec::Rbf { gamma: -1.0 }, &e1, &e1).is_err());
    }

    #[test]
    fn linear_gram_matches_explicit_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let inst = synth::random_lasso(&mut rng, 4, 5, 1.0);
            let gram = kernel_lasso_gram(inst.matrix(), inst.rhs(), &KernelSpec::Linear).unwrap();
            let (svm, _) = lasso_to_svm(&inst).unwrap();
            let explicit = svm.matrix().gram();
            let m = gram.dim();
            for u in 0..m {
                for v in 0..m {
                    assert!(
                        (gram.get(u, v) - explicit[u * m + v]).abs() <= 1e-12,
                        "mismatch at ({u}, {v})"
                    );
                }
            }
        }
    }

    #[test]
    fn coincident_point_and_target_vanish_under_linear_kernel() {
        let a = ProblemMatrix::from_columns(&[vec![0.3, -0.7]]).unwrap();
        let gram = kernel_lasso_gram(&a, &[0.3, -0.7], &KernelSpec::Linear).unwrap();
        assert!(gram.get(0, 0).abs() < 1e-15);
    }

    #[test]
    fn rbf_gram_is_psd_on_random_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let inst = synth::random_lasso(&mut rng, 3, 6, 1.0);
            let gram =
                kernel_lasso_gram(inst.matrix(), inst.rhs(), &KernelSpec::Rbf { gamma: 1.0 })
                    .unwrap();
            let min_eig = linalg::symmetric_eigenvalues(gram.gram(), gram.dim())[0];
            assert!(min_eig >= -1e-8, "min eigenvalue {min_eig}");
        }
    }

    #[test]
    fn solve_reaches_zero_on_reachable_target() {
        // Identity columns with target (0.5, 0.5): the target is an exact
        // mixture, so the kernel-space optimum is 0 with pullback (0.5, 0.5).
        let a = ProblemMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let gram = kernel_lasso_gram(&a, &[0.5, 0.5], &KernelSpec::Linear).unwrap();
        let cfg = SolverConfig {
            tol: 1e-10,
            ..Default::default()
        };
        let (report, pullback) = solve_kernel_lasso(&gram, &cfg);
        assert!(report.objective < 1e-12, "objective {}", report.objective);
        assert!((pullback.coords()[0] - 0.5).abs() < 1e-5);
        assert!((pullback.coords()[1] - 0.5).abs() < 1e-5);
    }

    #[test]
    fn solve_on_identity_gram() {
        // A 2×2 identity gram corresponds to n = 1 with two orthonormal
        // mirrored atoms; the uniform point is optimal with value 0.5.
        let gram = KernelLassoGram::new(vec![1.0, 0.0, 0.0, 1.0], 1).unwrap();
        let (report, _) = solve_kernel_lasso(&gram, &SolverConfig::default());
        assert!((report.objective - 0.5).abs() < 1e-7);
    }

    #[test]
    fn objective_matches_quadratic_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let inst = synth::random_lasso(&mut rng, 3, 4, 1.0);
        let gram =
            kernel_lasso_gram(inst.matrix(), inst.rhs(), &KernelSpec::Rbf { gamma: 0.5 }).unwrap();
        let (report, _) = solve_kernel_lasso(&gram, &SolverConfig::default());
        let x = report.solution.coords();
        let m = gram.dim();
        let mut quad = 0.0;
        for u in 0..m {
            for v in 0..m {
                quad += x[u] * gram.get(u, v) * x[v];
            }
        }
        assert!((report.objective - quad).abs() <= 1e-12);
    }

    #[test]
    fn precomputed_matches_builtin_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let inst = synth::random_lasso(&mut rng, 3, 4, 1.0);
        let (a, b) = (inst.matrix(), inst.rhs());
        let n = a.cols();
        let p = n + 1;
        let mut values = vec![0.0; p * p];
        let point = |i: usize| -> Vec<f64> {
            if i < n {
                a.col(i).to_vec()
            } else {
                b.to_vec()
            }
        };
        for i in 0..p {
            for j in 0..p {
                values[i * p + j] = linalg::dot(&point(i), &point(j));
            }
        }
        let pk = PointKernelMatrix::new(values, p).unwrap();
        let via_pre = kernel_lasso_gram(a, b, &KernelSpec::Precomputed(pk)).unwrap();
        let via_lin = kernel_lasso_gram(a, b, &KernelSpec::Linear).unwrap();
        for u in 0..via_pre.dim() {
            for v in 0..via_pre.dim() {
                assert!((via_pre.get(u, v) - via_lin.get(u, v)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn invalid_kernel_matrices_are_rejected() {
        // Asymmetric.
        assert!(PointKernelMatrix::new(vec![1.0, 0.5, 0.0, 1.0], 2).is_err());
        // Symmetric but indefinite: assembling yields a negative diagonal.
        let pk = PointKernelMatrix::new(vec![1.0, 2.0, 2.0, 1.0], 2).unwrap();
        let a = ProblemMatrix::from_columns(&[vec![1.0]]).unwrap();
        let err = kernel_lasso_gram(&a, &[0.0], &KernelSpec::Precomputed(pk));
        assert!(matches!(err, Err(Error::InvalidKernel(_))));
        // Wrong point count.
        let pk = PointKernelMatrix::new(vec![1.0], 1).unwrap();
        assert!(kernel_lasso_gram(&a, &[0.0], &KernelSpec::Precomputed(pk)).is_err());
    }
}
