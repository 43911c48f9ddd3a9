//! Small dense linear-algebra helpers: compensated sums, inner products,
//! power iteration, and a Jacobi eigensolver for symmetric matrices.
//!
//! Inner products and squared norms use Neumaier's compensated summation so
//! that objective values computed through different algebraic routes agree to
//! near machine precision even on badly scaled data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sum of `values` using Neumaier's compensated summation.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Inner product `x . y` with compensated accumulation.
pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    compensated_sum(x.iter().zip(y).map(|(a, b)| a * b))
}

/// Squared Euclidean norm with compensated accumulation.
pub fn sumsq(x: &[f64]) -> f64 {
    compensated_sum(x.iter().map(|a| a * a))
}

/// Euclidean norm.
pub fn norm2(x: &[f64]) -> f64 {
    sumsq(x).sqrt()
}

/// Sum of absolute values.
pub fn norm1(x: &[f64]) -> f64 {
    compensated_sum(x.iter().map(|a| a.abs()))
}

/// `y += alpha * x`, in place.
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Largest eigenvalue of a symmetric positive-semidefinite operator given
/// through its matrix-vector product, estimated by power iteration from a
/// seeded random start.  Returns the Rayleigh quotient of the final iterate.
pub fn power_iteration(
    dim: usize,
    iters: usize,
    seed: u64,
    mut apply: impl FnMut(&[f64], &mut [f64]),
) -> f64 {
    if dim == 0 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let n = norm2(&v);
    if n == 0.0 {
        v[0] = 1.0;
    } else {
        v.iter_mut().for_each(|x| *x /= n);
    }
    let mut w = vec![0.0; dim];
    let mut lambda = 0.0;
    for _ in 0..iters {
        apply(&v, &mut w);
        lambda = dot(&v, &w);
        let wn = norm2(&w);
        if wn <= f64::MIN_POSITIVE {
            // Operator annihilated the iterate; the estimate so far stands.
            break;
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / wn;
        }
    }
    lambda
}

/// Eigenvalues of a symmetric `m x m` matrix (row-major, only symmetry is
/// assumed), computed by the cyclic Jacobi method.  The result is sorted
/// ascending.
pub fn symmetric_eigenvalues(a: &[f64], m: usize) -> Vec<f64> {
    assert_eq!(a.len(), m * m, "matrix buffer must be m*m");
    let mut w = a.to_vec();
    // Symmetrize defensively so tiny representation asymmetries cannot stall
    // the sweeps.
    for i in 0..m {
        for j in (i + 1)..m {
            let avg = 0.5 * (w[i * m + j] + w[j * m + i]);
            w[i * m + j] = avg;
            w[j * m + i] = avg;
        }
    }
    let frob = sumsq(&w).sqrt().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..m {
            for j in (i + 1)..m {
                off += w[i * m + j] * w[i * m + j];
            }
        }
        if (2.0 * off).sqrt() <= 1e-14 * frob {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = w[p * m + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = w[p * m + p];
                let aqq = w[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = w[k * m + p];
                    let akq = w[k * m + q];
                    w[k * m + p] = c * akp - s * akq;
                    w[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = w[p * m + k];
                    let aqk = w[q * m + k];
                    w[p * m + k] = c * apk - s * aqk;
                    w[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..m).map(|i| w[i * m + i]).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancellation() {
        // 1 + 1e16 - 1e16 collapses to 0 under naive left-to-right addition.
        let vals = [1.0, 1e16, -1e16];
        assert_eq!(compensated_sum(vals), 1.0);
    }

    #[test]
    fn dot_matches_naive_on_small_input() {
        let x = [1.0, 2.0, 3.0];
        let y = [4.0, -5.0, 6.0];
        assert_eq!(dot(&x, &y), 4.0 - 10.0 + 18.0);
    }

    #[test]
    fn sumsq_and_norms() {
        let x = [3.0, -4.0];
        assert_eq!(sumsq(&x), 25.0);
        assert_eq!(norm2(&x), 5.0);
        assert_eq!(norm1(&x), 7.0);
    }

    #[test]
    fn power_iteration_finds_dominant_eigenvalue() {
        // Diagonal operator with spectrum {1, 2, 3}.
        let lam = power_iteration(3, 50, 0, |v, w| {
            w[0] = 1.0 * v[0];
            w[1] = 2.0 * v[1];
            w[2] = 3.0 * v[2];
        });
        assert!((lam - 3.0).abs() < 1e-9, "lambda = {lam}");
    }

    #[test]
    fn jacobi_eigenvalues_of_known_matrix() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let a = [2.0, 1.0, 1.0, 2.0];
        let eig = symmetric_eigenvalues(&a, 2);
        assert!((eig[0] - 1.0).abs() < 1e-12);
        assert!((eig[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_handles_diagonal_and_empty() {
        let a = [5.0, 0.0, 0.0, -2.0];
        let eig = symmetric_eigenvalues(&a, 2);
        assert_eq!(eig, vec![-2.0, 5.0]);
        assert!(symmetric_eigenvalues(&[], 0).is_empty());
    }

    #[test]
    fn jacobi_trace_is_preserved() {
        // Random-ish symmetric 4x4; eigenvalue sum must equal the trace.
        let a = [
            4.0, 1.0, -2.0, 0.5, //
            1.0, 3.0, 0.0, 1.5, //
            -2.0, 0.0, 1.0, -1.0, //
            0.5, 1.5, -1.0, 2.0,
        ];
        let eig = symmetric_eigenvalues(&a, 4);
        let trace = 4.0 + 3.0 + 1.0 + 2.0;
        assert!((eig.iter().sum::<f64>() - trace).abs() < 1e-10);
    }
}
