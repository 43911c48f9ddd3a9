//! Seeded random instance and point generators shared by tests, the
//! verification harness, and the benchmark command.
//!
//! All generators draw from a caller-supplied RNG so that every consumer
//! controls determinism through a single seed.

use rand::Rng;

use crate::matrix::ProblemMatrix;
use crate::problem::{L1Vector, LassoInstance, SimplexVector, SvmInstance, SvmOrigin};
use crate::reduction::LabeledData;

/// Matrix with entries uniform in `[-scale, scale]`.
pub fn random_matrix(rng: &mut impl Rng, d: usize, n: usize, scale: f64) -> ProblemMatrix {
    let data: Vec<f64> = (0..d * n).map(|_| rng.gen_range(-scale..=scale)).collect();
    ProblemMatrix::from_col_major(d, n, data).expect("sizes are consistent by construction")
}

/// Margin-form instance with uniform entries.
pub fn random_svm(rng: &mut impl Rng, d: usize, n: usize, scale: f64) -> SvmInstance {
    SvmInstance::new(random_matrix(rng, d, n, scale), SvmOrigin::Raw)
        .expect("generated matrix is finite and nonempty")
}

/// Regression-form instance with uniform entries and rhs, radius 1.
pub fn random_lasso(rng: &mut impl Rng, d: usize, n: usize, scale: f64) -> LassoInstance {
    let m = random_matrix(rng, d, n, scale);
    let b: Vec<f64> = (0..d).map(|_| rng.gen_range(-scale..=scale)).collect();
    LassoInstance::new(m, b, 1.0).expect("generated instance is well formed")
}

/// Uniform point of the probability simplex (flat Dirichlet via exponential
/// spacings).
pub fn random_simplex(rng: &mut impl Rng, n: usize) -> SimplexVector {
    let mut coords: Vec<f64> = (0..n)
        .map(|_| -f64::ln(1.0 - rng.gen::<f64>()))
        .collect();
    let sum: f64 = coords.iter().sum();
    if sum <= 0.0 {
        return SimplexVector::vertex(n, 0);
    }
    coords.iter_mut().for_each(|v| *v /= sum);
    // Rounding in the normalization can leave the sum one ulp off; nudge the
    // largest coordinate so validation at the tight default tolerance holds.
    let drift: f64 = 1.0 - coords.iter().sum::<f64>();
    let imax = (0..n).fold(0, |a, i| if coords[i] > coords[a] { i } else { a });
    coords[imax] += drift;
    SimplexVector::new(coords).expect("normalized point lies on the simplex")
}

/// Random point of the unit l1-ball: a simplex point with random signs,
/// shrunk by a uniform factor.
pub fn random_l1(rng: &mut impl Rng, n: usize) -> L1Vector {
    let shrink = rng.gen::<f64>();
    let base = random_simplex(rng, n);
    let coords: Vec<f64> = base
        .coords()
        .iter()
        .map(|&v| if rng.gen::<bool>() { v * shrink } else { -v * shrink })
        .collect();
    L1Vector::new(coords).expect("shrunk signed simplex point is feasible")
}

/// Random point of the filled simplex (nonnegative, total mass ≤ 1).
pub fn random_filled_simplex(rng: &mut impl Rng, n: usize) -> L1Vector {
    let shrink = rng.gen::<f64>();
    let base = random_simplex(rng, n);
    let coords: Vec<f64> = base.coords().iter().map(|&v| v * shrink).collect();
    L1Vector::new(coords).expect("shrunk simplex point is feasible")
}

/// Labeled two-class data with uniform features and balanced-ish random
/// labels.
pub fn random_labeled(rng: &mut impl Rng, d: usize, n: usize, c: f64) -> LabeledData {
    let points = random_matrix(rng, d, n, 1.0);
    let labels: Vec<f64> = (0..n)
        .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
        .collect();
    LabeledData::new(points, labels, c).expect("generated labels are valid")
}
