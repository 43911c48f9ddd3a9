//! Entry-oracle access to reduced instances and a randomized margin solver
//! that reads only a sublinear number of matrix entries.
//!
//! The oracle serves single entries of the mirrored translated matrix
//! `(A | −A) − b·1ᵀ` on demand — the matrix is never materialized — and
//! counts every query through an atomic counter.
//!
//! The solver runs a sampled primal-dual scheme: a multiplicative-weights
//! distribution over columns is steered by importance-weighted single-entry
//! estimates of each column's margin, while the direction accumulator is
//! grown by single sampled entries of the currently-favored columns.  Each
//! iteration queries exactly two entries (one per side).  Runs are repeated
//! a few times with independent streams and the best candidate is kept; the
//! final exact margin check costs one full pass per repetition and is
//! counted separately so the sampled-loop counter stays meaningful.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::linalg;
use crate::matrix::ProblemMatrix;
use crate::problem::{LassoInstance, SvmInstance};
use crate::solver::SolverConfig;

/// Amplification repetitions (independent random streams; best kept).
const REPETITIONS: u64 = 5;
/// Lower bound on sampled iterations per repetition.
const MIN_ITERS: usize = 300;
/// Sampled iterations scale as `(n_eff + d) / (ITER_DIVISOR · ε²)`.
const ITER_DIVISOR: f64 = 10.0;
/// Fraction of uniform exploration mixed into the dual column sampling.
const EXPLORE_MIX: f64 = 0.5;

enum OracleSource {
    /// Entry `(i, j)` is `A[i, j] − b[i]` for `j < n`, `−A[i, j−n] − b[i]`
    /// otherwise.
    ReducedLasso { a: ProblemMatrix, b: Vec<f64> },
    /// Entries of a margin-form matrix, read directly.
    Direct { a: ProblemMatrix },
}

/// On-demand single-entry access with query counting.
pub struct EntryOracle {
    d: usize,
    n_eff: usize,
    source: OracleSource,
    counter: AtomicU64,
}

impl EntryOracle {
    /// `(rows, effective columns)` of the implicit matrix.
    pub fn dims(&self) -> (usize, usize) {
        (self.d, self.n_eff)
    }

    /// Total entries served so far.
    pub fn queried(&self) -> u64 {
        self.counter.load(Ordering::Relaxed)
    }

    /// Entry `(i, j)` of the implicit matrix.  Panics on out-of-range
    /// indices.
    pub fn query(&self, i: usize, j: usize) -> f64 {
        assert!(
            i < self.d && j < self.n_eff,
            "entry ({i}, {j}) out of range for {}x{}",
            self.d,
            self.n_eff
        );
        self.counter.fetch_add(1, Ordering::Relaxed);
        match &self.source {
            OracleSource::ReducedLasso { a, b } => {
                let n = a.cols();
                if j < n {
                    a.get(i, j) - b[i]
                } else {
                    -a.get(i, j - n) - b[i]
                }
            }
            OracleSource::Direct { a } => a.get(i, j),
        }
    }

    /// Read every entry into a dense matrix (all queries counted); test and
    /// verification helper.
    pub fn materialize(&self) -> ProblemMatrix {
        let mut m = ProblemMatrix::zeros(self.d, self.n_eff);
        for j in 0..self.n_eff {
            for i in 0..self.d {
                m.set(i, j, self.query(i, j));
            }
        }
        m
    }

    /// Oracle over a margin-form matrix as-is (no mirroring, no target).
    pub fn from_svm(inst: &SvmInstance) -> Self {
        Self {
            d: inst.d(),
            n_eff: inst.n(),
            source: OracleSource::Direct {
                a: inst.matrix().clone(),
            },
            counter: AtomicU64::new(0),
        }
    }
}

/// Oracle over the mirrored translated matrix of a radius-1 regression
/// instance: `2n` effective columns, never materialized.
pub fn make_entry_oracle(inst: &LassoInstance) -> Result<EntryOracle, Error> {
    if inst.radius() != 1.0 {
        return Err(Error::InvalidArgument(format!(
            "radius must be normalized to 1 before building an oracle (got {})",
            inst.radius()
        )));
    }
    Ok(EntryOracle {
        d: inst.d(),
        n_eff: 2 * inst.n(),
        source: OracleSource::ReducedLasso {
            a: inst.matrix().clone(),
            b: inst.rhs().to_vec(),
        },
        counter: AtomicU64::new(0),
    })
}

/// Outcome of a sampled solve: candidate direction, its exactly-verified
/// margin, and the query accounting.
#[derive(Debug, Clone)]
pub struct SublinearReport {
    pub direction: Vec<f64>,
    /// Exact margin of `direction`, measured by the verification pass.
    pub margin_estimate: f64,
    /// Entries queried inside the sampled loops (all repetitions).
    pub entries_queried: u64,
    /// Entries spent on the final full-pass margin checks, kept separate so
    /// the sampled counter stays meaningful.
    pub verification_entries: u64,
    pub epsilon: f64,
    pub seed: u64,
}

/// Draw an index proportionally to the (nonnegative) weights.
fn sample_weighted(rng: &mut ChaCha8Rng, weights: &[f64], total: f64) -> usize {
    let mut t = rng.gen::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        t -= w;
        if t <= 0.0 {
            return i;
        }
    }
    weights.len() - 1
}

/// Approximately solve the margin problem of the oracle's implicit matrix,
/// reading two sampled entries per iteration.  With a handful of
/// repetitions the returned direction's margin is usually within `epsilon`
/// of the best achievable; accuracy is a statistical, per-seed property.
pub fn solve_sublinear(
    oracle: &EntryOracle,
    epsilon: f64,
    cfg: &SolverConfig,
) -> Result<SublinearReport, Error> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let (d, n_eff) = oracle.dims();
    let iters = MIN_ITERS.max(
        (((n_eff + d) as f64) / (ITER_DIVISOR * epsilon * epsilon)).ceil() as usize,
    );
    let eta = ((n_eff.max(2) as f64).ln() / (n_eff as f64 * iters as f64)).sqrt();

    let mut best_dir: Option<Vec<f64>> = None;
    let mut best_margin = f64::NEG_INFINITY;
    let mut sampled_entries = 0u64;
    let mut verify_entries = 0u64;

    for rep in 0..REPETITIONS {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(rep);
        let before = oracle.queried();

        // Multiplicative weights over columns (the adversarial side that
        // concentrates on the hardest-to-separate columns).
        let mut mw = vec![1.0; n_eff];
        let mut mw_total = n_eff as f64;
        // Direction accumulator and its squared entries for l2 sampling.
        let mut u = vec![0.0; d];
        let mut u_sq = vec![0.0; d];
        let mut u_sumsq = 0.0;
        // Running scale of sampled entries, used to normalize estimates.
        let mut sq_acc = 0.0;
        let mut sq_cnt = 0u64;

        for it in 0..iters {
            // Primal side: grow u by one sampled entry of a column drawn
            // from the current adversarial distribution.
            let j_p = sample_weighted(&mut rng, &mw, mw_total);
            let r_p = rng.gen_range(0..d);
            let e = oracle.query(r_p, j_p);
            sq_acc += e * e;
            sq_cnt += 1;
            u_sumsq -= u_sq[r_p];
            u[r_p] += e;
            u_sq[r_p] = u[r_p] * u[r_p];
            u_sumsq += u_sq[r_p];

            // Dual side: estimate one column's margin along u from a single
            // l2-sampled entry and update its weight (importance-weighted).
            if u_sumsq > 0.0 {
                let explore = rng.gen::<f64>() < EXPLORE_MIX;
                let j_d = if explore {
                    rng.gen_range(0..n_eff)
                } else {
                    sample_weighted(&mut rng, &mw, mw_total)
                };
                let q = EXPLORE_MIX / n_eff as f64
                    + (1.0 - EXPLORE_MIX) * mw[j_d] / mw_total;
                let r_d = sample_weighted(&mut rng, &u_sq, u_sumsq);
                let e2 = oracle.query(r_d, j_d);
                // Unbiased estimate of column_j · u / ‖u‖.
                let est = e2 * u_sumsq / u[r_d] / u_sumsq.sqrt();
                let scale = (d as f64 * sq_acc / sq_cnt as f64).sqrt().max(1e-12);
                let z = (est / scale / q).clamp(-1.0 / eta, 1.0 / eta);
                let old = mw[j_d];
                mw[j_d] = old * (-eta * z).exp();
                mw_total += mw[j_d] - old;
            }

            // Periodic renormalization keeps the weights inside the
            // representable range and purges drift in the running total.
            if it % 1024 == 1023 {
                mw_total = linalg::compensated_sum(mw.iter().copied());
                if !(1e-100..=1e100).contains(&mw_total) {
                    let inv = 1.0 / mw_total;
                    mw.iter_mut().for_each(|w| *w *= inv);
                    mw_total = 1.0;
                }
                u_sumsq = linalg::compensated_sum(u_sq.iter().copied());
            }
        }
        sampled_entries += oracle.queried() - before;

        // Candidate direction, then an exact margin check (full pass,
        // counted separately).
        let norm = linalg::norm2(&u);
        let w: Vec<f64> = if norm > 0.0 {
            u.iter().map(|v| v / norm).collect()
        } else {
            let mut fallback = vec![0.0; d];
            fallback[0] = 1.0;
            fallback
        };
        let check_before = oracle.queried();
        let mut margin = f64::INFINITY;
        for j in 0..n_eff {
            let score = linalg::compensated_sum((0..d).map(|i| oracle.query(i, j) * w[i]));
            margin = margin.min(score);
        }
        verify_entries += oracle.queried() - check_before;
        if margin > best_margin {
            best_margin = margin;
            best_dir = Some(w);
        }
    }

    Ok(SublinearReport {
        direction: best_dir.unwrap_or_else(|| vec![0.0; d]),
        margin_estimate: best_margin,
        entries_queried: sampled_entries,
        verification_entries: verify_entries,
        epsilon,
        seed: cfg.seed,
    })
}
