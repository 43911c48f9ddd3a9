//! One function per subcommand.  Each returns the process exit code on
//! success; hard failures (unreadable input, infeasible construction)
//! surface as `CliError` and are mapped to exit codes in `main`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lassvm::kernel::{kernel_lasso_gram, solve_kernel_lasso};
use lassvm::reduction::ReductionKind;
use lassvm::screening;
use lassvm::sublinear::{make_entry_oracle, solve_sublinear as run_sublinear, EntryOracle};
use lassvm::{
    augment_offset, barycentric_expand, estimate_big_d, lasso_objective, lasso_to_svm, margin,
    normalize_radius, perceptron, soft_margin_dual, solve_lasso_pg, solve_svm_fw, svm_objective,
    svm_to_lasso, trivial_separator, LassoInstance, SeparatorReport, SolveReport,
    SolverConfig, Solution, SvmInstance, SvmOrigin, linalg, synth,
};

use crate::io;
use crate::report::Report;
use crate::{
    BenchArgs, CliError, DirectionArg, KernelLassoArgs, ReduceArgs, ScreenLassoArgs,
    ScreenSvmArgs, SolveLassoArgs, SolveSvmArgs, SolveSvmDualArgs, SolverArgs, StepRuleArg,
    SublinearArgs, VerifyArgs, VerifyDirectionArg, EXIT_NO_CONVERGENCE, EXIT_OK,
    EXIT_VERIFICATION,
};

/// Library errors raised while building instances from files are input
/// problems from the user's point of view.
fn input(e: lassvm::Error) -> CliError {
    CliError::Input(e.to_string())
}

fn solver_header(report: &mut Report, args: &SolverArgs) {
    report.float("tol", args.tol);
    report.int("max_iter", args.max_iter as u64);
    report.int("seed", args.seed);
    report.str(
        "step_rule",
        match args.step_rule {
            StepRuleArg::ExactLineSearch => "exact-line-search",
            StepRuleArg::Harmonic => "harmonic",
        },
    );
}

fn push_solve_outcome(report: &mut Report, rep: &SolveReport) {
    report.float("objective", rep.objective);
    report.float("gap", rep.gap);
    report.int("iterations", rep.iterations as u64);
    report.bool("converged", rep.converged);
}

fn exit_for(rep: &SolveReport) -> u8 {
    if rep.converged {
        EXIT_OK
    } else {
        EXIT_NO_CONVERGENCE
    }
}

pub fn solve_lasso(args: SolveLassoArgs) -> Result<u8, CliError> {
    let mut report = Report::new("solve-lasso");
    report.str("matrix", &args.matrix.display().to_string());
    report.str("rhs", &args.rhs.display().to_string());
    report.float("radius", args.radius);
    solver_header(&mut report, &args.solver);

    let matrix = io::read_matrix_csv(&args.matrix)?;
    let rhs = io::read_vector(&args.rhs)?;
    let inst = LassoInstance::new(matrix, rhs, args.radius).map_err(input)?;
    let normalized = normalize_radius(&inst);
    let full_n = normalized.n();
    report.int("rows", normalized.d() as u64);
    report.int("cols", full_n as u64);

    let cfg = args.solver.to_config();
    let kept: Option<Vec<usize>> = match &args.only_kept {
        Some(path) => Some(io::read_kept_indices(path)?),
        None => None,
    };
    let rep = match &kept {
        Some(kept_idx) => {
            let restricted = LassoInstance::new(
                normalized.matrix().keep_columns(kept_idx).map_err(input)?,
                normalized.rhs().to_vec(),
                1.0,
            )
            .map_err(input)?;
            solve_lasso_pg(&restricted, &cfg)?
        }
        None => solve_lasso_pg(&normalized, &cfg)?,
    };

    let coords = rep.solution.coords();
    let mut full = vec![0.0; full_n];
    match &kept {
        Some(kept_idx) => {
            for (slot, &j) in kept_idx.iter().enumerate() {
                full[j] = coords[slot];
            }
        }
        None => full.copy_from_slice(coords),
    }
    // Report the point in the caller's coordinates: the unit-ball solve
    // used the substitution x = radius * u.
    for v in full.iter_mut() {
        *v *= args.radius;
    }

    if let Some(kept_idx) = &kept {
        report.index_list("kept", kept_idx);
    }
    push_solve_outcome(&mut report, &rep);
    report.sparse_vector("solution", &full);
    report.finish(args.out.as_deref())?;
    Ok(exit_for(&rep))
}

pub fn solve_svm(args: SolveSvmArgs) -> Result<u8, CliError> {
    let mut report = Report::new("solve-svm");
    report.str("matrix", &args.matrix.display().to_string());
    solver_header(&mut report, &args.solver);

    let matrix = io::read_matrix_csv(&args.matrix)?;
    let inst = SvmInstance::new(matrix, SvmOrigin::Raw).map_err(input)?;
    let full_n = inst.n();
    report.int("rows", inst.d() as u64);
    report.int("cols", full_n as u64);

    let cfg = args.solver.to_config();
    let kept: Option<Vec<usize>> = match &args.only_kept {
        Some(path) => Some(io::read_kept_indices(path)?),
        None => None,
    };
    let (rep, solved_inst) = match &kept {
        Some(kept_idx) => {
            let restricted = SvmInstance::new(
                inst.matrix().keep_columns(kept_idx).map_err(input)?,
                SvmOrigin::Raw,
            )
            .map_err(input)?;
            (solve_svm_fw(&restricted, &cfg), restricted)
        }
        None => {
            let rep = solve_svm_fw(&inst, &cfg);
            (rep, inst)
        }
    };

    let coords = rep.solution.coords();
    let mut full = vec![0.0; full_n];
    match &kept {
        Some(kept_idx) => {
            for (slot, &j) in kept_idx.iter().enumerate() {
                full[j] = coords[slot];
            }
        }
        None => full.copy_from_slice(coords),
    }

    if let Some(kept_idx) = &kept {
        report.index_list("kept", kept_idx);
    }
    push_solve_outcome(&mut report, &rep);
    report.float("attained_norm", rep.objective.max(0.0).sqrt());
    let z = solved_inst.matrix().matvec(coords);
    if linalg::norm2(&z) > 0.0 {
        let sep = margin(&solved_inst, &z).map_err(input)?;
        report.float("attained_margin", sep.margin);
    }
    report.sparse_vector("solution", &full);
    report.finish(args.out.as_deref())?;
    Ok(exit_for(&rep))
}

pub fn solve_svm_dual(args: SolveSvmDualArgs) -> Result<u8, CliError> {
    let mut report = Report::new("solve-svm-dual");
    report.str("data", &args.data.display().to_string());
    report.float("c", args.c);
    if let Some(t) = args.offset_scale {
        report.float("offset_scale", t);
    }
    solver_header(&mut report, &args.solver);

    let base = io::read_labeled(&args.data, args.c)?;
    let data = match args.offset_scale {
        Some(t) => augment_offset(&base, t).map_err(input)?,
        None => base,
    };
    let inst = soft_margin_dual(&data);
    report.int("points", data.n() as u64);
    report.int("features", data.d() as u64);

    let cfg = args.solver.to_config();
    let rep = solve_svm_fw(&inst, &cfg);
    let alpha = rep.solution.coords();

    // Rebuild the primal separator from the dual point: weights from the
    // label-scaled points, slacks from the dual coordinates.
    let d = data.d();
    let n = data.n();
    let c = data.c();
    let mut weights = vec![0.0; d];
    for j in 0..n {
        let col = inst.matrix().col(j);
        for i in 0..d {
            weights[i] += alpha[j] * col[i];
        }
    }
    let xi: Vec<f64> = alpha.iter().map(|a| a / c).collect();
    let mut rho = f64::INFINITY;
    for j in 0..n {
        let zj = &inst.matrix().col(j)[..d];
        rho = rho.min(linalg::dot(&weights, zj) + xi[j]);
    }
    let primal_value = 0.5 * linalg::sumsq(&weights) + 0.5 * c * linalg::sumsq(&xi) - rho;
    let duality_residual = (primal_value + 0.5 * rep.objective).abs();

    push_solve_outcome(&mut report, &rep);
    report.str("dual_objective", &io::fmt_float(rep.objective));
    report.float("primal_value", primal_value);
    report.float("strong_duality_residual", duality_residual);
    report.float("rho", rho);
    let trivial = trivial_separator(n, c, d).map_err(input)?;
    report.float("trivial_margin", trivial.margin);
    let z = inst.matrix().matvec(alpha);
    if linalg::norm2(&z) > 0.0 {
        let sep = margin(&inst, &z).map_err(input)?;
        report.float("attained_margin", sep.margin);
    }
    report.sparse_vector("alpha", alpha);
    report.sparse_vector("weights", &weights);
    report.sparse_vector("slacks", &xi);
    report.finish(args.out.as_deref())?;
    Ok(exit_for(&rep))
}

pub fn reduce(args: ReduceArgs) -> Result<u8, CliError> {
    let mut report = Report::new("reduce");
    report.str("matrix", &args.matrix.display().to_string());
    let matrix = io::read_matrix_csv(&args.matrix)?;

    match args.direction {
        DirectionArg::LassoToSvm => {
            report.str("direction", "lasso-to-svm");
            let rhs_path = args.rhs.as_ref().ok_or_else(|| {
                CliError::Input("--rhs is required for --direction lasso-to-svm".into())
            })?;
            report.str("rhs", &rhs_path.display().to_string());
            report.float("radius", args.radius);
            let rhs = io::read_vector(rhs_path)?;
            let inst = LassoInstance::new(matrix, rhs, args.radius).map_err(input)?;
            let normalized = normalize_radius(&inst);
            let (svm, meta) = lasso_to_svm(&normalized)?;
            io::write_matrix_csv(&args.out_matrix, svm.matrix())?;
            report.str("out_matrix", &args.out_matrix.display().to_string());
            report.int("source_cols", meta.source_n as u64);
            report.int("rows", svm.d() as u64);
            report.int("cols", svm.n() as u64);
        }
        DirectionArg::SvmToLasso => {
            report.str("direction", "svm-to-lasso");
            let inst = SvmInstance::new(matrix, SvmOrigin::Raw).map_err(input)?;
            let cfg = args.solver.to_config();
            let sep = match &args.separator {
                Some(path) => {
                    report.str("separator", &path.display().to_string());
                    let w = io::read_vector(path)?;
                    margin(&inst, &w).map_err(input)?
                }
                None => perceptron(&inst, &cfg),
            };
            let big_d = match args.big_d {
                Some(v) => v,
                None => estimate_big_d(&inst, 0.01).map_err(input)?,
            };
            let (lasso, meta) = svm_to_lasso(&inst, &sep, big_d)?;
            let out_rhs = args.out_rhs.as_ref().ok_or_else(|| {
                CliError::Input("--out-rhs is required for --direction svm-to-lasso".into())
            })?;
            io::write_matrix_csv(&args.out_matrix, lasso.matrix())?;
            io::write_vector(out_rhs, lasso.rhs())?;
            report.str("out_matrix", &args.out_matrix.display().to_string());
            report.str("out_rhs", &out_rhs.display().to_string());
            report.float("separator_margin", meta.sigma.unwrap_or(sep.margin));
            report.float("big_d", meta.big_d.unwrap_or(big_d));
            report.int("source_cols", meta.source_n as u64);
            report.int("rows", lasso.d() as u64);
            report.int("cols", lasso.n() as u64);
            report.float("out_radius", lasso.radius());
            debug_assert_eq!(meta.kind, ReductionKind::SvmToLasso);
        }
    }
    report.finish(args.out.as_deref())?;
    Ok(EXIT_OK)
}

/// Objective difference and worst pointwise-objective difference for one
/// regression instance pushed through the simplex construction.
fn verify_l2s_instance(
    inst: &LassoInstance,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(f64, f64), CliError> {
    let normalized = normalize_radius(inst);
    let pg = solve_lasso_pg(&normalized, cfg)?;
    let (svm, _meta) = lasso_to_svm(&normalized)?;
    let fw = solve_svm_fw(&svm, cfg);
    let delta = (pg.objective - fw.objective).abs();
    let mut max_pw = 0.0f64;
    for _ in 0..5 {
        let x = synth::random_l1(rng, normalized.n());
        let expanded = barycentric_expand(&x);
        let lo = lasso_objective(&normalized, &x).map_err(input)?;
        let so = svm_objective(&svm, &expanded).map_err(input)?;
        max_pw = max_pw.max((lo - so).abs());
    }
    Ok((delta, max_pw))
}

/// Objective difference and simplex-membership violation of the regression
/// optimizer for one margin instance pushed through the ball construction.
fn verify_s2l_instance(
    svm: &SvmInstance,
    sep: &SeparatorReport,
    cfg: &SolverConfig,
) -> Result<(f64, f64), CliError> {
    let big_d = estimate_big_d(svm, 0.01).map_err(input)?;
    let (lasso, _meta) = svm_to_lasso(svm, sep, big_d)?;
    let fw = solve_svm_fw(svm, cfg);
    let pg = solve_lasso_pg(&lasso, cfg)?;
    let delta = (fw.objective - pg.objective).abs();
    let x = pg.solution.coords();
    let worst_neg = x.iter().fold(0.0f64, |m, &v| m.max(-v));
    let mass = linalg::compensated_sum(x.iter().copied());
    let violation = worst_neg.max((mass - 1.0).abs());
    Ok((delta, violation))
}

pub fn verify_equivalence(args: VerifyArgs) -> Result<u8, CliError> {
    let mut report = Report::new("verify-equivalence");
    report.str(
        "direction",
        match args.direction {
            VerifyDirectionArg::LassoToSvm => "lasso-to-svm",
            VerifyDirectionArg::SvmToLasso => "svm-to-lasso",
            VerifyDirectionArg::Both => "both",
        },
    );
    solver_header(&mut report, &args.solver);

    // Verification solves run at least this tight so that solver error
    // stays well below the pass thresholds.
    let mut cfg = args.solver.to_config();
    cfg.tol = cfg.tol.min(1e-9);
    report.float("solve_tol", cfg.tol);

    let single = args.matrix.is_some();
    report.int("count", if single { 1 } else { args.count as u64 });
    let mut all_ok = true;

    let do_l2s = matches!(
        args.direction,
        VerifyDirectionArg::LassoToSvm | VerifyDirectionArg::Both
    );
    let do_s2l = matches!(
        args.direction,
        VerifyDirectionArg::SvmToLasso | VerifyDirectionArg::Both
    );

    if do_l2s {
        let threshold = args.threshold.unwrap_or(1e-7);
        let pointwise_threshold = 1e-12;
        let mut max_delta = 0.0f64;
        let mut max_pw = 0.0f64;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        if let Some(matrix_path) = &args.matrix {
            let rhs_path = args.rhs.as_ref().ok_or_else(|| {
                CliError::Input("--rhs is required with --matrix for lasso-to-svm".into())
            })?;
            let inst = LassoInstance::new(
                io::read_matrix_csv(matrix_path)?,
                io::read_vector(rhs_path)?,
                args.radius,
            )
            .map_err(input)?;
            let (delta, pw) = verify_l2s_instance(&inst, &cfg, &mut rng)?;
            max_delta = delta;
            max_pw = pw;
        } else {
            for _ in 0..args.count {
                let rows = rng.gen_range(2..=args.max_rows.max(2));
                let cols = rng.gen_range(2..=args.max_cols.max(2));
                let inst = synth::random_lasso(&mut rng, rows, cols, 1.0);
                let (delta, pw) = verify_l2s_instance(&inst, &cfg, &mut rng)?;
                max_delta = max_delta.max(delta);
                max_pw = max_pw.max(pw);
            }
        }
        let ok = max_delta <= threshold && max_pw <= pointwise_threshold;
        report.float("lasso_to_svm_max_objective_delta", max_delta);
        report.float("lasso_to_svm_max_pointwise_delta", max_pw);
        report.float("lasso_to_svm_threshold", threshold);
        report.bool("lasso_to_svm_ok", ok);
        all_ok &= ok;
    }

    if do_s2l {
        let threshold = args.threshold.unwrap_or(1e-6);
        let membership_threshold = 1e-8;
        let mut max_delta = 0.0f64;
        let mut max_violation = 0.0f64;
        if let Some(matrix_path) = &args.matrix {
            let svm =
                SvmInstance::new(io::read_matrix_csv(matrix_path)?, SvmOrigin::Raw).map_err(input)?;
            let sep = perceptron(&svm, &cfg);
            if sep.margin <= 0.0 {
                return Err(CliError::Input(format!(
                    "columns are not strictly separated from the origin \
                     (best margin found: {}); the ball construction needs a \
                     positive margin",
                    sep.margin
                )));
            }
            let (delta, violation) = verify_s2l_instance(&svm, &sep, &cfg)?;
            max_delta = delta;
            max_violation = violation;
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
            let c_cycle = [0.1, 1.0, 10.0];
            for i in 0..args.count {
                let rows = rng.gen_range(2..=args.max_rows.max(2));
                let cols = rng.gen_range(2..=args.max_cols.max(2));
                let data = synth::random_labeled(&mut rng, rows, cols, c_cycle[i % 3]);
                let svm = soft_margin_dual(&data);
                let sep = trivial_separator(data.n(), data.c(), data.d()).map_err(input)?;
                let (delta, violation) = verify_s2l_instance(&svm, &sep, &cfg)?;
                max_delta = max_delta.max(delta);
                max_violation = max_violation.max(violation);
            }
        }
        let ok = max_delta <= threshold && max_violation <= membership_threshold;
        report.float("svm_to_lasso_max_objective_delta", max_delta);
        report.float("svm_to_lasso_max_membership_violation", max_violation);
        report.float("svm_to_lasso_threshold", threshold);
        report.bool("svm_to_lasso_ok", ok);
        all_ok &= ok;
    }

    report.bool("verified", all_ok);
    report.finish(args.out.as_deref())?;
    Ok(if all_ok { EXIT_OK } else { EXIT_VERIFICATION })
}

pub fn screen_lasso(args: ScreenLassoArgs) -> Result<u8, CliError> {
    let mut report = Report::new("screen-lasso");
    report.str("matrix", &args.matrix.display().to_string());
    report.str("rhs", &args.rhs.display().to_string());
    report.float("radius", args.radius);
    solver_header(&mut report, &args.solver);

    let inst = LassoInstance::new(
        io::read_matrix_csv(&args.matrix)?,
        io::read_vector(&args.rhs)?,
        args.radius,
    )
    .map_err(input)?;
    let normalized = normalize_radius(&inst);
    let cfg = args.solver.to_config();
    let rep = solve_lasso_pg(&normalized, &cfg)?;
    let x_ref = match &rep.solution {
        Solution::L1(v) => v.clone(),
        Solution::Simplex(_) => unreachable!("ball solves return ball points"),
    };
    let screen = screening::screen_lasso(&normalized, &x_ref, rep.gap)?;

    report.int("cols", normalized.n() as u64);
    report.bool("reference_converged", rep.converged);
    report.float("reference_objective", screen.reference_objective);
    report.float("suboptimality_bound", rep.gap);
    report.float("radius_used", screen.radius_used);
    report.int("kept_count", screen.kept.len() as u64);
    report.int("discarded_count", screen.discarded.len() as u64);
    report.index_list("kept", &screen.kept);
    report.index_list("discarded", &screen.discarded);
    report.finish(args.out.as_deref())?;
    Ok(EXIT_OK)
}

pub fn screen_svm(args: ScreenSvmArgs) -> Result<u8, CliError> {
    let mut report = Report::new("screen-svm");
    report.str("matrix", &args.matrix.display().to_string());
    solver_header(&mut report, &args.solver);

    let inst =
        SvmInstance::new(io::read_matrix_csv(&args.matrix)?, SvmOrigin::Raw).map_err(input)?;
    let cfg = args.solver.to_config();
    let rep = solve_svm_fw(&inst, &cfg);
    let x_ref = match &rep.solution {
        Solution::Simplex(v) => v.clone(),
        Solution::L1(_) => unreachable!("simplex solves return simplex points"),
    };
    // The certificate bounds the norm shortfall; the objective (squared
    // norm) is suboptimal by at most 2‖Ax‖ times that.
    let subopt = 2.0 * rep.objective.max(0.0).sqrt() * rep.gap;
    let screen = screening::screen_svm(&inst, &x_ref, subopt)?;

    report.int("cols", inst.n() as u64);
    report.bool("reference_converged", rep.converged);
    report.float("reference_objective", screen.reference_objective);
    report.float("suboptimality_bound", subopt);
    report.float("radius_used", screen.radius_used);
    report.int("kept_count", screen.kept.len() as u64);
    report.int("discarded_count", screen.discarded.len() as u64);
    report.index_list("kept", &screen.kept);
    report.index_list("discarded", &screen.discarded);
    report.finish(args.out.as_deref())?;
    Ok(EXIT_OK)
}

pub fn solve_sublinear(args: SublinearArgs) -> Result<u8, CliError> {
    let mut report = Report::new("solve-sublinear");
    report.str("matrix", &args.matrix.display().to_string());
    report.float("epsilon", args.epsilon);
    solver_header(&mut report, &args.solver);

    let matrix = io::read_matrix_csv(&args.matrix)?;
    let oracle: EntryOracle = if args.direct {
        report.bool("direct", true);
        EntryOracle::from_svm(&SvmInstance::new(matrix, SvmOrigin::Raw).map_err(input)?)
    } else {
        let rhs_path = args.rhs.as_ref().ok_or_else(|| {
            CliError::Input("--rhs is required unless --direct is given".into())
        })?;
        report.str("rhs", &rhs_path.display().to_string());
        report.float("radius", args.radius);
        let inst = LassoInstance::new(matrix, io::read_vector(rhs_path)?, args.radius)
            .map_err(input)?;
        make_entry_oracle(&normalize_radius(&inst))?
    };

    let (d, n_eff) = oracle.dims();
    let cfg = args.solver.to_config();
    let rep = run_sublinear(&oracle, args.epsilon, &cfg)?;

    report.int("rows", d as u64);
    report.int("cols", n_eff as u64);
    report.float("margin_estimate", rep.margin_estimate);
    report.int("entries_sampled", rep.entries_queried);
    report.int("entries_verification", rep.verification_entries);
    report.int("entries_total", oracle.queried());
    report.int("full_matrix_entries", (d * n_eff) as u64);
    report.sparse_vector("direction", &rep.direction);
    report.finish(args.out.as_deref())?;
    Ok(EXIT_OK)
}

pub fn kernel_lasso(args: KernelLassoArgs) -> Result<u8, CliError> {
    let mut report = Report::new("kernel-lasso");
    report.str("matrix", &args.matrix.display().to_string());
    report.str("rhs", &args.rhs.display().to_string());
    report.str("kernel", &args.kernel);
    solver_header(&mut report, &args.solver);

    if args.radius != 1.0 {
        return Err(CliError::Input(format!(
            "kernelized solves are defined on the unit ball; got --radius {}",
            args.radius
        )));
    }
    let matrix = io::read_matrix_csv(&args.matrix)?;
    let rhs = io::read_vector(&args.rhs)?;
    if rhs.len() != matrix.rows() {
        return Err(CliError::Input(format!(
            "target has {} entries but the matrix has {} rows",
            rhs.len(),
            matrix.rows()
        )));
    }
    let spec = io::parse_kernel_arg(&args.kernel)?;
    let gram = kernel_lasso_gram(&matrix, &rhs, &spec)?;

    let cfg = args.solver.to_config();
    let (rep, pullback) = solve_kernel_lasso(&gram, &cfg);

    report.int("cols", gram.n() as u64);
    report.int("gram_dim", gram.dim() as u64);
    push_solve_outcome(&mut report, &rep);
    report.sparse_vector("solution", pullback.coords());
    report.finish(args.out.as_deref())?;
    Ok(exit_for(&rep))
}

fn parse_sizes(spec: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let mut sizes = Vec::new();
    for tok in spec.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let (r, c) = tok
            .split_once('x')
            .ok_or_else(|| CliError::Input(format!("bad size {tok:?}, expected ROWSxCOLS")))?;
        let rows: usize = r
            .parse()
            .map_err(|_| CliError::Input(format!("bad row count {r:?}")))?;
        let cols: usize = c
            .parse()
            .map_err(|_| CliError::Input(format!("bad column count {c:?}")))?;
        if rows == 0 || cols == 0 {
            return Err(CliError::Input(format!("size {tok:?} must be positive")));
        }
        sizes.push((rows, cols));
    }
    if sizes.is_empty() {
        return Err(CliError::Input("no sizes given".into()));
    }
    Ok(sizes)
}

struct BenchRow {
    rows: usize,
    cols: usize,
    rep: usize,
    pg_objective: f64,
    fw_objective: f64,
    delta: f64,
    pg_ms: f64,
    fw_ms: f64,
}

pub fn bench(args: BenchArgs) -> Result<u8, CliError> {
    let mut report = Report::new("bench");
    report.str("sizes", &args.sizes);
    report.int("count", args.count as u64);
    solver_header(&mut report, &args.solver);

    let sizes = parse_sizes(&args.sizes)?;
    let cfg = args.solver.to_config();
    let tasks: Vec<(usize, usize, usize)> = sizes
        .iter()
        .flat_map(|&(rows, cols)| (0..args.count).map(move |rep| (rows, cols, rep)))
        .collect();

    // Instances are independent, so solve them on worker threads; results
    // are collected in task order to keep the report deterministic.
    let cfg_ref = &cfg;
    let rows: Vec<BenchRow> = std::thread::scope(|scope| {
        let handles: Vec<_> = tasks
            .iter()
            .enumerate()
            .map(|(task_idx, &(rows, cols, rep))| {
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg_ref.seed);
                    rng.set_stream(task_idx as u64 + 1);
                    let inst = synth::random_lasso(&mut rng, rows, cols, 1.0);
                    let t0 = Instant::now();
                    let pg = solve_lasso_pg(&inst, cfg_ref)
                        .expect("generated instances have unit radius");
                    let pg_ms = t0.elapsed().as_secs_f64() * 1e3;
                    let (svm, _meta) =
                        lasso_to_svm(&inst).expect("generated instances have unit radius");
                    let t1 = Instant::now();
                    let fw = solve_svm_fw(&svm, cfg_ref);
                    let fw_ms = t1.elapsed().as_secs_f64() * 1e3;
                    BenchRow {
                        rows,
                        cols,
                        rep,
                        pg_objective: pg.objective,
                        fw_objective: fw.objective,
                        delta: (pg.objective - fw.objective).abs(),
                        pg_ms,
                        fw_ms,
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("bench worker panicked"))
            .collect()
    });

    let mut max_delta = 0.0f64;
    for (i, row) in rows.iter().enumerate() {
        report.str(&format!("bench.{i}.size"), &format!("{}x{}", row.rows, row.cols));
        report.int(&format!("bench.{i}.rep"), row.rep as u64);
        report.float(&format!("bench.{i}.ball_objective"), row.pg_objective);
        report.float(&format!("bench.{i}.simplex_objective"), row.fw_objective);
        report.float(&format!("bench.{i}.delta"), row.delta);
        report.float(&format!("bench.{i}.ball_ms"), row.pg_ms);
        report.float(&format!("bench.{i}.simplex_ms"), row.fw_ms);
        max_delta = max_delta.max(row.delta);
    }
    report.float("max_objective_delta", max_delta);
    report.finish(args.out.as_deref())?;
    Ok(EXIT_OK)
}
