//! Command-line front end for the `lassvm` library.
//!
//! Subcommands cover the two problem forms (simplex-constrained margin
//! maximization and l1-ball least squares), the constructions that rewrite
//! one as the other, safe column screening, entry-sampled margin
//! estimation, kernelized solves, and a verification harness that solves
//! both sides of a construction and compares them.
//!
//! Every command emits a key-value report (stdout, or `--out FILE`) whose
//! floats carry 17 significant digits; runs with the same inputs and seed
//! are byte-identical apart from `*_ms` timing fields.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input,
//! 3 iteration cap reached before the requested tolerance.

mod commands;
mod io;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NO_CONVERGENCE: u8 = 3;

/// Errors surfaced to the user; mapped onto exit codes in `main`.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed, or inconsistent input (exit code 2).
    Input(String),
    /// Library-level failure (exit 3 for non-convergence, otherwise 2).
    Core(lassvm::Error),
}

impl From<lassvm::Error> for CliError {
    fn from(e: lassvm::Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "lassvm",
    version,
    about = "Simplex-margin and l1-ball solvers, with the constructions \
             linking the two problem forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Solver knobs shared by every command that iterates.
#[derive(Args, Clone)]
pub struct SolverArgs {
    /// Stop once the optimality certificate falls below this value.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Iteration cap; exceeding it exits with code 3.
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    /// Seed for every randomized choice; fixed seed, fixed output.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Step-size rule for simplex solves.
    #[arg(long, value_enum, default_value_t = StepRuleArg::ExactLineSearch)]
    pub step_rule: StepRuleArg,
}

impl SolverArgs {
    pub fn to_config(&self) -> lassvm::SolverConfig {
        lassvm::SolverConfig {
            tol: self.tol,
            max_iter: self.max_iter,
            seed: self.seed,
            step_rule: match self.step_rule {
                StepRuleArg::ExactLineSearch => lassvm::StepRule::ExactLineSearch,
                StepRuleArg::Harmonic => lassvm::StepRule::Harmonic,
            },
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum StepRuleArg {
    /// Exact minimization along each chosen direction.
    ExactLineSearch,
    /// Fixed 2/(k+2) schedule.
    Harmonic,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum DirectionArg {
    /// Rewrite an l1-ball regression instance as a simplex margin instance.
    LassoToSvm,
    /// Rewrite a margin instance as an l1-ball regression instance.
    SvmToLasso,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum VerifyDirectionArg {
    LassoToSvm,
    SvmToLasso,
    Both,
}

#[derive(Args)]
pub struct SolveLassoArgs {
    /// Headerless CSV; file rows are matrix rows.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Target vector, one value per line.
    #[arg(long)]
    pub rhs: PathBuf,
    /// l1-ball radius of the feasible region.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Screening report whose `kept =` columns restrict the solve.
    #[arg(long)]
    pub only_kept: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct SolveSvmArgs {
    /// Headerless CSV; columns are the data points.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Screening report whose `kept =` columns restrict the solve.
    #[arg(long)]
    pub only_kept: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct SolveSvmDualArgs {
    /// Labeled points, one per line: `label index:value ...` (labels ±1).
    #[arg(long)]
    pub data: PathBuf,
    /// Slack penalty; larger values approach the hard-margin problem.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Append a constant feature of this value, absorbing the offset term.
    #[arg(long)]
    pub offset_scale: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct ReduceArgs {
    #[arg(long, value_enum)]
    pub direction: DirectionArg,
    #[arg(long)]
    pub matrix: PathBuf,
    /// Target vector; required for --direction lasso-to-svm.
    #[arg(long)]
    pub rhs: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Separating direction file (one value per line); computed by the
    /// perceptron when omitted.  Only used by --direction svm-to-lasso.
    #[arg(long)]
    pub separator: Option<PathBuf>,
    /// Column-norm bound for the construction; estimated when omitted.
    #[arg(long)]
    pub big_d: Option<f64>,
    /// Where to write the constructed matrix (CSV).
    #[arg(long)]
    pub out_matrix: PathBuf,
    /// Where to write the constructed target; required for svm-to-lasso.
    #[arg(long)]
    pub out_rhs: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = VerifyDirectionArg::Both)]
    pub direction: VerifyDirectionArg,
    /// Number of random instances per direction.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    /// Row-count bound for generated instances.
    #[arg(long, default_value_t = 12)]
    pub max_rows: usize,
    /// Column-count bound for generated instances.
    #[arg(long, default_value_t = 16)]
    pub max_cols: usize,
    /// Verify this matrix instead of generating instances.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Target for --matrix in the lasso-to-svm direction.
    #[arg(long)]
    pub rhs: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Override the per-direction objective-difference threshold.
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct ScreenLassoArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long)]
    pub rhs: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct ScreenSvmArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct SublinearArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    /// Target vector; required unless --direct is given.
    #[arg(long)]
    pub rhs: Option<PathBuf>,
    /// Treat the matrix columns directly as margin-form points instead of
    /// building them from a regression instance.
    #[arg(long, default_value_t = false)]
    pub direct: bool,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Additive margin accuracy target.
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct KernelLassoArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long)]
    pub rhs: PathBuf,
    /// linear | poly:DEG:COEF0 | rbf:GAMMA | precomputed:PATH
    #[arg(long, default_value = "linear")]
    pub kernel: String,
    /// Must be 1; kernelized solves are defined on the unit ball.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Comma-separated ROWSxCOLS instance shapes.
    #[arg(long, default_value = "8x12,16x24,32x48")]
    pub sizes: String,
    /// Instances per shape.
    #[arg(long, default_value_t = 3)]
    pub count: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Least squares over an l1 ball.
    SolveLasso(SolveLassoArgs),
    /// Minimize the hull norm `‖Ax‖` over the simplex.
    SolveSvm(SolveSvmArgs),
    /// Quadratic-slack margin dual for labeled points, plus the rebuilt
    /// primal separator.
    SolveSvmDual(SolveSvmDualArgs),
    /// Rewrite one problem form as the other and write the result.
    Reduce(ReduceArgs),
    /// Solve both sides of a construction and compare objectives.
    VerifyEquivalence(VerifyArgs),
    /// Discard provably inactive columns of a regression instance.
    ScreenLasso(ScreenLassoArgs),
    /// Discard provably inactive columns of a margin instance.
    ScreenSvm(ScreenSvmArgs),
    /// Margin estimation that samples matrix entries instead of reading
    /// the whole matrix.
    SolveSublinear(SublinearArgs),
    /// l1-ball regression through a kernel function.
    KernelLasso(KernelLassoArgs),
    /// Timed solver cross-checks on random instances (runs concurrently).
    Bench(BenchArgs),
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::SolveLasso(a) => commands::solve_lasso(a),
        Command::SolveSvm(a) => commands::solve_svm(a),
        Command::SolveSvmDual(a) => commands::solve_svm_dual(a),
        Command::Reduce(a) => commands::reduce(a),
        Command::VerifyEquivalence(a) => commands::verify_equivalence(a),
        Command::ScreenLasso(a) => commands::screen_lasso(a),
        Command::ScreenSvm(a) => commands::screen_svm(a),
        Command::SolveSublinear(a) => commands::solve_sublinear(a),
        Command::KernelLasso(a) => commands::kernel_lasso(a),
        Command::Bench(a) => commands::bench(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match &e {
                CliError::Core(lassvm::Error::NonConvergence(_)) => EXIT_NO_CONVERGENCE,
                _ => EXIT_INPUT,
            };
            ExitCode::from(code)
        }
    }
}
