//! Error type shared across the crate.

/// Errors reported by constructors, reductions, and solvers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A matrix or vector had a size that does not fit the operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An input value was outside its allowed range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A vector failed a feasibility check (simplex or l1-ball membership).
    #[error("infeasible point: {0}")]
    Infeasible(String),

    /// A reduction-specific precondition did not hold (e.g. the supplied
    /// direction does not separate the columns from the origin).
    #[error("reduction precondition violated: {0}")]
    Precondition(String),

    /// An operation required metadata from a different reduction direction.
    #[error("wrong reduction kind: {0}")]
    WrongReduction(String),

    /// A kernel matrix failed its symmetry or positive-semidefiniteness check.
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    /// An iterative solver stopped at its iteration cap before reaching the
    /// requested tolerance.
    #[error("did not converge: {0}")]
    NonConvergence(String),
}
