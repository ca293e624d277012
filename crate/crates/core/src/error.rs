//! Crate-wide error type.

use crate::vars::VarId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A polynomial was evaluated with an assignment that misses a variable.
    #[error("variable {0} has no assigned value")]
    MissingVariable(VarId),

    /// A determinant or solve was requested for a non-square matrix.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// The coefficient matrix of a linear solve is identically singular.
    #[error("coefficient matrix is identically singular")]
    SingularSystem,

    /// A denominator vanishes at the chosen sample point.
    #[error("a denominator vanishes at the sample point")]
    DenominatorVanishes,

    /// Matrix size below the smallest supported algebra.
    #[error("n must be >= 2 (got {0})")]
    InvalidSize(u32),

    /// The requested operation is not defined for this algebra kind.
    #[error("operation is not supported for this algebra kind: {0}")]
    UnsupportedKind(&'static str),

    /// A normalization subsystem is nonlinear in one of its designated
    /// unknowns; this signals an implementation bug, not bad input.
    #[error("subsystem is nonlinear in designated unknown {0}")]
    NonlinearSystem(String),

    /// Normalization finished with unsolved equations containing only
    /// x-variables, i.e. the constraint set was not a valid cross-section.
    #[error("normalization left {0} residual equations in x-variables only")]
    ResidualXEquations(usize),

    /// A triangular group element has a vanishing diagonal entry.
    #[error("group element is singular (zero diagonal entry)")]
    SingularGroupElement,

    /// An invariance certificate failed.
    #[error("verification failure: {0}")]
    VerificationFailure(String),

    /// No nondegenerate sample point was found within the resampling budget.
    #[error("no nondegenerate sample point found after {0} attempts")]
    DegeneratePoint(u32),

    /// A word in the enveloping algebra exceeded the length cap.
    #[error("word of length {len} exceeds the cap of {cap}")]
    WordTooLong { len: usize, cap: usize },

    /// A minor assumed nonzero by a determinant identity vanishes at the
    /// sample point.
    #[error("minor vanishes at the sample point")]
    MinorVanishes,
}

pub type Result<T> = std::result::Result<T, Error>;
