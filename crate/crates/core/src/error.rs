//! Error type shared by every module.

use thiserror::Error;

/// Errors produced by constructors, solvers and classifiers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value in numerical input")]
    NonFinite,
    #[error("matrix is singular within tolerance")]
    Singular,
    #[error("not a unit imaginary element: {0}")]
    NotImaginaryUnit(String),
    #[error("not a Cayley triple: {0}")]
    NotCayleyTriple(String),
    #[error("map is not orthogonal")]
    NotOrthogonal,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unsupported dimension {0}")]
    BadDimension(usize),
    #[error("left and right multiplication signs disagree across samples")]
    InconsistentSigns,
    #[error("derivation algebra is abelian; no decomposition")]
    AbelianDerivations,
    #[error("subspace is not invariant under the derivations")]
    NotInvariant,
    #[error("solver did not converge (residual {0:e})")]
    NoConvergence(f64),
    #[error("parameters lie outside the D1133 block")]
    NotInD1133,
    #[error("operation needs family provenance; raw tensors are not supported")]
    RawTensorNotSupported,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
