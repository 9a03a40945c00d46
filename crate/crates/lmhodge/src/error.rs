use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("not unipotent: {0}")]
    NotUnipotent(String),
    #[error("operators do not commute")]
    NonCommuting,
    #[error("relative monodromy filtration does not exist: {0}")]
    NoRelativeMonodromy(String),
    #[error("relative monodromy filtration undecided: {0}")]
    UndecidedRmf(String),
    #[error("point is not in the cone")]
    NotInCone,
    #[error("not a mixed Hodge structure: {0}")]
    NotMhs(String),
    #[error("operator is not in the Lie algebra of the pairing: {0}")]
    NotInLieAlgebra(String),
    #[error("certified and sampled orbit tests disagree: {0}")]
    OracleDisagreement(String),
    #[error("weak fan axiom violated: {0}")]
    WeakFanViolation(String),
    #[error("cone is not simplicial")]
    NotSimplicial,
    #[error("no integral exponential along ray: {0}")]
    NotIntegralizable(String),
    #[error("invalid lattice L: {0}")]
    InvalidL(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
