use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// The coboundary space is not contained in the cocycle space, i.e. the
    /// differential does not square to zero on the given data.
    #[error("containment violation: coboundaries not contained in cocycles")]
    ContainmentViolation,
    #[error("invalid Hochschild 2-cocycle: {0}")]
    InvalidCocycle(String),
    #[error("not a Hochschild 1-cocycle")]
    NotACocycle,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("tagged 2-cochain is not a multiplication (pi o1 pi != pi o2 pi)")]
    NotAMultiplication,
    #[error("bimodule axiom failure at basis triple {0:?}")]
    AxiomFailure(Vec<usize>),
    /// The restricted derived bracket picked up a component outside
    /// Hom(M^n, A); this cannot happen for correct inputs.
    #[error("restriction failure in derived bracket")]
    RestrictionFailure,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
