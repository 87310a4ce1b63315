use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (max asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("non-finite entry encountered")]
    NonFinite,
    #[error("gram matrix is not positive definite")]
    DegenerateGram,
    #[error("elements belong to different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid algebra descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("function undefined at spectral value {eigenvalue}")]
    DomainError { eigenvalue: f64 },
    #[error("element is not positive (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("element is not an effect (spectrum in [{min:.3e}, {max:.3e}])")]
    NotAnEffect { min: f64, max: f64 },
    #[error("hypotheses not satisfied: {0}")]
    NotApplicable(String),
    #[error("unparseable family spec {0:?}")]
    BadFamilySpec(String),
}
