use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("polynomial is not irreducible over the base field: {0}")]
    NotIrreducible(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("degree too large: {0}")]
    DegreeTooLarge(String),
    #[error("model exposes no linear structure")]
    NotLinearizable,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("matrices are not conjugate under the unipotent radical")]
    NotRuConjugate,
    #[error("matrix is not square")]
    NonSquare,
    #[error("enumeration budget exceeded: {0}")]
    EnumerationBudgetExceeded(String),
    #[error("minimal orbit is not unique: {0}")]
    NonUniqueMinimal(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("invalid sign convention: {0}")]
    InvalidConvention(String),
    #[error("word support is not closed: {0}")]
    NonClosedSupport(String),
    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax(_) => "SyntaxError",
            Error::Domain(_) => "DomainError",
            Error::NotIrreducible(_) => "NotIrreducible",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::DegreeTooLarge(_) => "DegreeTooLarge",
            Error::NotLinearizable => "NotLinearizable",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::NotRuConjugate => "NotRuConjugate",
            Error::NonSquare => "NonSquare",
            Error::EnumerationBudgetExceeded(_) => "EnumerationBudgetExceeded",
            Error::NonUniqueMinimal(_) => "NonUniqueMinimal",
            Error::BasisMismatch(_) => "BasisMismatch",
            Error::InvalidConvention(_) => "InvalidConvention",
            Error::NonClosedSupport(_) => "NonClosedSupport",
            Error::ReplayMismatch(_) => "ReplayMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
