use thiserror::Error;

/// Failures reported by the library. `name()` gives the short tag the CLI prints.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generators do not span a full-rank lattice")]
    RankError,
    #[error("dimension mismatch: {0}")]
    DimensionError(String),
    #[error("{0}")]
    DomainError(String),
    #[error("unsupported discriminant {0}")]
    UnsupportedDiscriminant(String),
    #[error("matrix determinant is not +1 or -1")]
    NotUnimodular,
    #[error("discriminants differ: {0} vs {1}")]
    DiscriminantMismatch(String, String),
    #[error("form is not primitive")]
    NotPrimitive,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("form does not take the value 1 at the given vector")]
    NotUnit,
    #[error("the zero form has no ideal")]
    ZeroForm,
    #[error("form discriminant {0} does not match ring discriminant {1}")]
    FormRingMismatch(String, String),
    #[error("ideals live in different rings")]
    RingMismatch,
    #[error("module is not closed under multiplication by xi")]
    NotIdeal,
    #[error("cube is degenerate")]
    Degenerate,
    #[error("triple is not balanced")]
    NotBalanced,
    #[error("bases do not match the ideals: {0}")]
    BadBases(String),
    #[error("determinant product is not 1")]
    NotInGamma,
    #[error("the trivial ring has no canonical resolvent")]
    TrivialRing,
    #[error("ring has discriminant 0")]
    DegenerateRing,
    #[error("precision {0} too small")]
    PrecisionError(u32),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::RankError => "RankError",
            Error::DimensionError(_) => "DimensionError",
            Error::DomainError(_) => "DomainError",
            Error::UnsupportedDiscriminant(_) => "UnsupportedDiscriminant",
            Error::NotUnimodular => "NotUnimodular",
            Error::DiscriminantMismatch(..) => "DiscriminantMismatch",
            Error::NotPrimitive => "NotPrimitive",
            Error::NotPositiveDefinite => "NotPositiveDefinite",
            Error::NotUnit => "NotUnit",
            Error::ZeroForm => "ZeroForm",
            Error::FormRingMismatch(..) => "FormRingMismatch",
            Error::RingMismatch => "RingMismatch",
            Error::NotIdeal => "NotIdeal",
            Error::Degenerate => "Degenerate",
            Error::NotBalanced => "NotBalanced",
            Error::BadBases(_) => "BadBases",
            Error::NotInGamma => "NotInGamma",
            Error::TrivialRing => "TrivialRing",
            Error::DegenerateRing => "DegenerateRing",
            Error::PrecisionError(_) => "PrecisionError",
            Error::Malformed(_) => "Malformed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
