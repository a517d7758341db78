use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("no p-complement found (p = {p})")]
    NoComplement { p: u64 },

    #[error("division by zero in cyclotomic arithmetic")]
    DivisionByZero,

    #[error("value is not an algebraic integer")]
    NotAlgebraicInteger,

    #[error("denominator {den} is not coprime to p = {p}")]
    DenominatorNotCoprime { den: String, p: u64 },

    #[error("valuation exceeds the working precision p^{k}")]
    PrecisionExhausted { k: u32 },

    #[error("character table verification failed: {0}")]
    LiftVerificationFailed(String),

    #[error("class functions live on different groups")]
    GroupMismatch,

    #[error("class function is not a linear character")]
    NotLinear,

    #[error("class function is not G-stable: {0}")]
    NotStable(String),

    #[error("star product is not a generalized character: {0}")]
    NotGeneralized(String),

    #[error("hyperfocal subgroup computations disagree: intersection form has order {intersection}, focal form has order {focal}")]
    PuigMismatch { intersection: usize, focal: usize },

    #[error("inertial index dichotomy violated at u = {u}: e_u = {e_u}, e = {e}")]
    DichotomyViolation { u: String, e_u: u64, e: u64 },

    #[error("linear character is not P-invariant")]
    NotInvariant,

    #[error("unexpected decomposition pattern: {0}")]
    AmbiguousDecomposition(String),

    #[error("character count mismatch: {0}")]
    CardinalityMismatch(String),

    #[error("character families do not match: {0}")]
    FamilyMismatch(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("not a prime: {0}")]
    NotPrime(u64),

    #[error("unknown group: {0}")]
    UnknownGroup(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::Parse { .. } => "ParseError",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotNormal => "NotNormal",
            Error::NoComplement { .. } => "NoComplement",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotAlgebraicInteger => "NotAlgebraicInteger",
            Error::DenominatorNotCoprime { .. } => "DenominatorNotCoprime",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::LiftVerificationFailed(_) => "LiftVerificationFailed",
            Error::GroupMismatch => "GroupMismatch",
            Error::NotLinear => "NotLinear",
            Error::NotStable(_) => "NotStable",
            Error::NotGeneralized(_) => "NotGeneralized",
            Error::PuigMismatch { .. } => "PuigMismatch",
            Error::DichotomyViolation { .. } => "DichotomyViolation",
            Error::NotInvariant => "NotInvariant",
            Error::AmbiguousDecomposition(_) => "AmbiguousDecomposition",
            Error::CardinalityMismatch(_) => "CardinalityMismatch",
            Error::FamilyMismatch(_) => "FamilyMismatch",
            Error::HypothesisNotMet(_) => "HypothesisNotMet",
            Error::NotPrime(_) => "NotPrime",
            Error::UnknownGroup(_) => "UnknownGroup",
            Error::Internal(_) => "Internal",
            Error::Io(_) => "Io",
        }
    }
}
