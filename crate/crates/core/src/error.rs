use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Rejections that are mathematical
/// answers (a non-member, a rejected certificate) are results, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("inversion of zero")]
    InversionOfZero,

    #[error("polynomials are not coprime: common factor {common_factor}")]
    NotCoprime { common_factor: String },

    #[error("integers are not coprime: {0}")]
    NotCoprimeIntegers(String),

    #[error("t is not invertible modulo {0}")]
    TNotInvertible(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("witness mismatch: {0}")]
    WitnessMismatch(String),

    #[error("unknown basis monomial: {0}")]
    UnknownBasisMonomial(String),

    #[error("inexpressible action: {0}")]
    InexpressibleAction(String),

    #[error("degenerate presentation: {0}")]
    DegeneratePresentation(String),

    #[error("needs refinement: {0}")]
    NeedsRefinement(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("candidate family too large: estimate {estimate} exceeds budget {budget}")]
    FamilyTooLarge { estimate: u64, budget: u64 },

    #[error("unsupported beta: {0}")]
    UnsupportedBeta(String),

    #[error("not invariant: {0}")]
    NotInvariant(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// Coarse classification used by the command-line exit-code contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Malformed,
    Negative,
    Hypothesis,
    Exhausted,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NotCoprime { .. }
            | Error::NotCoprimeIntegers(_)
            | Error::TNotInvertible(_)
            | Error::HypothesisViolation(_)
            | Error::WitnessMismatch(_)
            | Error::InvalidParams(_)
            | Error::UnsupportedBeta(_)
            | Error::DivisionByZero
            | Error::InversionOfZero => ErrorClass::Hypothesis,
            Error::NotInvariant(_) => ErrorClass::Negative,
            Error::SearchExhausted(_) | Error::FamilyTooLarge { .. } | Error::NeedsRefinement(_) => {
                ErrorClass::Exhausted
            }
            Error::InvalidInput(_)
            | Error::UnknownBasisMonomial(_)
            | Error::InexpressibleAction(_)
            | Error::DegeneratePresentation(_)
            | Error::Internal(_) => ErrorClass::Malformed,
        }
    }
}
