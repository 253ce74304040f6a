use thiserror::Error;

use crate::place::Place;

/// Every failure the library can report. Variant names double as the
/// stable error names printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeModulus(u64),
    #[error("polynomial is not squarefree")]
    NonSquarefree,
    #[error("polynomial is zero modulo {0}")]
    ZeroModP(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field discriminant was not supplied for {0}")]
    MissingFieldDiscriminant(String),
    #[error("working precision of {0} bits is too small to bound rounding")]
    PrecisionUnattainable(u32),
    #[error("splitting of {0} is undetermined")]
    UndeterminedPrime(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("classes live over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("place {0} lies outside the verified matching")]
    OutOfMatchingRange(Place),
    #[error("residue degree multisets differ at {0}")]
    MatchingObstruction(u64),
    #[error("signatures differ")]
    SignatureMismatch,
    #[error("no suitable auxiliary primes below {0}")]
    SearchExhausted(u64),
    #[error("gcd precondition fails: K-gcd {0} must exceed K'-gcd {1}")]
    PreconditionGcd(u64, u64),
    #[error("quaternionic factor needs even rank, got {0}")]
    OddQuaternionicRank(u64),
    #[error("ambient class does not transport to the supplied class")]
    ClassMismatch,
    #[error("tree vertices live over different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
    #[error("local degree {d_v} does not divide {nd}")]
    DegreeMismatch { nd: u64, d_v: u64 },
    #[error("lambda closed form and quotient form disagree at q={q}, nd={nd}, d_v={d_v}")]
    LambdaFormMismatch { q: u64, nd: u64, d_v: u64 },
    #[error("zeta value for s={0} missing")]
    MissingZeta(u32),
    #[error("group is degenerate (nd = 1)")]
    DegenerateGroup,
    #[error("alpha = {0} is below 2")]
    AlphaTooSmall(u32),
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::CompositeModulus(_) => "CompositeModulus",
            Error::NonSquarefree => "NonSquarefree",
            Error::ZeroModP(_) => "ZeroModP",
            Error::InvalidField(_) => "InvalidField",
            Error::MissingFieldDiscriminant(_) => "MissingFieldDiscriminant",
            Error::PrecisionUnattainable(_) => "PrecisionUnattainable",
            Error::UndeterminedPrime(_) => "UndeterminedPrime",
            Error::InvalidInput(_) => "InvalidInput",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::OutOfMatchingRange(_) => "OutOfMatchingRange",
            Error::MatchingObstruction(_) => "MatchingObstruction",
            Error::SignatureMismatch => "SignatureMismatch",
            Error::SearchExhausted(_) => "SearchExhausted",
            Error::PreconditionGcd(..) => "PreconditionGcd",
            Error::OddQuaternionicRank(_) => "OddQuaternionicRank",
            Error::ClassMismatch => "ClassMismatch",
            Error::PrimeMismatch(..) => "PrimeMismatch",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::LambdaFormMismatch { .. } => "LambdaFormMismatch",
            Error::MissingZeta(_) => "MissingZeta",
            Error::DegenerateGroup => "DegenerateGroup",
            Error::AlphaTooSmall(_) => "AlphaTooSmall",
            Error::SearchSpaceTooLarge(_) => "SearchSpaceTooLarge",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
