use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. [`Error::code`] gives a stable
/// machine-readable name for each variant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("sequence is not strictly monotone at position {0}")]
    NotIncreasing(usize),
    #[error("finite entry after an infinite one at position {0}")]
    FiniteAfterInfinity(usize),
    #[error("degree sequence has no finite entry")]
    AllInfinite,
    #[error("sequences are not comparable")]
    NotComparable,
    #[error("no touching index: d_j != d'_j for every finite position of d'")]
    NoTouchingIndex,
    #[error("the Betti diagram is zero")]
    EmptyDiagram,
    #[error("diagram is not in the cone of Betti diagrams: {0}")]
    NotInCone(String),
    #[error("complement of the degree sequence has {got} elements, expected {expected}")]
    DeltaSizeMismatch { expected: usize, got: usize },
    #[error("basis of rank {rank} exceeds the cap {cap}")]
    BasisTooLarge { rank: String, cap: usize },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("Pieri check failed at step {step}, index {j}")]
    PieriFailure { step: usize, j: usize },
    #[error("bundles do not split into line bundles (roots are not consecutive)")]
    NotSplit,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotIncreasing(_) => "NotIncreasing",
            Error::FiniteAfterInfinity(_) => "FiniteAfterInfinity",
            Error::AllInfinite => "AllInfinite",
            Error::NotComparable => "NotComparable",
            Error::NoTouchingIndex => "NoTouchingIndex",
            Error::EmptyDiagram => "EmptyDiagram",
            Error::NotInCone(_) => "NotInCone",
            Error::DeltaSizeMismatch { .. } => "DeltaSizeMismatch",
            Error::BasisTooLarge { .. } => "BasisTooLarge",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidWeight(_) => "InvalidWeight",
            Error::InvalidSequence(_) => "InvalidSequence",
            Error::PieriFailure { .. } => "PieriFailure",
            Error::NotSplit => "NotSplit",
        }
    }

    /// True for refusals that are mathematical answers rather than bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::NotComparable
                | Error::NoTouchingIndex
                | Error::NotInCone(_)
                | Error::EmptyDiagram
                | Error::NotSplit
        )
    }
}
