use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid lattice parameters n={n}, p={p}: {reason}")]
    InvalidParams {
        n: u64,
        p: u64,
        reason: &'static str,
    },
    #[error("empty part sequence")]
    EmptySequence,
    #[error("part at index {0} is outside [1, p]")]
    PartOutOfRange(usize),
    #[error("parts sum to {0}, not n")]
    WrongTotal(u64),
    #[error("malformed composition text: {0:?}")]
    Parse(String),
    #[error("compositions belong to different lattices")]
    ParamMismatch,
    #[error("|F_n^p| = {size} exceeds the configured cap of {cap}")]
    ScaleExceeded { size: String, cap: u64 },
    #[error("no unique extremum among the common bounds (lattice invariant violated)")]
    NonUniqueExtremum,
    #[error("composition does not have the shape (p^k, i, 1^m) with m >= 1")]
    NotInA,
    #[error("{{{a},{b}}} is not an edge of the Turán graph")]
    NotAnEdge { a: u64, b: u64 },
    #[error("composition has no (k, i, m) prefix profile")]
    NoProfile,
    #[error("composition is not meet-irreducible")]
    NotMeetIrreducible,
    #[error("composition is not join-irreducible")]
    NotJoinIrreducible,
    #[error("argument outside the valid range: {0}")]
    RangeError(String),
    #[error("closed form produced a non-integral value")]
    NonIntegralResult,
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Stable variant name, for machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams { .. } => "InvalidParams",
            Error::EmptySequence => "EmptySequence",
            Error::PartOutOfRange(_) => "PartOutOfRange",
            Error::WrongTotal(_) => "WrongTotal",
            Error::Parse(_) => "Parse",
            Error::ParamMismatch => "ParamMismatch",
            Error::ScaleExceeded { .. } => "ScaleExceeded",
            Error::NonUniqueExtremum => "NonUniqueExtremum",
            Error::NotInA => "NotInA",
            Error::NotAnEdge { .. } => "NotAnEdge",
            Error::NoProfile => "NoProfile",
            Error::NotMeetIrreducible => "NotMeetIrreducible",
            Error::NotJoinIrreducible => "NotJoinIrreducible",
            Error::RangeError(_) => "RangeError",
            Error::NonIntegralResult => "NonIntegralResult",
            Error::Overflow(_) => "Overflow",
        }
    }
}
