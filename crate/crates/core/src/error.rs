//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("exponent {0} is not a half-integer")]
    NotHalfInteger(String),
    #[error("mismatched variable lists: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("weight index {index} out of range for sl_{n}")]
    IndexOutOfRange { n: usize, index: usize },
    #[error("rank mismatch: sl_{0} vs sl_{1}")]
    RankMismatch(usize, usize),
    #[error("critical level k = -{0}")]
    CriticalLevel(usize),
    #[error("weight is not dominant integral")]
    NonDominant,
    #[error("rank too small: sl_{0}")]
    RankTooSmall(usize),
    #[error("Fock level mismatch")]
    LevelMismatch,
    #[error("fusion not in scope: both factors typical")]
    TypicalFusion,
    #[error("phase defined for integer singlet part only")]
    TypicalPhase,
    #[error("character weights are not half-integers for this module")]
    NonHalfIntegerCharacter,
    #[error("product factor does not terminate")]
    NonTerminatingFactor,
    #[error("insufficient charge window {window} for truncation order {order}")]
    InsufficientChargeWindow { window: i64, order: String },
    #[error("module is not local")]
    NotLocal,
    #[error("m must be even and at least 4, got {0}")]
    BadSectorRank(i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
