use thiserror::Error;

/// Every failure mode of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("indeterminate valuation: all known coefficients vanish")]
    IndeterminateValuation,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("mismatched parameters: {0}")]
    Mismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("incompatible fan map: {0}")]
    IncompatibleFanMap(String),
    #[error("image outside fan support: {0}")]
    OutsideSupport(String),
    #[error("not a maximal smooth cone: {0}")]
    NotMaximalSmoothCone(String),
    #[error("unsupported fan shape: {0}")]
    UnsupportedFanShape(String),
    #[error("non-exact division while building Witt polynomials (p = {p}, index {index})")]
    NonExactDivision { p: u64, index: usize },
    #[error("wild or non-Kummer extension unsupported: {0}")]
    NonKummer(String),
    #[error("degree overflow: {0}")]
    DegreeOverflow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
