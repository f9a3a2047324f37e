use rug::Rational;
use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("two_gamma must be positive, got {0}")]
    NonPositiveGamma(Rational),

    #[error("the explicit sum requires two_gamma to be a positive integer, got {0}")]
    NonIntegerGamma(Rational),

    #[error("index j must be at least 1")]
    ZeroIndex,

    #[error("n must be at least {min}, got {n}")]
    NTooSmall { n: usize, min: usize },

    #[error("series power must be at least 3, got {0}")]
    PowerTooSmall(u32),

    #[error("argument must be positive")]
    NonPositiveArgument,

    #[error("distribution at n = {n} is degenerate (zero variance)")]
    Degenerate { n: usize },

    #[error("correction order {0} is not supported (maximum 2)")]
    CorrectionOrder(u8),

    #[error("fourth cumulant required for the order-2 correction term")]
    MissingCumulant,

    #[error("correction factor {value} <= 0 at x = {x}; approximant is not applicable there")]
    CorrectionNonPositive { x: String, value: String },

    #[error("invalid interval: lower endpoint must be below upper endpoint")]
    InvalidInterval,

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("identity is undefined at z = {0}")]
    ExcludedPoint(Rational),
}

pub type Result<T> = std::result::Result<T, Error>;
