use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a fundamental discriminant")]
    NonFundamentalDiscriminant(i64),
    #[error("discriminant {0} does not define a real quadratic field")]
    NotRealQuadratic(i64),
    #[error("no unit found with coefficient below {0}")]
    UnitSearchExhausted(i64),
    #[error("the zero ideal has no factorization")]
    ZeroIdeal,
    #[error("ideal is not integral")]
    NotIntegral,
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,
    #[error("requested accuracy {target:e} not reached (estimate {estimate:e})")]
    AccuracyNotReached { target: f64, estimate: f64 },
    #[error("argument s = {0} outside the supported range")]
    OutOfRange(f64),
    #[error("class number is {0}, expected 1")]
    ClassNumberNotOne(u32),
    #[error("narrow class number is not 1")]
    NarrowClassNumberNotOne,
    #[error("boundary volume mismatch: direct {direct}, closed form {closed}")]
    NormalizationMismatch { direct: f64, closed: f64 },
    #[error("{0} is not reduced for the minus continued fraction")]
    NotReduced(String),
    #[error("fan invariant violated: {0}")]
    InvalidFan(String),
    #[error("element is not a power of the fan unit")]
    NotAUnitPower,
    #[error("s = {0} is outside the region of absolute convergence")]
    NotInConvergenceRegion(f64),
    #[error("expansion has {found} coefficients, at least {needed} required")]
    InsufficientCoefficients { found: usize, needed: usize },
    #[error("e_0 component {0} is not divisible by (s - 1)")]
    NonVanishingConstantCoefficient(String),
    #[error("element is not closed")]
    NotClosed,
    #[error("identity fails: {0}")]
    IdentityFails(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonFundamentalDiscriminant(_) => "NonFundamentalDiscriminant",
            Error::NotRealQuadratic(_) => "NotRealQuadratic",
            Error::UnitSearchExhausted(_) => "UnitSearchExhausted",
            Error::ZeroIdeal => "ZeroIdeal",
            Error::NotIntegral => "NotIntegral",
            Error::PoleAtOne => "PoleAtOne",
            Error::AccuracyNotReached { .. } => "AccuracyNotReached",
            Error::OutOfRange(_) => "OutOfRange",
            Error::ClassNumberNotOne(_) => "ClassNumberNotOne",
            Error::NarrowClassNumberNotOne => "NarrowClassNumberNotOne",
            Error::NormalizationMismatch { .. } => "NormalizationMismatch",
            Error::NotReduced(_) => "NotReduced",
            Error::InvalidFan(_) => "InvalidFan",
            Error::NotAUnitPower => "NotAUnitPower",
            Error::NotInConvergenceRegion(_) => "NotInConvergenceRegion",
            Error::InsufficientCoefficients { .. } => "InsufficientCoefficients",
            Error::NonVanishingConstantCoefficient(_) => "NonVanishingConstantCoefficient",
            Error::NotClosed => "NotClosed",
            Error::IdentityFails(_) => "IdentityFails",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// True for errors that signal a violated precondition rather than a
    /// failed check.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::NormalizationMismatch { .. } | Error::IdentityFails(_) | Error::InvalidFan(_)
        )
    }
}
