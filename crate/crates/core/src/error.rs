use thiserror::Error;

/// Errors produced by the decision, spectral and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RellichError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("integrand is not finite at s = {at}")]
    NonFiniteIntegrand { at: f64 },

    #[error("harmonic degree {n} is not in the requested subspace")]
    CorpusOutsideSubspace { n: u32 },

    #[error("degenerate Hardy weight: N - 2 + beta = 0")]
    DegenerateWeight,

    #[error("drift coefficient beta must be nonzero")]
    BetaZero,

    #[error("alpha = {alpha} is not the critical exponent {expected} (degree {n})")]
    NotCritical { alpha: f64, expected: f64, n: u32 },

    #[error("discriminant D = {0} must be positive")]
    NonPositiveDiscriminant(f64),

    #[error("discriminant D = {0} must vanish")]
    NonzeroDiscriminant(f64),

    #[error("heat kernel variant does not match the sign of D = {0}")]
    VariantMismatch(f64),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
}

pub type Result<T> = std::result::Result<T, RellichError>;
