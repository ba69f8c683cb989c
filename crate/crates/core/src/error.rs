use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("slot {slot} out of range for a polynomial in {nvars} variables")]
    SlotOutOfRange { slot: usize, nvars: usize },

    #[error("polynomial has odd powers of the length variable in slot {slot}")]
    OddResidue { slot: usize },

    #[error("at most {max} slots are supported, got {got}")]
    TooManySlots { max: usize, got: usize },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("unstable signature (g={g}, m={m}, n={n}): need 2g - 2 + m + n > 0")]
    UnstableSignature { g: u32, m: usize, n: usize },

    #[error("cone angle must lie in (0, π], got {0} (for angles above π a pants decomposition may not exist)")]
    ConeAngleOutOfRange(f64),

    #[error("boundary length must be positive, got {0}")]
    NonPositiveLength(f64),

    #[error("boundary length must be nonnegative and finite, got {0}")]
    NegativeLength(f64),

    #[error("invalid gap kernel: {0}")]
    InvalidKernel(String),

    #[error("moment index k={k} exceeds configured maximum {max}")]
    MomentIndexTooLarge { k: u32, max: u32 },

    #[error("closed surfaces are not supported: need m + n >= 1 (a boundary or cone point to distinguish)")]
    ClosedSurface,

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("quadrature did not converge: {0}")]
    QuadratureFailed(String),

    #[error("tail bound {bound:e} exceeds tolerance {tol:e}")]
    TailBoundExceeded { bound: f64, tol: f64 },

    #[error("no real solution with all traces > 2 for Fricke constant {0}")]
    InvalidFrickeConstant(f64),

    #[error("trace {0} is not hyperbolic (must exceed 2)")]
    NonHyperbolicTrace(f64),

    #[error("length cutoff {cutoff} is below the systole {systole}")]
    CutoffBelowSystole { cutoff: f64, systole: f64 },

    #[error("boundary kind does not match the Fricke constant of the root triple")]
    FrickeMismatch,

    #[error("volume evaluated to a non-positive value {0}")]
    NonPositiveVolume(f64),

    #[error("malformed polynomial JSON: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Whether the error is caused by user input rather than an internal bug.
    pub fn is_user_error(&self) -> bool {
        !matches!(
            self,
            Error::Invariant(_) | Error::NonPositiveVolume(_) | Error::OddResidue { .. }
        )
    }
}
