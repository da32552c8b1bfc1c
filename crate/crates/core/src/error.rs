use thiserror::Error;

/// Errors raised by input validation and internal consistency checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("relay count must be at least {min}, got {got}")]
    RelayCount { got: usize, min: usize },

    #[error("gain {name} must be positive, got {value}")]
    NonPositiveGain { name: &'static str, value: f64 },

    #[error("gain {name} must be finite for this operation")]
    InfiniteGain { name: &'static str },

    #[error("at most one of g, h may be infinite")]
    BothGainsInfinite,

    #[error("duty cycle must lie in (0, 1], got {0}")]
    DutyCycle(f64),

    #[error("correlation {rho} outside the positive semidefinite range [{lower}, 1]")]
    Correlation { rho: f64, lower: f64 },

    #[error("cut index {n} exceeds relay count {n_relays}")]
    CutIndex { n: usize, n_relays: usize },

    #[error("subset enumeration limited to {limit} relays, got {n_relays}")]
    TooManyRelays { n_relays: usize, limit: usize },

    #[error("relay index {index} out of range for {n_relays} relays")]
    RelayIndex { index: usize, n_relays: usize },

    #[error("matrix is not symmetric (max asymmetry {0})")]
    NotSymmetric(f64),

    #[error("matrix is not positive semidefinite (smallest eigenvalue {0})")]
    NotPsd(f64),

    #[error("matrix must be square and non-empty")]
    MatrixShape,

    #[error("gain vectors differ in length: {g} vs {h}")]
    LengthMismatch { g: usize, h: usize },

    #[error(
        "amplification {alpha} violates the relay power constraint (alpha^2 <= {max_alpha_sq})"
    )]
    PowerInfeasible { alpha: f64, max_alpha_sq: f64 },

    #[error("symbol count must be at least {min}, got {got}")]
    SymbolCount { got: u64, min: u64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
