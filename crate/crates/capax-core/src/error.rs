//! Error type shared by all modules.

/// Domain and validation errors.
///
/// Diagnostic payloads are carried as `f64` regardless of the scalar type
/// the computation ran in.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Modulus outside the open interval (0, 1).
    #[error("modulus k must satisfy 0 < k < 1, got {0}")]
    ModulusRange(f64),

    /// `k^2` and `k'^2` do not sum to one.
    #[error("k^2 + k'^2 must equal 1, got {0}")]
    ModulusInconsistent(f64),

    /// Amplitude outside [0, pi/2].
    #[error("amplitude must lie in [0, pi/2], got {0}")]
    AmplitudeRange(f64),

    /// Argument of the inverse elliptic sine outside [0, 1].
    #[error("inverse sn argument must lie in [0, 1], got {0}")]
    InverseSnRange(f64),

    /// Interval endpoints out of order.
    #[error("alpha must be < beta (got alpha = {alpha}, beta = {beta})")]
    IntervalOrder { alpha: f64, beta: f64 },

    /// Interval endpoints outside (-1, 1).
    #[error("alpha and beta must lie strictly inside (-1, 1) (got alpha = {alpha}, beta = {beta})")]
    IntervalRange { alpha: f64, beta: f64 },

    /// Valid ordering but within 1e-12 of a degenerate configuration.
    #[error(
        "intervals are degenerate (within 1e-12 of a limit) for alpha = {alpha}, beta = {beta}"
    )]
    DegenerateIntervals { alpha: f64, beta: f64 },

    /// Lambda parameter outside (0, 1).
    #[error("lambda must satisfy 0 < lambda < 1, got {0}")]
    LambdaRange(f64),

    /// Four-point normalization input out of order.
    #[error("normalization requires a < b < c < d")]
    EndpointOrder,

    /// Point count too small for the requested operation.
    #[error("n must be >= {min}, got {got}")]
    CountTooSmall { min: usize, got: usize },
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;
