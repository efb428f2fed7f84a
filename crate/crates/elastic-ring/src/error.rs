//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by parameter validation, root searches, and the
/// numerical solvers.
#[derive(Debug, Error)]
pub enum RingError {
    /// A parameter violates its domain (non-positive modulus, μ1 < 0, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested mode cannot bifurcate at the given parameters.
    #[error("no bifurcation: {0}")]
    NoBifurcation(String),

    /// The reduced function is not 6-determined where the operation needs
    /// it to be (a6 ≤ 0); the sixth-degree truncation is not trustworthy.
    #[error("determinacy failure: {0}")]
    DeterminacyFailure(String),

    /// A Maxwell construction was requested in a second-order regime.
    #[error("not a first-order regime: {0}")]
    NotFirstOrder(String),

    /// Kernel detection found a null space of unexpected dimension.
    #[error("degenerate kernel: expected dimension {expected}, found {found}; near-zero eigenvalues {eigenvalues:?}")]
    DegenerateKernel {
        expected: usize,
        found: usize,
        eigenvalues: Vec<f64>,
    },

    /// Newton iteration failed to converge.
    #[error("Newton diverged: residual {residual:.3e} after {iterations} iterations")]
    Diverged { residual: f64, iterations: usize },

    /// The slaved solve left the amplitude trust region.
    #[error("trust region exceeded at alpha = {alpha}")]
    TrustRegionExceeded { alpha: f64 },

    /// A bracketed root search found no sign change.
    #[error("no sign change in bracket [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    /// Kernel normalization convention cannot be applied.
    #[error("normalization ambiguous: {0}")]
    NormalizationAmbiguous(String),

    /// The assembled Hessian is not symmetric to tolerance.
    #[error("Hessian asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}")]
    AsymmetricHessian { asymmetry: f64, tolerance: f64 },

    /// I/O failure, annotated with the offending path.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Invalid CLI or config-file usage.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, RingError>;
