use thiserror::Error;

/// Errors produced by constructors and operations throughout the crate.
///
/// Structural preconditions (isotropy, metric axioms, degree constraints)
/// are enforced eagerly: violating them is a caller bug or bad input data,
/// never a state we silently project away.
#[derive(Debug, Error)]
pub enum GkError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("form degree mismatch: expected degree {expected}, got a form with components outside it")]
    DegreeMismatch { expected: usize },

    #[error("Lie algebra mismatch between operands")]
    AlgebraMismatch,

    #[error("invalid Lie algebra data: {0}")]
    InvalidAlgebra(String),

    #[error("invalid generalized metric: {0}")]
    InvalidMetric(String),

    #[error("invalid generalized complex structure: {0}")]
    InvalidStructure(String),

    #[error("subspace K is not isotropic (max pairing {max_pairing:.3e})")]
    NotIsotropic { max_pairing: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("connection axiom violated: theta(X_gamma) != gamma (residual {residual:.3e})")]
    ConnectionAxiom { residual: f64 },

    #[error("moment map nonzero: |F+| = {norm:.3e}, scenario is not an instanton")]
    MomentMapNonzero { norm: f64 },

    #[error("tier unavailable: {0}")]
    TierUnavailable(String),

    #[error("unsupported dimension m = {0} (supported: 1..=6, spin machinery requires 4)")]
    UnsupportedDimension(usize),

    #[error("scenario error: {0}")]
    Scenario(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, GkError>;
