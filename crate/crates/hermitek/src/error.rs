use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain (bad knots, k out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Quantities of different arithmetic modes were combined.
    #[error("arithmetic mode mismatch: {0}")]
    ModeMismatch(String),

    /// A linear system was too ill-conditioned even after escalation.
    #[error("ill-conditioned system: condition estimate {cond:.3e} at {bits} bits")]
    IllConditioned { cond: f64, bits: u32 },

    /// Exactly singular collocation or solve.
    #[error("singular system: {0}")]
    Singular(String),

    /// A numeric procedure failed to certify its result.
    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
