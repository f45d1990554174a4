//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A xi exponent left the configured Laurent window. Overflow is an
    /// error by design, never a silent truncation.
    #[error("xi exponent {found} outside window [{min}, {max}]")]
    Window { found: i64, min: i64, max: i64 },

    /// Input outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Series reciprocal of a class without an invertible constant term.
    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// Negative xi powers survived a xi -> 0 limit.
    #[error("singular limit: residual xi^{0} term")]
    SingularLimit(i64),

    /// Evaluation at a pole of a rational expression.
    #[error("pole error: {0}")]
    Pole(String),

    /// Derivative order exceeded the configured maximum.
    #[error("derivative order {found} exceeds maximum {max}")]
    Order { found: u32, max: u32 },

    /// Mismatched internal or spatial index structure.
    #[error("index error: {0}")]
    Index(String),

    /// A field configuration was missing an assignment or was otherwise
    /// unusable for evaluation.
    #[error("config error: {0}")]
    Config(String),

    /// Catalog file could not be read or parsed.
    #[error("catalog error: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
