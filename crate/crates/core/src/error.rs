//! Error types shared across the crate.

use thiserror::Error;

/// A single violated parameter invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("AlphaOutOfRange: alpha must lie strictly inside (0,1), got {0}")]
    AlphaOutOfRange(f64),
    #[error("DegenerateSupport: shock support needs a_lo < a_hi, got [{0}, {1}]")]
    DegenerateSupport(f64, f64),
    #[error("NonFiniteField: field `{0}` is not finite")]
    NonFiniteField(&'static str),
    #[error("AsymmetricSupport: symmetric params need a_hi = -a_lo = half_width > 0, got {0}")]
    AsymmetricSupport(f64),
}

/// The full list of invariants violated by a parameter vector.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ValidationError(pub Vec<ModelError>);

impl std::fmt::Display for ValidationError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for e in &self.0 {
            if !first {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PayoffError {
    #[error("BoundsOutOfSupport: [{lo}, {hi}] is not an interval inside [{a_lo}, {a_hi}]")]
    BoundsOutOfSupport { lo: f64, hi: f64, a_lo: f64, a_hi: f64 },
    /// The low-uncertainty payoff was requested while the peace interval is
    /// empty, or vice versa.
    #[error("RegimeMismatch: {0}")]
    RegimeMismatch(&'static str),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizerError {
    #[error("DomainViolation: beta {beta} outside the admissible range ({lo}, {hi})")]
    DomainViolation { beta: f64, lo: f64, hi: f64 },
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: expected `key=value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: cannot parse `{value}` as a number for `{key}`")]
    BadNumber {
        line: usize,
        key: String,
        value: String,
    },
}
