//! Plain-text `key=value` parameter files and flag merging.
//!
//! The accepted keys are `y_g`, `y_r`, `alpha`, `a_lo`, `a_hi` and `a_half`
//! (the last for a symmetric support). `#` starts a comment; blank lines are
//! ignored; unknown and duplicate keys are hard errors. CLI flags override
//! file values field by field.

use crate::error::ConfigError;
use std::path::Path;

/// A partially specified parameter vector, as read from a file or flags.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PartialParams {
    pub y_g: Option<f64>,
    pub y_r: Option<f64>,
    pub alpha: Option<f64>,
    pub a_lo: Option<f64>,
    pub a_hi: Option<f64>,
    pub a_half: Option<f64>,
}

impl PartialParams {
    /// Field-by-field merge; values in `overrides` win.
    pub fn merged_with(self, overrides: PartialParams) -> PartialParams {
        PartialParams {
            y_g: overrides.y_g.or(self.y_g),
            y_r: overrides.y_r.or(self.y_r),
            alpha: overrides.alpha.or(self.alpha),
            a_lo: overrides.a_lo.or(self.a_lo),
            a_hi: overrides.a_hi.or(self.a_hi),
            a_half: overrides.a_half.or(self.a_half),
        }
    }
}

/// Parses the text of a config file.
pub fn parse_config(text: &str) -> Result<PartialParams, ConfigError> {
    let mut out = PartialParams::default();
    let mut seen: Vec<&str> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Malformed {
                line,
                text: content.to_string(),
            });
        };
        let key = key.trim();
        let value = value.trim();
        let slot = match key {
            "y_g" => &mut out.y_g,
            "y_r" => &mut out.y_r,
            "alpha" => &mut out.alpha,
            "a_lo" => &mut out.a_lo,
            "a_hi" => &mut out.a_hi,
            "a_half" => &mut out.a_half,
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        };
        if seen.contains(&key) {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
        let parsed: f64 = value.parse().map_err(|_| ConfigError::BadNumber {
            line,
            key: key.to_string(),
            value: value.to_string(),
        })?;
        *slot = Some(parsed);
        seen.push(key);
    }
    Ok(out)
}

/// Reads and parses a config file from disk.
pub fn load_config(path: &Path) -> Result<PartialParams, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_file() {
        let p = parse_config("y_g = 1.0\ny_r=0\nalpha=0.7 # survival share\n\na_half=0.5\n").unwrap();
        assert_eq!(p.y_g, Some(1.0));
        assert_eq!(p.y_r, Some(0.0));
        assert_eq!(p.alpha, Some(0.7));
        assert_eq!(p.a_half, Some(0.5));
        assert_eq!(p.a_lo, None);
    }

    #[test]
    fn rejects_unknown_key() {
        assert!(matches!(
            parse_config("beta=0.5\n"),
            Err(ConfigError::UnknownKey { line: 1, .. })
        ));
    }

    #[test]
    fn rejects_duplicate_key() {
        assert!(matches!(
            parse_config("alpha=0.7\nalpha=0.8\n"),
            Err(ConfigError::DuplicateKey { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_bad_number_and_malformed() {
        assert!(matches!(
            parse_config("alpha=seven"),
            Err(ConfigError::BadNumber { .. })
        ));
        assert!(matches!(
            parse_config("just words"),
            Err(ConfigError::Malformed { .. })
        ));
    }

    #[test]
    fn flags_override_file() {
        let file = parse_config("alpha=0.7\ny_g=1.0").unwrap();
        let flags = PartialParams {
            alpha: Some(0.9),
            ..Default::default()
        };
        let merged = file.merged_with(flags);
        assert_eq!(merged.alpha, Some(0.9));
        assert_eq!(merged.y_g, Some(1.0));
    }
}
