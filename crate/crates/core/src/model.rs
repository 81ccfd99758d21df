//! Game parameters, the shock distribution and the contest success function.
//!
//! Conventions used throughout the crate:
//!
//! * `x = y_g - y_r` is the government's pre-shock arms advantage;
//! * *uncertainty* `a` is the full support width `a_hi - a_lo`;
//! * `a_half` (written `ã` in doc comments) is the half-width of a
//!   symmetric support `[-ã, ã]`. Closed forms that assume symmetry take
//!   [`SymmetricParams`] and state their convention explicitly.

use crate::error::{ModelError, ValidationError};
use crate::logistic;

/// The full parameter vector of the game.
///
/// Arms are on a log scale; only differences enter any formula, so any
/// finite real is accepted. `alpha` is the share of resources surviving a
/// war, strictly inside `(0,1)`. The rebel arms shock has bounded support
/// `[a_lo, a_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameParams {
    pub y_g: f64,
    pub y_r: f64,
    pub alpha: f64,
    pub a_lo: f64,
    pub a_hi: f64,
}

impl GameParams {
    /// Validates all invariants, returning the params unchanged or the
    /// full list of violations.
    pub fn new(y_g: f64, y_r: f64, alpha: f64, a_lo: f64, a_hi: f64) -> Result<Self, ValidationError> {
        Self {
            y_g,
            y_r,
            alpha,
            a_lo,
            a_hi,
        }
        .validate()
    }

    pub fn validate(self) -> Result<Self, ValidationError> {
        let mut errs = Vec::new();
        for (name, v) in [
            ("y_g", self.y_g),
            ("y_r", self.y_r),
            ("alpha", self.alpha),
            ("a_lo", self.a_lo),
            ("a_hi", self.a_hi),
        ] {
            if !v.is_finite() {
                errs.push(ModelError::NonFiniteField(name));
            }
        }
        if self.alpha.is_finite() && !(self.alpha > 0.0 && self.alpha < 1.0) {
            errs.push(ModelError::AlphaOutOfRange(self.alpha));
        }
        if self.a_lo.is_finite() && self.a_hi.is_finite() && !(self.a_lo < self.a_hi) {
            errs.push(ModelError::DegenerateSupport(self.a_lo, self.a_hi));
        }
        if errs.is_empty() {
            Ok(self)
        } else {
            Err(ValidationError(errs))
        }
    }

    /// Pre-shock arms advantage of the government, `y_g - y_r`.
    pub fn arms_gap(&self) -> f64 {
        self.y_g - self.y_r
    }

    /// Uncertainty as full support width, `a_hi - a_lo`.
    pub fn width(&self) -> f64 {
        self.a_hi - self.a_lo
    }
}

/// Parameters with the shock uniform on a symmetric interval `[-ã, ã]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricParams {
    params: GameParams,
    half_width: f64,
}

impl SymmetricParams {
    pub fn new(y_g: f64, y_r: f64, alpha: f64, half_width: f64) -> Result<Self, ValidationError> {
        if !(half_width.is_finite() && half_width > 0.0) {
            // Reported through the same channel as the base invariants.
            let mut errs = vec![ModelError::AsymmetricSupport(half_width)];
            if let Err(ValidationError(mut base)) =
                GameParams::new(y_g, y_r, alpha, -half_width.abs().max(1e-300), half_width)
            {
                errs.append(&mut base);
            }
            return Err(ValidationError(errs));
        }
        let params = GameParams::new(y_g, y_r, alpha, -half_width, half_width)?;
        Ok(Self { params, half_width })
    }

    pub fn game(&self) -> &GameParams {
        &self.params
    }

    /// Half-width ã of the symmetric support.
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Same game with a different half-width.
    pub fn with_half_width(&self, half_width: f64) -> Result<Self, ValidationError> {
        Self::new(self.params.y_g, self.params.y_r, self.params.alpha, half_width)
    }

    pub fn alpha(&self) -> f64 {
        self.params.alpha
    }

    pub fn arms_gap(&self) -> f64 {
        self.params.arms_gap()
    }
}

/// Win probabilities of the two sides after the shock is realised.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WinProb {
    pub p_g: f64,
    pub p_r: f64,
}

/// Logit contest success function.
///
/// `p_g = 1 / (1 + exp((y_r + eps) - y_g))`, evaluated through the stable
/// logistic on the signed difference so extreme shocks cannot overflow.
/// Total on finite inputs; `eps` need not lie inside the shock support.
pub fn win_prob(params: &GameParams, eps: f64) -> WinProb {
    let d = (params.y_r + eps) - params.y_g;
    WinProb {
        p_g: logistic(-d),
        p_r: logistic(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn base() -> GameParams {
        GameParams::new(0.0, 0.0, 0.7, -1.0, 1.0).unwrap()
    }

    #[test]
    fn win_prob_symmetric_point() {
        let p = win_prob(&base(), 0.0);
        assert_eq!(p.p_g, 0.5);
        assert_eq!(p.p_r, 0.5);
    }

    #[test]
    fn win_prob_direct_evaluation() {
        let params = GameParams::new(1.0, 0.0, 0.7, -1.0, 1.0).unwrap();
        let p = win_prob(&params, 0.0);
        assert!((p.p_g - 0.7310585786300049).abs() < 1e-12);
        assert!((p.p_g + p.p_r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn win_prob_extreme_shock_no_overflow() {
        let p = win_prob(&base(), 30.0);
        assert!(p.p_g > 0.0 && p.p_g < 1e-12);
        assert!(p.p_r > 1.0 - 1e-12 && p.p_r <= 1.0);
        let p = win_prob(&base(), 1e4);
        assert!(p.p_g >= 0.0 && p.p_r.is_finite());
    }

    #[test]
    fn validate_ok() {
        assert!(GameParams::new(0.3, -0.2, 0.7, -1.0, 1.0).is_ok());
    }

    #[test]
    fn validate_alpha_boundary_excluded() {
        let err = GameParams::new(0.0, 0.0, 1.0, -1.0, 1.0).unwrap_err();
        assert!(err.0.contains(&ModelError::AlphaOutOfRange(1.0)));
    }

    #[test]
    fn validate_degenerate_support() {
        let err = GameParams::new(0.0, 0.0, 0.7, 1.0, 1.0).unwrap_err();
        assert!(err.0.contains(&ModelError::DegenerateSupport(1.0, 1.0)));
    }

    #[test]
    fn validate_collects_all_violations() {
        let err = GameParams::new(f64::NAN, 0.0, 2.0, 1.0, 0.0).unwrap_err();
        assert!(err.0.len() >= 3);
    }

    #[test]
    fn symmetric_params_checks_half_width() {
        assert!(SymmetricParams::new(0.0, 0.0, 0.7, 0.5).is_ok());
        assert!(SymmetricParams::new(0.0, 0.0, 0.7, 0.0).is_err());
        assert!(SymmetricParams::new(0.0, 0.0, 0.7, -1.0).is_err());
    }

    #[test]
    fn label_swap_symmetry_is_exact() {
        // p_g(y_g, y_r, eps) == p_r(y_r + eps, y_g, 0) bit for bit.
        for (y_g, y_r, eps) in [(0.1, 0.2, 0.3), (1.5, -2.0, 0.7), (-0.4, 0.9, -1.3)] {
            let a = GameParams { y_g, y_r, alpha: 0.7, a_lo: -1.0, a_hi: 1.0 };
            let b = GameParams { y_g: y_r + eps, y_r: y_g, alpha: 0.7, a_lo: -1.0, a_hi: 1.0 };
            assert_eq!(win_prob(&a, eps).p_g, win_prob(&b, 0.0).p_r);
        }
    }

    proptest! {
        #[test]
        fn win_prob_in_open_unit_interval(
            // |d| <= 36 keeps 1 - p_g above f64 resolution, so the open
            // interval is meaningful.
            y_g in -12.0f64..12.0, y_r in -12.0f64..12.0, eps in -12.0f64..12.0
        ) {
            let params = GameParams { y_g, y_r, alpha: 0.7, a_lo: -1.0, a_hi: 1.0 };
            let p = win_prob(&params, eps);
            prop_assert!(p.p_g > 0.0 && p.p_g < 1.0);
            prop_assert!((p.p_g + p.p_r - 1.0).abs() < 1e-12);
        }

        #[test]
        fn win_prob_translation_invariant(
            y_g in -5.0f64..5.0, y_r in -5.0f64..5.0, eps in -5.0f64..5.0, c in -20.0f64..20.0
        ) {
            let a = GameParams { y_g, y_r, alpha: 0.7, a_lo: -1.0, a_hi: 1.0 };
            let b = GameParams { y_g: y_g + c, y_r: y_r + c, ..a };
            prop_assert!((win_prob(&a, eps).p_g - win_prob(&b, eps).p_g).abs() < 1e-12);
        }
    }
}
