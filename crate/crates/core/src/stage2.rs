//! Stage-2 best responses: fight thresholds in shock space, the four `beta`
//! bounds that make each decision shock-independent, the peace-guaranteeing
//! interval, and the critical uncertainty at which it vanishes.
//!
//! Thresholds are extended reals: the government never fights once
//! `beta >= alpha` (threshold `-inf`), the rebels never fight once
//! `1 - beta >= alpha` (threshold `+inf`). The rebel threshold follows the
//! sign convention `t_r = x - log(alpha/(1-beta) - 1)`, which is the one the
//! derivation actually produces.

use crate::logistic;
use crate::model::GameParams;
use crate::roots::bisect;

/// An extended real, kept tagged so infinities never enter arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    NegInf,
    Finite(f64),
    PosInf,
}

impl Extended {
    pub fn as_finite(self) -> Option<f64> {
        match self {
            Extended::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Clamps to a finite interval; infinities map to the matching endpoint.
    pub fn clamp_to(self, lo: f64, hi: f64) -> f64 {
        match self {
            Extended::NegInf => lo,
            Extended::PosInf => hi,
            Extended::Finite(v) => v.clamp(lo, hi),
        }
    }
}

/// Shock-space fight thresholds at a given transfer `beta`.
///
/// The government prefers war for shocks strictly below `t_g`; the rebels
/// prefer war for shocks strictly above `t_r`. Whenever both are finite,
/// `t_r >= t_g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FightThresholds {
    pub t_g: Extended,
    pub t_r: Extended,
}

/// A stage-2 decision; indifference resolves to `Accept`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Accept,
    Fight,
}

/// The four transfer bounds that make each side's decision shock-free.
///
/// Below `beta_g_minus` the government fights for every shock in the
/// support; above `beta_g_plus` it never fights. Symmetrically, the rebels
/// never fight below `beta_r_minus` and always fight above `beta_r_plus`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSet {
    pub beta_g_minus: f64,
    pub beta_g_plus: f64,
    pub beta_r_minus: f64,
    pub beta_r_plus: f64,
}

/// The transfer interval `[beta_g_plus, beta_r_minus]` on which neither
/// side ever fights, when non-empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeaceInterval {
    pub exists: bool,
    pub lo: f64,
    pub hi: f64,
}

/// Critical half-width of a symmetric support; `Unbounded` when the peace
/// interval never vanishes (`alpha <= 1/2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalWidth {
    Bounded(f64),
    Unbounded,
}

impl CriticalWidth {
    pub fn as_bounded(self) -> Option<f64> {
        match self {
            CriticalWidth::Bounded(v) => Some(v),
            CriticalWidth::Unbounded => None,
        }
    }
}

/// Fight thresholds in shock space at transfer `beta`.
///
/// `t_g = log(alpha/beta - 1) + x` for `0 < beta < alpha`, `+inf` at
/// `beta = 0` (the government always fights for nothing) and `-inf` for
/// `beta >= alpha`; `t_r = x - log(alpha/(1-beta) - 1)` for
/// `1 - alpha < beta < 1`, `-inf` at `beta = 1` and `+inf` for
/// `beta <= 1 - alpha`.
pub fn fight_thresholds(params: &GameParams, beta: f64) -> FightThresholds {
    let x = params.arms_gap();
    let alpha = params.alpha;
    let t_g = if beta <= 0.0 {
        Extended::PosInf
    } else if beta >= alpha {
        Extended::NegInf
    } else {
        Extended::Finite((alpha / beta - 1.0).ln() + x)
    };
    let t_r = if beta >= 1.0 {
        Extended::NegInf
    } else if 1.0 - beta >= alpha {
        Extended::PosInf
    } else {
        Extended::Finite(x - (alpha / (1.0 - beta) - 1.0).ln())
    };
    FightThresholds { t_g, t_r }
}

/// Stage-2 best responses of (government, rebels) at shock `eps`.
///
/// The government fights iff `eps < t_g` strictly, the rebels iff
/// `eps > t_r` strictly; exact indifference accepts.
pub fn best_response(params: &GameParams, beta: f64, eps: f64) -> (Decision, Decision) {
    let th = fight_thresholds(params, beta);
    let g = match th.t_g {
        Extended::PosInf => Decision::Fight,
        Extended::NegInf => Decision::Accept,
        Extended::Finite(t) => {
            if eps < t {
                Decision::Fight
            } else {
                Decision::Accept
            }
        }
    };
    let r = match th.t_r {
        Extended::NegInf => Decision::Fight,
        Extended::PosInf => Decision::Accept,
        Extended::Finite(t) => {
            if eps > t {
                Decision::Fight
            } else {
                Decision::Accept
            }
        }
    };
    (g, r)
}

/// The four `beta` bounds, in closed form.
pub fn threshold_set(params: &GameParams) -> ThresholdSet {
    let x = params.arms_gap();
    let alpha = params.alpha;
    ThresholdSet {
        beta_g_minus: alpha * logistic(x - params.a_hi),
        beta_g_plus: alpha * logistic(x - params.a_lo),
        beta_r_minus: 1.0 - alpha * logistic(params.a_hi - x),
        beta_r_plus: 1.0 - alpha * logistic(params.a_lo - x),
    }
}

/// The peace-guaranteeing interval `[beta_g_plus, beta_r_minus]`.
pub fn peace_interval(params: &GameParams) -> PeaceInterval {
    let ts = threshold_set(params);
    PeaceInterval {
        exists: ts.beta_g_plus <= ts.beta_r_minus,
        lo: ts.beta_g_plus,
        hi: ts.beta_r_minus,
    }
}

/// Critical half-width of a symmetric support `[-a, a]`, in closed form.
///
/// For `alpha > 1/2` returns `ln(z)` where `z` is the admissible root of
/// `(1-2alpha) z^2 - zeta z + 1 = 0` with `zeta = (alpha-1)(e^x + e^-x)`;
/// for `alpha <= 1/2` the peace interval exists at every width.
pub fn a_crit(alpha: f64, x: f64) -> CriticalWidth {
    if alpha <= 0.5 {
        return CriticalWidth::Unbounded;
    }
    let zeta = (alpha - 1.0) * (x.exp() + (-x).exp());
    let q = 1.0 - 2.0 * alpha; // strictly negative here
    let z = (zeta - (zeta * zeta - 4.0 * q).sqrt()) / (2.0 * q);
    CriticalWidth::Bounded(z.ln())
}

/// Numeric critical width for an arbitrary support shape.
///
/// The support `[a_lo, a_hi]` is scaled about the origin by `s > 0`; the
/// returned value is the full width `s*(a_hi - a_lo)` at which the peace
/// interval vanishes, found by bisection, or `Unbounded` if it survives up
/// to a scale of width 200.
pub fn critical_width_general(params: &GameParams) -> CriticalWidth {
    let gap = |s: f64| {
        let scaled = GameParams {
            a_lo: s * params.a_lo,
            a_hi: s * params.a_hi,
            ..*params
        };
        let ts = threshold_set(&scaled);
        ts.beta_r_minus - ts.beta_g_plus
    };
    let width = params.width();
    let s_max = 200.0 / width;
    if gap(s_max) > 0.0 {
        return CriticalWidth::Unbounded;
    }
    if gap(1e-12) <= 0.0 {
        // Vanishes already at zero width: only possible in the limit, so
        // report zero.
        return CriticalWidth::Bounded(0.0);
    }
    let s = bisect(gap, 1e-12, s_max, 1e-13);
    CriticalWidth::Bounded(s * width)
}
