//! Stage-1 optimization: the government's optimal transfer `beta*`.
//!
//! On the rebels-may-fight branch the payoff derivative equals
//! `g(beta)/(2a)` where `g` is the first-order-condition residual; the
//! boundary candidate `beta_r_minus` (guarantee peace) competes with the
//! interior stationary maxima of that branch. In the high-uncertainty
//! regime the both-may-fight segment has derivative
//! `(g(beta) - a - t_g(beta))/(2a)` and the search runs over
//! `(beta_r_minus, beta_r_plus)` with the segment breakpoints as
//! additional candidates.

use crate::error::OptimizerError;
use crate::model::SymmetricParams;
use crate::payoff::gov_payoff_auto;
use crate::roots::bisect;
use crate::stage2::{fight_thresholds, peace_interval, threshold_set, Extended};

const DOMAIN_GUARD: f64 = 1e-10;
const TIE_TOL: f64 = 1e-10;

/// The first-order-condition residual `g` evaluated at one transfer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocResidual {
    pub value: f64,
    pub beta: f64,
}

/// A root of `g`, classified by the local curvature of the payoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationaryKind {
    Maximum,
    Minimum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub beta: f64,
    pub kind: StationaryKind,
}

/// Which strategy the optimum implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `beta* = beta_r_minus`: peace for every shock realisation.
    GuaranteePeace,
    /// `beta* > beta_r_minus`: the rebels fight for high shocks.
    RiskWar,
    /// Empty peace interval; war cannot be ruled out at any transfer.
    HighUncertainty,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::GuaranteePeace => "GuaranteePeace",
            Regime::RiskWar => "RiskWar",
            Regime::HighUncertainty => "HighUncertainty",
        })
    }
}

/// The solved stage-1 problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub beta_star: f64,
    pub regime: Regime,
    /// Every candidate evaluated, as `(beta, payoff)` pairs.
    pub candidates: Vec<(f64, f64)>,
    pub is_unique: bool,
    /// Payoff gap between the best and second-best candidate
    /// (infinite when only one candidate exists).
    pub near_tie_gap: f64,
}

/// Whether the payoff derivative at `beta_r_minus` can be positive, i.e.
/// whether a risk-war stretch exists for some arms gap, together with the
/// admissible band of `x` values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwitchCondition {
    /// Discriminant negative (`alpha*(a+2) < 2`): the derivative at
    /// `beta_r_minus` is never positive for any arms gap.
    NoRealRoots,
    Band {
        /// Whether these params' own `x` lies inside the band.
        holds: bool,
        x_lo: f64,
        x_hi: f64,
    },
}

/// A detected jump discontinuity of `beta*` as a function of the
/// half-width, located by bisection on the candidate-payoff tie.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpPoint {
    pub a_jump: f64,
    /// Payoff gap between the boundary and interior candidates at the
    /// reported point.
    pub tie_gap: f64,
    pub beta_before: f64,
    pub beta_after: f64,
}

fn domain(params: &SymmetricParams) -> (f64, f64) {
    (1.0 - params.alpha(), 1.0)
}

/// The FOC residual
/// `g(beta) = x + a + alpha(1-alpha)/((1-beta)(1-alpha-beta))
///            - log((1-alpha-beta)/(beta-1))`.
pub fn foc_residual(params: &SymmetricParams, beta: f64) -> Result<FocResidual, OptimizerError> {
    let (lo, hi) = domain(params);
    if !(beta > lo + DOMAIN_GUARD && beta < hi - DOMAIN_GUARD) {
        return Err(OptimizerError::DomainViolation { beta, lo, hi });
    }
    let alpha = params.alpha();
    let value = params.arms_gap()
        + params.half_width()
        + alpha * (1.0 - alpha) / ((1.0 - beta) * (1.0 - alpha - beta))
        - ((1.0 - alpha - beta) / (beta - 1.0)).ln();
    Ok(FocResidual { value, beta })
}

/// The alternate printed form of the same residual,
/// `alpha*beta/((1-beta)(1-alpha-beta)) + alpha/(1-beta) + a + x - log(...)`;
/// algebraically identical to [`foc_residual`], kept as a cross-check.
pub fn foc_residual_alt(
    params: &SymmetricParams,
    beta: f64,
) -> Result<FocResidual, OptimizerError> {
    let (lo, hi) = domain(params);
    if !(beta > lo + DOMAIN_GUARD && beta < hi - DOMAIN_GUARD) {
        return Err(OptimizerError::DomainViolation { beta, lo, hi });
    }
    let alpha = params.alpha();
    let value = alpha * beta / ((1.0 - beta) * (1.0 - alpha - beta))
        + alpha / (1.0 - beta)
        + params.half_width()
        + params.arms_gap()
        - ((1.0 - alpha - beta) / (beta - 1.0)).ln();
    Ok(FocResidual { value, beta })
}

/// Scans `f` on `n` points of `(lo, hi)` clustered toward both endpoints
/// and bisects every sign change to a root.
fn scan_roots<F: Fn(f64) -> f64 + Copy>(f: F, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    if !(hi > lo) {
        return roots;
    }
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=n {
        // Cosine spacing concentrates points near both ends, where the
        // residual's poles live.
        let u = 0.5 * (1.0 - (std::f64::consts::PI * k as f64 / n as f64).cos());
        let beta = lo + (hi - lo) * u;
        let v = f(beta);
        if !v.is_finite() {
            prev = None;
            continue;
        }
        if let Some((pb, pv)) = prev {
            if v == 0.0 {
                roots.push(beta);
            } else if (pv < 0.0) != (v < 0.0) && pv != 0.0 {
                roots.push(bisect(f, pb, beta, 1e-13));
            }
        }
        prev = Some((beta, v));
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-10);
    roots
}

/// Roots of the FOC residual in `(beta_r_minus, beta_r_plus)`, classified
/// by a central-difference derivative of `g` (a root with `g` falling is a
/// payoff maximum).
pub fn stationary_points(params: &SymmetricParams) -> Vec<StationaryPoint> {
    let ts = threshold_set(params.game());
    classify_roots(params, reb_branch_roots(params, ts.beta_r_minus, ts.beta_r_plus))
}

fn reb_branch_roots(params: &SymmetricParams, lo: f64, hi: f64) -> Vec<f64> {
    let (dlo, dhi) = domain(params);
    let lo = lo.max(dlo + 2.0 * DOMAIN_GUARD);
    let hi = hi.min(dhi - 2.0 * DOMAIN_GUARD);
    let g = |beta: f64| match foc_residual(params, beta) {
        Ok(r) => r.value,
        Err(_) => f64::NAN,
    };
    scan_roots(g, lo, hi, 2048)
}

fn classify_roots(params: &SymmetricParams, roots: Vec<f64>) -> Vec<StationaryPoint> {
    let ts = threshold_set(params.game());
    let h = 1e-5 * (ts.beta_r_plus - ts.beta_r_minus);
    roots
        .into_iter()
        .map(|beta| {
            let up = foc_residual(params, beta + h).map(|r| r.value).unwrap_or(-1.0);
            let dn = foc_residual(params, beta - h).map(|r| r.value).unwrap_or(1.0);
            let kind = if up - dn < 0.0 {
                StationaryKind::Maximum
            } else {
                StationaryKind::Minimum
            };
            StationaryPoint { beta, kind }
        })
        .collect()
}

/// Derivative (times `2a`) of the both-may-fight segment:
/// `g(beta) - a - t_g(beta)`.
fn both_branch_residual(params: &SymmetricParams, beta: f64) -> f64 {
    let g = match foc_residual(params, beta) {
        Ok(r) => r.value,
        Err(_) => return f64::NAN,
    };
    match fight_thresholds(params.game(), beta).t_g {
        Extended::Finite(t_g) => g - params.half_width() - t_g,
        // t_g = -inf: the government never fights here, so the segment
        // derivative reduces to the rebels-only expression.
        Extended::NegInf => f64::NAN,
        Extended::PosInf => f64::NAN,
    }
}

fn pick_best(mut candidates: Vec<(f64, f64)>, regime_of: impl Fn(f64) -> Regime) -> Solution {
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    candidates.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12);
    let best_payoff = candidates
        .iter()
        .map(|c| c.1)
        .fold(f64::NEG_INFINITY, f64::max);
    // Peace-preferring tie rule: among near-ties take the smallest beta.
    let near: Vec<&(f64, f64)> = candidates
        .iter()
        .filter(|c| best_payoff - c.1 <= TIE_TOL)
        .collect();
    let beta_star = near[0].0;
    let is_unique = near.len() == 1;
    let mut gap = f64::INFINITY;
    for c in &candidates {
        let d = best_payoff - c.1;
        if d > 0.0 && d < gap {
            gap = d;
        }
    }
    let near_tie_gap = if is_unique {
        gap
    } else {
        near.iter().map(|c| best_payoff - c.1).fold(0.0, f64::max)
    };
    Solution {
        regime: regime_of(beta_star),
        beta_star,
        candidates,
        is_unique,
        near_tie_gap,
    }
}

/// Solves the stage-1 problem, auto-detecting the regime.
pub fn solve(params: &SymmetricParams) -> Solution {
    let ts = threshold_set(params.game());
    let pi = peace_interval(params.game());
    if pi.exists {
        let mut candidates = vec![(ts.beta_r_minus, gov_payoff_auto(params, ts.beta_r_minus).total)];
        for sp in stationary_points(params) {
            if sp.kind == StationaryKind::Maximum
                && sp.beta > ts.beta_r_minus
                && sp.beta < ts.beta_r_plus
            {
                candidates.push((sp.beta, gov_payoff_auto(params, sp.beta).total));
            }
        }
        let boundary = ts.beta_r_minus;
        pick_best(candidates, move |b| {
            if (b - boundary).abs() <= 1e-12 {
                Regime::GuaranteePeace
            } else {
                Regime::RiskWar
            }
        })
    } else {
        // High uncertainty: the optimum is interior to
        // [beta_r_minus, beta_r_plus); candidates are the segment
        // breakpoints plus stationary points of each segment.
        let mut candidates = vec![
            (ts.beta_r_minus, gov_payoff_auto(params, ts.beta_r_minus).total),
            (ts.beta_g_plus, gov_payoff_auto(params, ts.beta_g_plus).total),
        ];
        let (dlo, dhi) = domain(params);
        let lo = ts.beta_r_minus.max(dlo + 2.0 * DOMAIN_GUARD);
        let hi = ts.beta_g_plus.min(dhi - 2.0 * DOMAIN_GUARD);
        for beta in scan_roots(|b| both_branch_residual(params, b), lo, hi, 2048) {
            candidates.push((beta, gov_payoff_auto(params, beta).total));
        }
        for beta in reb_branch_roots(params, ts.beta_g_plus, ts.beta_r_plus) {
            candidates.push((beta, gov_payoff_auto(params, beta).total));
        }
        pick_best(candidates, |_| Regime::HighUncertainty)
    }
}

/// The analytic switch condition: whether the payoff derivative at
/// `beta_r_minus` is positive, as a polynomial sign test in
/// `w = exp(x - a)`.
pub fn switch_condition(params: &SymmetricParams) -> SwitchCondition {
    let alpha = params.alpha();
    let a = params.half_width();
    if alpha * (a + 2.0) < 2.0 {
        return SwitchCondition::NoRealRoots;
    }
    let eta = alpha * (a + 1.0) - 1.0;
    let disc = (eta * eta - (1.0 - alpha) * (1.0 - alpha)).max(0.0);
    let sq = disc.sqrt();
    let w_lo = (eta - sq) / (1.0 - alpha);
    let w_hi = (eta + sq) / (1.0 - alpha);
    let x_lo = w_lo.ln() + a;
    let x_hi = w_hi.ln() + a;
    let x = params.arms_gap();
    SwitchCondition::Band {
        holds: x > x_lo && x < x_hi,
        x_lo,
        x_hi,
    }
}

/// Payoff advantage of the best interior candidate over the boundary
/// candidate `beta_r_minus`; negative when no interior maximum exists.
pub(crate) fn interior_advantage(params: &SymmetricParams) -> f64 {
    let ts = threshold_set(params.game());
    let boundary = gov_payoff_auto(params, ts.beta_r_minus).total;
    let mut best = f64::NEG_INFINITY;
    for sp in stationary_points(params) {
        if sp.kind == StationaryKind::Maximum && sp.beta > ts.beta_r_minus {
            best = best.max(gov_payoff_auto(params, sp.beta).total);
        }
    }
    if best.is_finite() {
        best - boundary
    } else {
        -1.0
    }
}

/// Scans an increasing half-width grid at fixed `(alpha, x)` for a jump
/// discontinuity of `beta*`, refining the first bracket found by bisection
/// on the candidate-payoff tie.
pub fn detect_jump(params: &SymmetricParams, a_grid: &[f64]) -> Option<JumpPoint> {
    let mut prev: Option<(f64, f64, f64)> = None; // (a, beta_star, beta_r_minus)
    for &a in a_grid {
        let p = match params.with_half_width(a) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let sol = solve(&p);
        let brm = threshold_set(p.game()).beta_r_minus;
        if let Some((pa, pb, pbrm)) = prev {
            let local = (brm - pbrm).abs();
            if (sol.beta_star - pb).abs() > 10.0 * (local + 1e-12) {
                let a_jump = bisect(
                    |aa| match params.with_half_width(aa) {
                        Ok(p) => interior_advantage(&p),
                        Err(_) => -1.0,
                    },
                    pa,
                    a,
                    1e-12,
                );
                let tie_gap = params
                    .with_half_width(a_jump)
                    .map(|p| interior_advantage(&p).abs())
                    .unwrap_or(f64::INFINITY);
                return Some(JumpPoint {
                    a_jump,
                    tie_gap,
                    beta_before: pb,
                    beta_after: sol.beta_star,
                });
            }
        }
        prev = Some((a, sol.beta_star, brm));
    }
    None
}
