//! Expected payoffs under the symmetric uniform shock: the government's
//! five-branch piecewise objective in the low-uncertainty regime, the
//! high-uncertainty variant with a both-may-fight region, the rebels'
//! expected payoff assembled by complementarity, and the unconditional win
//! probability.
//!
//! Every branch integral uses the closed antiderivative of the logistic;
//! quadrature appears only in tests as an independent oracle.

use crate::error::PayoffError;
use crate::model::{GameParams, SymmetricParams};
use crate::softplus;
use crate::stage2::{fight_thresholds, peace_interval, threshold_set};

/// Which piece of the piecewise objective a transfer falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Transfer so low the government fights for every shock.
    AlwaysWarLow,
    /// Only the government may fight, for low shock realisations.
    GovMayFight,
    /// Neither side ever fights.
    GuaranteedPeace,
    /// Only the rebels may fight, for high shock realisations.
    RebMayFight,
    /// Transfer so high the rebels fight for every shock.
    AlwaysWarHigh,
    /// High-uncertainty middle region: either side may fight.
    BothMayFight,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Branch::AlwaysWarLow => "AlwaysWarLow",
            Branch::GovMayFight => "GovMayFight",
            Branch::GuaranteedPeace => "GuaranteedPeace",
            Branch::RebMayFight => "RebMayFight",
            Branch::AlwaysWarHigh => "AlwaysWarHigh",
            Branch::BothMayFight => "BothMayFight",
        };
        f.write_str(s)
    }
}

/// An expected payoff split into its war and peace contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffBreakdown {
    pub total: f64,
    pub branch: Branch,
    pub war_component: f64,
    pub peace_component: f64,
    pub prob_war: f64,
}

/// The government's unconditional win probability over the shock support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedWinProb {
    pub p_tilde_g: f64,
}

/// Integral of the government's win probability over `[lo, hi]`.
///
/// Uses the closed antiderivative: the integral equals
/// `softplus(x - lo) - softplus(x - hi)` with `x = y_g - y_r`.
pub fn partial_win_mass(params: &GameParams, lo: f64, hi: f64) -> Result<f64, PayoffError> {
    let tol = 1e-9 * (1.0 + params.width());
    if !(lo <= hi && lo >= params.a_lo - tol && hi <= params.a_hi + tol) {
        return Err(PayoffError::BoundsOutOfSupport {
            lo,
            hi,
            a_lo: params.a_lo,
            a_hi: params.a_hi,
        });
    }
    Ok(partial_win_mass_unchecked(params.arms_gap(), lo, hi))
}

fn partial_win_mass_unchecked(x: f64, lo: f64, hi: f64) -> f64 {
    (softplus(x - lo) - softplus(x - hi)).max(0.0)
}

/// Unconditional win probability of the government over the support.
pub fn expected_win_prob(params: &GameParams) -> ExpectedWinProb {
    let mass = partial_win_mass_unchecked(params.arms_gap(), params.a_lo, params.a_hi);
    ExpectedWinProb {
        p_tilde_g: mass / params.width(),
    }
}

/// The fight-region geometry of one branch: up to two disjoint shock
/// intervals on which war occurs, with thresholds clamped to the support.
#[derive(Debug, Clone, Copy)]
struct BranchGeom {
    branch: Branch,
    regions: [(f64, f64); 2],
    prob_war: f64,
}

fn geom(params: &SymmetricParams, beta: f64, branch: Branch) -> BranchGeom {
    let a = params.half_width();
    let g = params.game();
    let th = fight_thresholds(g, beta);
    let t_g = th.t_g.clamp_to(-a, a);
    let t_r = th.t_r.clamp_to(-a, a);
    let regions = match branch {
        Branch::AlwaysWarLow | Branch::AlwaysWarHigh => [(-a, a), (a, a)],
        Branch::GovMayFight => [(-a, t_g), (a, a)],
        Branch::GuaranteedPeace => [(-a, -a), (a, a)],
        Branch::RebMayFight => [(t_r, a), (a, a)],
        Branch::BothMayFight => [(-a, t_g), (t_r.max(t_g), a)],
    };
    let len: f64 = regions.iter().map(|(lo, hi)| hi - lo).sum();
    BranchGeom {
        branch,
        regions,
        prob_war: (len / (2.0 * a)).min(1.0),
    }
}

fn gov_from_geom(params: &SymmetricParams, beta: f64, geom: BranchGeom) -> PayoffBreakdown {
    let a = params.half_width();
    let x = params.arms_gap();
    let mass: f64 = geom
        .regions
        .iter()
        .map(|(lo, hi)| partial_win_mass_unchecked(x, *lo, *hi))
        .sum();
    let war = params.alpha() / (2.0 * a) * mass;
    let peace = beta * (1.0 - geom.prob_war);
    PayoffBreakdown {
        total: war + peace,
        branch: geom.branch,
        war_component: war,
        peace_component: peace,
        prob_war: geom.prob_war,
    }
}

fn reb_from_geom(params: &SymmetricParams, beta: f64, geom: BranchGeom) -> PayoffBreakdown {
    let a = params.half_width();
    let x = params.arms_gap();
    let len: f64 = geom.regions.iter().map(|(lo, hi)| hi - lo).sum();
    let mass: f64 = geom
        .regions
        .iter()
        .map(|(lo, hi)| partial_win_mass_unchecked(x, *lo, *hi))
        .sum();
    let war = params.alpha() / (2.0 * a) * (len - mass).max(0.0);
    let peace = (1.0 - beta) * (1.0 - geom.prob_war);
    PayoffBreakdown {
        total: war + peace,
        branch: geom.branch,
        war_component: war,
        peace_component: peace,
        prob_war: geom.prob_war,
    }
}

/// Branch membership in the low-uncertainty regime; exact breakpoints join
/// the more peaceful neighbour, so the peace interval is closed.
fn select_branch_low(params: &SymmetricParams, beta: f64) -> Branch {
    let ts = threshold_set(params.game());
    if beta < ts.beta_g_minus {
        Branch::AlwaysWarLow
    } else if beta < ts.beta_g_plus {
        Branch::GovMayFight
    } else if beta <= ts.beta_r_minus {
        Branch::GuaranteedPeace
    } else if beta <= ts.beta_r_plus {
        Branch::RebMayFight
    } else {
        Branch::AlwaysWarHigh
    }
}

/// Branch membership in the high-uncertainty regime (empty peace interval).
fn select_branch_high(params: &SymmetricParams, beta: f64) -> Branch {
    let ts = threshold_set(params.game());
    if beta < ts.beta_g_minus {
        Branch::AlwaysWarLow
    } else if beta < ts.beta_r_minus {
        Branch::GovMayFight
    } else if beta <= ts.beta_g_plus {
        Branch::BothMayFight
    } else if beta <= ts.beta_r_plus {
        Branch::RebMayFight
    } else {
        Branch::AlwaysWarHigh
    }
}

/// Government expected payoff in the low-uncertainty regime.
pub fn gov_payoff(params: &SymmetricParams, beta: f64) -> Result<PayoffBreakdown, PayoffError> {
    if !peace_interval(params.game()).exists {
        return Err(PayoffError::RegimeMismatch(
            "peace interval is empty; use gov_payoff_high",
        ));
    }
    let branch = select_branch_low(params, beta);
    Ok(gov_from_geom(params, beta, geom(params, beta, branch)))
}

/// Government expected payoff in the high-uncertainty regime.
pub fn gov_payoff_high(
    params: &SymmetricParams,
    beta: f64,
) -> Result<PayoffBreakdown, PayoffError> {
    if peace_interval(params.game()).exists {
        return Err(PayoffError::RegimeMismatch(
            "peace interval exists; use gov_payoff",
        ));
    }
    let branch = select_branch_high(params, beta);
    Ok(gov_from_geom(params, beta, geom(params, beta, branch)))
}

/// Government expected payoff, selecting the regime automatically.
pub fn gov_payoff_auto(params: &SymmetricParams, beta: f64) -> PayoffBreakdown {
    let branch = if peace_interval(params.game()).exists {
        select_branch_low(params, beta)
    } else {
        select_branch_high(params, beta)
    };
    gov_from_geom(params, beta, geom(params, beta, branch))
}

/// Rebel expected payoff, selecting the regime automatically.
///
/// Assembled by complementarity: the rebels win the fight region's
/// complementary probability mass; on every branch
/// `gov.total + reb.total = 1 - prob_war * (1 - alpha)`.
pub fn reb_payoff(params: &SymmetricParams, beta: f64) -> PayoffBreakdown {
    let branch = if peace_interval(params.game()).exists {
        select_branch_low(params, beta)
    } else {
        select_branch_high(params, beta)
    };
    reb_from_geom(params, beta, geom(params, beta, branch))
}

/// Evaluates one branch's government-payoff formula at an arbitrary `beta`,
/// regardless of membership. Thresholds are clamped to the support, so each
/// branch extends continuously past its breakpoints; used for two-sided
/// limit checks.
pub fn branch_value(params: &SymmetricParams, beta: f64, branch: Branch) -> f64 {
    gov_from_geom(params, beta, geom(params, beta, branch)).total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::win_prob;

    fn sym(alpha: f64, x: f64, a: f64) -> SymmetricParams {
        SymmetricParams::new(x, 0.0, alpha, a).unwrap()
    }

    /// Adaptive Simpson quadrature, used only as an oracle.
    fn simpson<F: Fn(f64) -> f64 + Copy>(f: F, lo: f64, hi: f64, tol: f64) -> f64 {
        fn s<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
            let m = 0.5 * (a + b);
            (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
        }
        fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let left = s(f, a, m);
            let right = s(f, m, b);
            if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, left, tol / 2.0, depth - 1)
                    + rec(f, m, b, right, tol / 2.0, depth - 1)
            }
        }
        rec(&f, lo, hi, s(&f, lo, hi), tol, 40)
    }

    #[test]
    fn partial_win_mass_symmetry() {
        let p = GameParams::new(0.0, 0.0, 0.7, -1.0, 1.0).unwrap();
        let m = partial_win_mass(&p, -1.0, 1.0).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        assert_eq!(partial_win_mass(&p, 0.3, 0.3).unwrap(), 0.0);
        assert!(partial_win_mass(&p, -2.0, 1.0).is_err());
        assert!(partial_win_mass(&p, 0.5, 0.4).is_err());
    }

    #[test]
    fn partial_win_mass_matches_quadrature() {
        let p = GameParams::new(1.0, 0.0, 0.7, -1.0, 1.0).unwrap();
        let closed = partial_win_mass(&p, -1.0, 1.0).unwrap();
        let quad = simpson(|e| win_prob(&p, e).p_g, -1.0, 1.0, 1e-12);
        assert!((closed - quad).abs() < 1e-9);
        let closed = partial_win_mass(&p, -0.7, 0.2).unwrap();
        let quad = simpson(|e| win_prob(&p, e).p_g, -0.7, 0.2, 1e-12);
        assert!((closed - quad).abs() < 1e-9);
    }

    #[test]
    fn expected_win_prob_examples() {
        let p = GameParams::new(0.0, 0.0, 0.7, -1.0, 1.0).unwrap();
        assert!((expected_win_prob(&p).p_tilde_g - 0.5).abs() < 1e-12);
        // Dominance limit: monotone approach to 1 as the gap grows.
        let mut last = 0.5;
        for x in [1.0, 2.0, 4.0, 6.0] {
            let p = GameParams::new(x, 0.0, 0.7, -1.0, 1.0).unwrap();
            let v = expected_win_prob(&p).p_tilde_g;
            assert!(v > last && v < 1.0);
            last = v;
        }
        assert!(last > 0.99);
    }

    #[test]
    fn guaranteed_peace_branch_is_linear() {
        let p = sym(0.7, 0.0, 0.5);
        let ts = threshold_set(p.game());
        for beta in [ts.beta_g_plus, 0.5, ts.beta_r_minus] {
            let b = gov_payoff(&p, beta).unwrap();
            assert_eq!(b.branch, Branch::GuaranteedPeace);
            assert!((b.total - beta).abs() < 1e-14);
            assert_eq!(b.prob_war, 0.0);
        }
    }

    #[test]
    fn always_war_branches_are_flat() {
        let p = sym(0.7, 0.0, 0.5);
        let level = 0.7 * expected_win_prob(p.game()).p_tilde_g;
        for beta in [0.0, 0.1, 0.2] {
            let b = gov_payoff(&p, beta).unwrap();
            if b.branch == Branch::AlwaysWarLow {
                assert!((b.total - level).abs() < 1e-12);
                assert_eq!(b.prob_war, 1.0);
            }
        }
        let b = gov_payoff(&p, 0.99).unwrap();
        assert_eq!(b.branch, Branch::AlwaysWarHigh);
        assert!((b.total - level).abs() < 1e-12);
    }

    #[test]
    fn continuity_at_all_breakpoints_low() {
        let p = sym(0.7, 0.3, 0.5);
        let ts = threshold_set(p.game());
        let pairs = [
            (ts.beta_g_minus, Branch::AlwaysWarLow, Branch::GovMayFight),
            (ts.beta_g_plus, Branch::GovMayFight, Branch::GuaranteedPeace),
            (ts.beta_r_minus, Branch::GuaranteedPeace, Branch::RebMayFight),
            (ts.beta_r_plus, Branch::RebMayFight, Branch::AlwaysWarHigh),
        ];
        for (bp, left, right) in pairs {
            let l = branch_value(&p, bp, left);
            let r = branch_value(&p, bp, right);
            assert!((l - r).abs() < 1e-10, "discontinuity at {bp}: {l} vs {r}");
        }
    }

    #[test]
    fn continuity_at_breakpoints_high() {
        let p = sym(0.9, 0.0, 1.5);
        assert!(!peace_interval(p.game()).exists);
        let ts = threshold_set(p.game());
        let pairs = [
            (ts.beta_r_minus, Branch::GovMayFight, Branch::BothMayFight),
            (ts.beta_g_plus, Branch::BothMayFight, Branch::RebMayFight),
        ];
        for (bp, left, right) in pairs {
            let l = branch_value(&p, bp, left);
            let r = branch_value(&p, bp, right);
            assert!((l - r).abs() < 1e-10, "discontinuity at {bp}: {l} vs {r}");
        }
    }

    #[test]
    fn high_regime_beta_zero_is_always_war() {
        let p = sym(0.9, 0.0, 1.5);
        let b = gov_payoff_high(&p, 0.0).unwrap();
        assert_eq!(b.branch, Branch::AlwaysWarLow);
        assert!((b.total - 0.9 * expected_win_prob(p.game()).p_tilde_g).abs() < 1e-12);
    }

    #[test]
    fn regime_mismatch_errors() {
        let low = sym(0.7, 0.0, 0.5);
        let high = sym(0.9, 0.0, 1.5);
        assert!(gov_payoff(&high, 0.5).is_err());
        assert!(gov_payoff_high(&low, 0.5).is_err());
        assert_eq!(gov_payoff_auto(&low, 0.5).branch, Branch::GuaranteedPeace);
        assert_eq!(gov_payoff_auto(&high, 0.5).branch, Branch::BothMayFight);
    }

    #[test]
    fn welfare_identity_on_every_branch() {
        for p in [sym(0.7, 0.3, 0.5), sym(0.9, 0.0, 1.5), sym(0.6, -1.0, 0.8)] {
            for i in 0..=100 {
                let beta = i as f64 / 100.0;
                let g = gov_payoff_auto(&p, beta);
                let r = reb_payoff(&p, beta);
                let expect = 1.0 - g.prob_war * (1.0 - p.alpha());
                assert!((g.total + r.total - expect).abs() < 1e-10);
                assert!((g.total - g.war_component - g.peace_component).abs() < 1e-12);
                assert_eq!(g.prob_war, r.prob_war);
            }
        }
    }

    #[test]
    fn reb_payoff_peace_complement() {
        let p = sym(0.7, 0.0, 0.5);
        let r = reb_payoff(&p, 0.5);
        assert!((r.total - 0.5).abs() < 1e-14);
    }

    #[test]
    fn derivative_signs() {
        // Positive on (beta_g_minus, beta_g_plus], negative at beta_r_plus.
        let p = sym(0.7, 0.3, 0.5);
        let ts = threshold_set(p.game());
        let h = 1e-6;
        for i in 1..=10 {
            let beta = ts.beta_g_minus
                + (ts.beta_g_plus - ts.beta_g_minus) * i as f64 / 10.0;
            let d = (branch_value(&p, beta + h, Branch::GovMayFight)
                - branch_value(&p, beta - h, Branch::GovMayFight))
                / (2.0 * h);
            assert!(d > 0.0, "derivative not positive at {beta}");
        }
        let d = (branch_value(&p, ts.beta_r_plus + h, Branch::RebMayFight)
            - branch_value(&p, ts.beta_r_plus - h, Branch::RebMayFight))
            / (2.0 * h);
        assert!(d < 0.0);
    }
}
