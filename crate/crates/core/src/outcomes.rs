//! Equilibrium outcomes at the solved transfer: war probability, welfare
//! and per-group payoffs.
//!
//! The war probability here is always computed from the threshold geometry
//! (uniform measure of the fight regions), never from the payoff module's
//! internal bookkeeping, so agreement between the two is a genuine
//! redundancy check.

use crate::model::SymmetricParams;
use crate::optimizer::{Regime, Solution};
use crate::payoff::{gov_payoff_auto, reb_payoff};
use crate::stage2::{fight_thresholds, Extended};

/// Outcomes of the solved game.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeReport {
    pub prob_war: f64,
    pub welfare: f64,
    pub gov_payoff: f64,
    pub reb_payoff: f64,
    pub regime: Regime,
}

/// Probability of war at transfer `beta`: the uniform measure of
/// `{eps <= t_g} ∪ {eps >= t_r}` over the support.
pub fn war_probability(params: &SymmetricParams, beta: f64) -> f64 {
    let a = params.half_width();
    let th = fight_thresholds(params.game(), beta);
    let low = match th.t_g {
        Extended::NegInf => 0.0,
        Extended::PosInf => 2.0 * a,
        Extended::Finite(t) => (t.clamp(-a, a)) + a,
    };
    let high = match th.t_r {
        Extended::PosInf => 0.0,
        Extended::NegInf => 2.0 * a,
        Extended::Finite(t) => a - t.clamp(-a, a),
    };
    let p = (low + high) / (2.0 * a);
    debug_assert!(
        p > -1e-12 && p < 1.0 + 1e-12,
        "war probability overshoot: {p}"
    );
    p.clamp(0.0, 1.0)
}

/// Assembles the outcome report at a solved `beta*`.
pub fn outcome_report(params: &SymmetricParams, solution: &Solution) -> OutcomeReport {
    let beta = solution.beta_star;
    if solution.regime == Regime::GuaranteePeace {
        // Peace is certain: exact values, no float residue.
        return OutcomeReport {
            prob_war: 0.0,
            welfare: 1.0,
            gov_payoff: beta,
            reb_payoff: 1.0 - beta,
            regime: solution.regime,
        };
    }
    let prob_war = war_probability(params, beta);
    let welfare = 1.0 - prob_war * (1.0 - params.alpha());
    OutcomeReport {
        prob_war,
        welfare,
        gov_payoff: gov_payoff_auto(params, beta).total,
        reb_payoff: reb_payoff(params, beta).total,
        regime: solution.regime,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::solve;
    use crate::stage2::threshold_set;

    fn sym(alpha: f64, x: f64, a: f64) -> SymmetricParams {
        SymmetricParams::new(x, 0.0, alpha, a).unwrap()
    }

    #[test]
    fn war_probability_examples() {
        let p = sym(0.7, 0.0, 1.0);
        let ts = threshold_set(p.game());
        // At beta_r_minus the rebels are exactly indifferent (t_r = a); in
        // the low-uncertainty regime the government does not fight either.
        let low = sym(0.7, 0.0, 0.5);
        let ts_low = threshold_set(low.game());
        assert!(war_probability(&low, ts_low.beta_r_minus).abs() < 1e-15);
        let v = war_probability(&p, 0.6);
        assert!((v - (1.0 + 0.75f64.ln()) / 2.0).abs() < 1e-12);
        assert_eq!(war_probability(&p, ts.beta_r_plus + 0.01), 1.0);
        assert_eq!(war_probability(&p, 0.0), 1.0);
    }

    #[test]
    fn war_probability_agrees_with_payoff_bookkeeping() {
        for p in [sym(0.7, 0.3, 0.5), sym(0.9, 0.0, 1.5)] {
            for i in 0..=50 {
                let beta = i as f64 / 50.0;
                let a = war_probability(&p, beta);
                let b = gov_payoff_auto(&p, beta).prob_war;
                assert!((a - b).abs() < 1e-12, "mismatch at beta={beta}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn guarantee_peace_report_is_exact() {
        let p = sym(0.7, -1.0, 0.5);
        let sol = solve(&p);
        let rep = outcome_report(&p, &sol);
        assert_eq!(rep.welfare, 1.0);
        assert_eq!(rep.prob_war, 0.0);
        assert_eq!(rep.gov_payoff + rep.reb_payoff, 1.0);
    }

    #[test]
    fn welfare_identity_and_split() {
        let p = sym(0.9, 1.0, 0.27);
        let sol = solve(&p);
        let rep = outcome_report(&p, &sol);
        assert!((rep.welfare - (1.0 - rep.prob_war * (1.0 - 0.9))).abs() < 1e-10);
        assert!((rep.gov_payoff + rep.reb_payoff - rep.welfare).abs() < 1e-10);
    }

    #[test]
    fn risk_war_monotone_in_width() {
        // Along a RiskWar stretch prob_war rises and welfare falls.
        let base = sym(0.9, 1.0, 0.27);
        let mut last: Option<(f64, f64)> = None;
        for i in 0..=20 {
            let a = 0.262 + (0.282 - 0.262) * i as f64 / 20.0;
            let p = base.with_half_width(a).unwrap();
            let sol = solve(&p);
            if sol.regime != Regime::RiskWar {
                last = None;
                continue;
            }
            let rep = outcome_report(&p, &sol);
            if let Some((pw, w)) = last {
                assert!(rep.prob_war >= pw - 1e-9);
                assert!(rep.welfare <= w + 1e-9);
            }
            last = Some((rep.prob_war, rep.welfare));
        }
        assert!(last.is_some(), "no RiskWar stretch found");
    }
}
