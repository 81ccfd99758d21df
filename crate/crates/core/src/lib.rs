//! Solver library for a two-stage conflict-bargaining game under bounded
//! uncertainty.
//!
//! A government proposes to keep a share `beta` of a unit resource; the
//! rebels receive `1 - beta`. After a bounded additive shock to the rebels'
//! arms is realised, either side may reject the split and fight, in which
//! case a logit contest decides the winner and war destroys a fraction
//! `1 - alpha` of the resource.
//!
//! The crate computes, in closed form wherever one exists:
//!
//! * stage-2 fight thresholds in shock space and the four `beta` bounds
//!   that make each side's decision shock-independent ([`stage2`]);
//! * the peace-guaranteeing transfer interval and the critical uncertainty
//!   at which it vanishes ([`stage2::a_crit`]);
//! * the government's piecewise expected payoff under a symmetric uniform
//!   shock ([`payoff`]);
//! * the optimal transfer `beta*` with regime detection, switch-condition
//!   and jump-discontinuity analysis ([`optimizer`]);
//! * downstream outcomes (war probability, welfare) and comparative-statics
//!   sweeps ([`outcomes`], [`sweep`]);
//! * a seeded Monte Carlo simulator of the literal game used to validate
//!   every analytic quantity ([`mc`]).

pub mod config;
pub mod error;
pub mod mc;
pub mod model;
pub mod optimizer;
pub mod outcomes;
pub mod payoff;
pub mod roots;
pub mod stage2;
pub mod sweep;

pub use error::{ConfigError, ModelError, OptimizerError, PayoffError, ValidationError};
pub use model::{GameParams, SymmetricParams, WinProb};
pub use optimizer::{Regime, Solution};
pub use stage2::{CriticalWidth, FightThresholds, PeaceInterval, ThresholdSet};

/// Numerically stable logistic `1 / (1 + exp(-z))`.
pub(crate) fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Numerically stable `log(1 + exp(z))`.
pub(crate) fn softplus(z: f64) -> f64 {
    if z > 30.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}
