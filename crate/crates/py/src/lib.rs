//! Python bindings for the conflict-bargaining solver.
//!
//! Exposes the main operations over plain floats and dicts so the module
//! is usable without any Rust-side type knowledge: thresholds and beta
//! bounds, the critical width, payoffs, the stage-1 solve, war
//! probability, and the seeded Monte Carlo simulator.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use warbargain_core::mc;
use warbargain_core::optimizer;
use warbargain_core::outcomes;
use warbargain_core::payoff;
use warbargain_core::stage2;
use warbargain_core::{GameParams, SymmetricParams};

fn game(y_g: f64, y_r: f64, alpha: f64, a_lo: f64, a_hi: f64) -> PyResult<GameParams> {
    GameParams::new(y_g, y_r, alpha, a_lo, a_hi)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

fn symmetric(y_g: f64, y_r: f64, alpha: f64, a_half: f64) -> PyResult<SymmetricParams> {
    SymmetricParams::new(y_g, y_r, alpha, a_half)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

fn ext_to_f64(e: stage2::Extended) -> f64 {
    match e {
        stage2::Extended::NegInf => f64::NEG_INFINITY,
        stage2::Extended::PosInf => f64::INFINITY,
        stage2::Extended::Finite(v) => v,
    }
}

/// Government and rebel win probabilities at a realised shock.
#[pyfunction]
fn win_prob(y_g: f64, y_r: f64, alpha: f64, a_lo: f64, a_hi: f64, eps: f64) -> PyResult<(f64, f64)> {
    let g = game(y_g, y_r, alpha, a_lo, a_hi)?;
    let p = warbargain_core::model::win_prob(&g, eps);
    Ok((p.p_g, p.p_r))
}

/// Fight thresholds (t_g, t_r) at transfer beta; infinities mark sides
/// that always or never fight.
#[pyfunction]
fn fight_thresholds(
    y_g: f64,
    y_r: f64,
    alpha: f64,
    a_lo: f64,
    a_hi: f64,
    beta: f64,
) -> PyResult<(f64, f64)> {
    let g = game(y_g, y_r, alpha, a_lo, a_hi)?;
    let th = stage2::fight_thresholds(&g, beta);
    Ok((ext_to_f64(th.t_g), ext_to_f64(th.t_r)))
}

/// The four beta bounds as a dict.
#[pyfunction]
fn threshold_set<'py>(
    py: Python<'py>,
    y_g: f64,
    y_r: f64,
    alpha: f64,
    a_lo: f64,
    a_hi: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let g = game(y_g, y_r, alpha, a_lo, a_hi)?;
    let ts = stage2::threshold_set(&g);
    let d = PyDict::new(py);
    d.set_item("beta_g_minus", ts.beta_g_minus)?;
    d.set_item("beta_g_plus", ts.beta_g_plus)?;
    d.set_item("beta_r_minus", ts.beta_r_minus)?;
    d.set_item("beta_r_plus", ts.beta_r_plus)?;
    Ok(d)
}

/// Peace-guaranteeing interval as (exists, lo, hi).
#[pyfunction]
fn peace_interval(
    y_g: f64,
    y_r: f64,
    alpha: f64,
    a_lo: f64,
    a_hi: f64,
) -> PyResult<(bool, f64, f64)> {
    let g = game(y_g, y_r, alpha, a_lo, a_hi)?;
    let pi = stage2::peace_interval(&g);
    Ok((pi.exists, pi.lo, pi.hi))
}

/// Critical half-width of the symmetric support; None when unbounded.
#[pyfunction]
fn a_crit(alpha: f64, x: f64) -> PyResult<Option<f64>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(PyValueError::new_err(format!(
            "alpha must lie strictly inside (0,1), got {alpha}"
        )));
    }
    Ok(match stage2::a_crit(alpha, x) {
        stage2::CriticalWidth::Bounded(v) => Some(v),
        stage2::CriticalWidth::Unbounded => None,
    })
}

/// Government expected payoff at a transfer, as a dict with the branch
/// label and war/peace decomposition.
#[pyfunction]
fn gov_payoff<'py>(
    py: Python<'py>,
    y_g: f64,
    y_r: f64,
    alpha: f64,
    a_half: f64,
    beta: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = symmetric(y_g, y_r, alpha, a_half)?;
    let b = payoff::gov_payoff_auto(&p, beta);
    let d = PyDict::new(py);
    d.set_item("total", b.total)?;
    d.set_item("branch", b.branch.to_string())?;
    d.set_item("war_component", b.war_component)?;
    d.set_item("peace_component", b.peace_component)?;
    d.set_item("prob_war", b.prob_war)?;
    Ok(d)
}

/// Rebel expected payoff at a transfer.
#[pyfunction]
fn reb_payoff<'py>(
    py: Python<'py>,
    y_g: f64,
    y_r: f64,
    alpha: f64,
    a_half: f64,
    beta: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = symmetric(y_g, y_r, alpha, a_half)?;
    let b = payoff::reb_payoff(&p, beta);
    let d = PyDict::new(py);
    d.set_item("total", b.total)?;
    d.set_item("branch", b.branch.to_string())?;
    d.set_item("war_component", b.war_component)?;
    d.set_item("peace_component", b.peace_component)?;
    d.set_item("prob_war", b.prob_war)?;
    Ok(d)
}

/// Solves for the optimal transfer; returns a dict with beta_star, the
/// regime, outcome values and the evaluated candidates.
#[pyfunction]
fn solve<'py>(
    py: Python<'py>,
    y_g: f64,
    y_r: f64,
    alpha: f64,
    a_half: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = symmetric(y_g, y_r, alpha, a_half)?;
    let sol = optimizer::solve(&p);
    let rep = outcomes::outcome_report(&p, &sol);
    let d = PyDict::new(py);
    d.set_item("beta_star", sol.beta_star)?;
    d.set_item("regime", sol.regime.to_string())?;
    d.set_item("prob_war", rep.prob_war)?;
    d.set_item("welfare", rep.welfare)?;
    d.set_item("gov_payoff", rep.gov_payoff)?;
    d.set_item("reb_payoff", rep.reb_payoff)?;
    d.set_item("is_unique", sol.is_unique)?;
    d.set_item("candidates", sol.candidates)?;
    Ok(d)
}

/// Probability of war at a transfer under the symmetric uniform shock.
#[pyfunction]
fn war_probability(y_g: f64, y_r: f64, alpha: f64, a_half: f64, beta: f64) -> PyResult<f64> {
    let p = symmetric(y_g, y_r, alpha, a_half)?;
    Ok(outcomes::war_probability(&p, beta))
}

/// Seeded Monte Carlo simulation of the literal game; returns a dict of
/// means and standard errors.
#[pyfunction]
#[pyo3(signature = (y_g, y_r, alpha, a_lo, a_hi, beta, draws=1_000_000, seed=0))]
#[allow(clippy::too_many_arguments)]
fn simulate<'py>(
    py: Python<'py>,
    y_g: f64,
    y_r: f64,
    alpha: f64,
    a_lo: f64,
    a_hi: f64,
    beta: f64,
    draws: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let g = game(y_g, y_r, alpha, a_lo, a_hi)?;
    if draws < 1 {
        return Err(PyValueError::new_err("draws must be at least 1"));
    }
    let est = py.detach(|| {
        mc::simulate(&mc::SimConfig {
            params: g,
            beta,
            draws,
            seed,
        })
    });
    let d = PyDict::new(py);
    d.set_item("gov_mean", est.gov_mean)?;
    d.set_item("reb_mean", est.reb_mean)?;
    d.set_item("war_freq", est.war_freq)?;
    d.set_item("gov_se", est.gov_se)?;
    d.set_item("reb_se", est.reb_se)?;
    d.set_item("war_se", est.war_se)?;
    d.set_item("draws", est.draws)?;
    Ok(d)
}

#[pymodule]
fn warbargain(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(win_prob, m)?)?;
    m.add_function(wrap_pyfunction!(fight_thresholds, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_set, m)?)?;
    m.add_function(wrap_pyfunction!(peace_interval, m)?)?;
    m.add_function(wrap_pyfunction!(a_crit, m)?)?;
    m.add_function(wrap_pyfunction!(gov_payoff, m)?)?;
    m.add_function(wrap_pyfunction!(reb_payoff, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(war_probability, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
