//! Comparative-statics sweeps: a grid over one parameter, an independent
//! solve per grid point, switch-point and jump annotations, and
//! deterministic CSV emission.

use crate::model::SymmetricParams;
use crate::optimizer::{detect_jump, interior_advantage, solve, JumpPoint, Regime};
use crate::outcomes::outcome_report;
use crate::roots::bisect;
use crate::stage2::{a_crit, threshold_set, CriticalWidth};
use rayon::prelude::*;
use std::io::Write;

/// Which parameter the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptParam {
    AHalf,
    Alpha,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// A sweep definition: base parameters, the swept parameter and its grid.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: SymmetricParams,
    pub param: SweptParam,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub spacing: Spacing,
    /// When sweeping the half-width, cap the grid at the critical width.
    pub auto_truncate_at_acrit: bool,
}

impl SweepSpec {
    /// The default half-width sweep: 400 linear points on
    /// `[1e-4, a_crit]` (the model degenerates at zero width). Falls back
    /// to four base half-widths when the critical width is unbounded.
    pub fn default_a_sweep(base: SymmetricParams) -> SweepSpec {
        let hi = match a_crit(base.alpha(), base.arms_gap()) {
            CriticalWidth::Bounded(v) => v,
            CriticalWidth::Unbounded => (4.0 * base.half_width()).max(4.0),
        };
        SweepSpec {
            base,
            param: SweptParam::AHalf,
            lo: 1e-4,
            hi,
            count: 400,
            spacing: Spacing::Linear,
            auto_truncate_at_acrit: true,
        }
    }

    fn effective_hi(&self) -> f64 {
        if self.param == SweptParam::AHalf && self.auto_truncate_at_acrit {
            if let CriticalWidth::Bounded(ac) = a_crit(self.base.alpha(), self.base.arms_gap()) {
                return self.hi.min(ac);
            }
        }
        self.hi
    }

    /// The grid values, in increasing order.
    pub fn grid(&self) -> Vec<f64> {
        let hi = self.effective_hi();
        let n = self.count.max(2);
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.lo + (hi - self.lo) * t,
                    Spacing::Log => (self.lo.ln() + (hi.ln() - self.lo.ln()) * t).exp(),
                }
            })
            .collect()
    }

    fn params_at(&self, v: f64) -> Result<SymmetricParams, String> {
        let g = self.base.game();
        let r = match self.param {
            SweptParam::AHalf => SymmetricParams::new(g.y_g, g.y_r, g.alpha, v),
            SweptParam::Alpha => SymmetricParams::new(g.y_g, g.y_r, v, self.base.half_width()),
            SweptParam::X => SymmetricParams::new(g.y_r + v, g.y_r, g.alpha, self.base.half_width()),
        };
        r.map_err(|e| e.to_string().replace('\n', "; "))
    }
}

/// The per-point numeric columns of one sweep row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowData {
    pub beta_star: f64,
    pub regime: Regime,
    pub beta_r_minus: f64,
    pub beta_g_plus: f64,
    pub prob_war: f64,
    pub welfare: f64,
    pub gov_payoff: f64,
    pub reb_payoff: f64,
    pub is_unique: bool,
}

/// One grid point: either the solved columns or an error annotation.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub swept_value: f64,
    pub data: Result<RowData, String>,
}

/// Sweep-level annotations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annotations {
    /// First half-width at which the regime leaves GuaranteePeace,
    /// refined by bisection on the candidate-payoff tie.
    pub switch_point: Option<f64>,
    pub jump_point: Option<JumpPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub annotations: Annotations,
}

fn solve_row(spec: &SweepSpec, v: f64) -> SweepRow {
    let data = spec.params_at(v).map(|p| {
        let sol = solve(&p);
        let rep = outcome_report(&p, &sol);
        let ts = threshold_set(p.game());
        RowData {
            beta_star: sol.beta_star,
            regime: sol.regime,
            beta_r_minus: ts.beta_r_minus,
            beta_g_plus: ts.beta_g_plus,
            prob_war: rep.prob_war,
            welfare: rep.welfare,
            gov_payoff: rep.gov_payoff,
            reb_payoff: rep.reb_payoff,
            is_unique: sol.is_unique,
        }
    });
    SweepRow { swept_value: v, data }
}

/// Runs the sweep. Grid points solve independently (and in parallel);
/// per-point failures annotate their row and never abort the run.
pub fn run_sweep(spec: &SweepSpec) -> SweepResult {
    let grid = spec.grid();
    let rows: Vec<SweepRow> = grid.par_iter().map(|&v| solve_row(spec, v)).collect();

    let mut switch_point = None;
    let mut jump_point = None;
    if spec.param == SweptParam::AHalf {
        // First bracket where the regime leaves GuaranteePeace.
        for w in rows.windows(2) {
            if let (Ok(a), Ok(b)) = (&w[0].data, &w[1].data) {
                if a.regime == Regime::GuaranteePeace && b.regime != Regime::GuaranteePeace {
                    switch_point = Some(refine_switch(
                        spec,
                        w[0].swept_value,
                        w[1].swept_value,
                        b.regime,
                    ));
                    break;
                }
            }
        }
        jump_point = detect_jump(&spec.base, &grid);
    }
    SweepResult {
        rows,
        annotations: Annotations {
            switch_point,
            jump_point,
        },
    }
}

fn refine_switch(spec: &SweepSpec, lo: f64, hi: f64, new_regime: Regime) -> f64 {
    if new_regime == Regime::HighUncertainty {
        // The peace interval itself vanished: the switch is the critical
        // width, known in closed form.
        if let CriticalWidth::Bounded(ac) = a_crit(spec.base.alpha(), spec.base.arms_gap()) {
            return ac;
        }
        return hi;
    }
    // Payoff tie between the boundary and the best interior candidate.
    let f = |a: f64| match spec.base.with_half_width(a) {
        Ok(p) => interior_advantage(&p),
        Err(_) => -1.0,
    };
    if (f(lo) < 0.0) == (f(hi) < 0.0) {
        return hi; // tie not bracketed (e.g. regime flickers at tolerance)
    }
    bisect(f, lo, hi, 1e-10)
}

/// Writes the rows as CSV: fixed column order, 12 significant digits, one
/// `\n` terminator per line, error rows with empty numeric columns.
pub fn emit_csv<W: Write>(rows: &[SweepRow], out: &mut W) -> std::io::Result<()> {
    writeln!(
        out,
        "swept_value,beta_star,regime,beta_r_minus,beta_g_plus,prob_war,welfare,gov_payoff,reb_payoff,is_unique,error"
    )?;
    for row in rows {
        match &row.data {
            Ok(d) => writeln!(
                out,
                "{:.11e},{:.11e},{},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{},",
                row.swept_value,
                d.beta_star,
                d.regime,
                d.beta_r_minus,
                d.beta_g_plus,
                d.prob_war,
                d.welfare,
                d.gov_payoff,
                d.reb_payoff,
                d.is_unique,
            )?,
            Err(e) => writeln!(
                out,
                "{:.11e},,,,,,,,,,{}",
                row.swept_value,
                e.replace(',', ";")
            )?,
        }
    }
    Ok(())
}

/// Writes the sidecar annotation lines (switch/jump points).
pub fn emit_annotations<W: Write>(ann: &Annotations, out: &mut W) -> std::io::Result<()> {
    match ann.switch_point {
        Some(v) => writeln!(out, "switch_point={v:.12}")?,
        None => writeln!(out, "switch_point=none")?,
    }
    match &ann.jump_point {
        Some(j) => writeln!(
            out,
            "jump_point={:.12} tie_gap={:.3e} beta_before={:.12} beta_after={:.12}",
            j.a_jump, j.tie_gap, j.beta_before, j.beta_after
        )?,
        None => writeln!(out, "jump_point=none")?,
    }
    Ok(())
}
