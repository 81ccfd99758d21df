//! Command-line interface: thresholds, acrit, payoff, solve, sweep,
//! simulate and verify subcommands over the solver library.
//!
//! Exit codes: 0 on success, 2 on parameter/validation errors (with
//! machine-readable lines prefixed `error:`), 1 when the verify battery
//! flags a discrepancy.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use warbargain_core::config::{load_config, PartialParams};
use warbargain_core::mc::{simulate, validate_analytics, SimConfig, SplitMix64};
use warbargain_core::optimizer::{solve, switch_condition, SwitchCondition};
use warbargain_core::outcomes::{outcome_report, war_probability};
use warbargain_core::payoff::{gov_payoff_auto, reb_payoff};
use warbargain_core::stage2::{
    a_crit, fight_thresholds, peace_interval, threshold_set, CriticalWidth, Extended,
};
use warbargain_core::sweep::{
    emit_annotations, emit_csv, run_sweep, Spacing, SweepSpec, SweptParam,
};
use warbargain_core::{GameParams, SymmetricParams};

#[derive(Parser)]
#[command(
    name = "warbargain",
    version,
    about = "Solver for a two-stage conflict-bargaining game under bounded uncertainty"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Game parameters, from a key=value config file and/or flags.
/// Flags override file values.
#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Plain-text key=value parameter file (keys: y_g, y_r, alpha, a_lo,
    /// a_hi, a_half; '#' comments)
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Government arms (log scale) [default: 0]
    #[arg(long = "y_g", value_name = "REAL")]
    y_g: Option<f64>,
    /// Rebel pre-shock arms (log scale) [default: 0]
    #[arg(long = "y_r", value_name = "REAL")]
    y_r: Option<f64>,
    /// Share of resources surviving a war, in (0,1)
    #[arg(long, value_name = "REAL")]
    alpha: Option<f64>,
    /// Shock support lower bound
    #[arg(long = "a_lo", value_name = "REAL")]
    a_lo: Option<f64>,
    /// Shock support upper bound
    #[arg(long = "a_hi", value_name = "REAL")]
    a_hi: Option<f64>,
    /// Symmetric support half-width (sets a_lo = -a_half, a_hi = a_half)
    #[arg(long = "a_half", value_name = "REAL")]
    a_half: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print fight thresholds, the four beta bounds and the peace interval
    Thresholds {
        #[command(flatten)]
        params: ParamArgs,
        /// Transfer at which to evaluate the fight thresholds
        #[arg(long, default_value_t = 0.5, value_name = "REAL")]
        beta: f64,
        /// Additionally print one CSV row
        #[arg(long)]
        csv: bool,
    },
    /// Print the critical half-width of the symmetric support
    Acrit {
        /// Share of resources surviving a war, in (0,1)
        #[arg(long, value_name = "REAL")]
        alpha: f64,
        /// Arms gap y_g - y_r
        #[arg(long, value_name = "REAL")]
        x: f64,
    },
    /// Evaluate government/rebel payoffs on a beta grid (CSV)
    Payoff {
        #[command(flatten)]
        params: ParamArgs,
        /// Grid lower endpoint
        #[arg(long, default_value_t = 0.0, value_name = "REAL")]
        lo: f64,
        /// Grid upper endpoint
        #[arg(long, default_value_t = 1.0, value_name = "REAL")]
        hi: f64,
        /// Number of grid points
        #[arg(long, default_value_t = 101, value_name = "N")]
        count: usize,
        /// Output file (stdout when omitted)
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Solve for the optimal transfer beta*
    Solve {
        #[command(flatten)]
        params: ParamArgs,
        /// Cross-check beta* against a 100000-point grid search
        #[arg(long)]
        oracle: bool,
    },
    /// Comparative-statics sweep over one parameter (CSV + annotations)
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        /// Which parameter to sweep
        #[arg(long, value_enum, value_name = "NAME")]
        param: SweptParamArg,
        /// Grid lower endpoint
        #[arg(long, default_value_t = 1e-4, value_name = "REAL")]
        lo: f64,
        /// Grid upper endpoint (default for a_half sweeps: the critical width)
        #[arg(long, value_name = "REAL")]
        hi: Option<f64>,
        /// Number of grid points
        #[arg(long, default_value_t = 400, value_name = "N")]
        count: usize,
        /// Grid spacing
        #[arg(long, value_enum, default_value_t = SpacingArg::Linear, value_name = "KIND")]
        spacing: SpacingArg,
        /// CSV output file; annotations go to FILE.annotations.txt
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Cap a_half grids at the critical width
        #[arg(long = "truncate-acrit")]
        truncate_acrit: bool,
    },
    /// Monte Carlo simulation of the literal game at a fixed transfer
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        /// Transfer the government proposes to keep
        #[arg(long, value_name = "REAL")]
        beta: f64,
        /// Number of simulated games
        #[arg(long, default_value_t = 1_000_000, value_name = "N")]
        draws: u64,
        /// RNG seed (SplitMix64)
        #[arg(long, default_value_t = 0, value_name = "SEED")]
        seed: u64,
    },
    /// Validate analytics against simulation on a random parameter battery
    Verify {
        /// Draws per battery point
        #[arg(long, default_value_t = 1_000_000, value_name = "N")]
        draws: u64,
        /// RNG seed for the battery and the simulations
        #[arg(long, default_value_t = 42, value_name = "SEED")]
        seed: u64,
        /// Number of random (params, beta) pairs
        #[arg(long, default_value_t = 200, value_name = "N")]
        pairs: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweptParamArg {
    #[value(name = "a_half")]
    AHalf,
    Alpha,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum SpacingArg {
    Linear,
    Log,
}

/// A failure destined for stderr, one `error:` line per item.
struct CliError {
    lines: Vec<String>,
    code: i32,
}

impl CliError {
    fn new(msg: impl Into<String>) -> Self {
        CliError {
            lines: vec![msg.into()],
            code: 2,
        }
    }
}

impl From<warbargain_core::ValidationError> for CliError {
    fn from(e: warbargain_core::ValidationError) -> Self {
        CliError {
            lines: e.0.iter().map(|m| m.to_string()).collect(),
            code: 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(e.to_string())
    }
}

impl ParamArgs {
    fn merged(&self) -> Result<PartialParams, CliError> {
        let file = match &self.config {
            Some(path) => load_config(path).map_err(|e| CliError::new(e.to_string()))?,
            None => PartialParams::default(),
        };
        Ok(file.merged_with(PartialParams {
            y_g: self.y_g,
            y_r: self.y_r,
            alpha: self.alpha,
            a_lo: self.a_lo,
            a_hi: self.a_hi,
            a_half: self.a_half,
        }))
    }

    fn game(&self) -> Result<GameParams, CliError> {
        let p = self.merged()?;
        let alpha = p.alpha.ok_or_else(|| CliError::new("missing parameter `alpha`"))?;
        let (a_lo, a_hi) = match (p.a_half, p.a_lo, p.a_hi) {
            (Some(a), _, _) => (-a, a),
            (None, Some(lo), Some(hi)) => (lo, hi),
            _ => {
                return Err(CliError::new(
                    "missing shock support: give `a_half` or both `a_lo` and `a_hi`",
                ))
            }
        };
        Ok(GameParams::new(p.y_g.unwrap_or(0.0), p.y_r.unwrap_or(0.0), alpha, a_lo, a_hi)?)
    }

    fn symmetric(&self) -> Result<SymmetricParams, CliError> {
        let g = self.game()?;
        if g.a_hi + g.a_lo != 0.0 {
            return Err(CliError::new(format!(
                "this subcommand needs a symmetric support; got [{}, {}] (use `a_half`)",
                g.a_lo, g.a_hi
            )));
        }
        Ok(SymmetricParams::new(g.y_g, g.y_r, g.alpha, g.a_hi)?)
    }
}

fn fmt_ext(e: Extended) -> String {
    match e {
        Extended::NegInf => "-inf".to_string(),
        Extended::PosInf => "inf".to_string(),
        Extended::Finite(v) => format!("{v:.6}"),
    }
}

fn cmd_thresholds(params: &ParamArgs, beta: f64, csv: bool) -> Result<(), CliError> {
    let g = params.game()?;
    let ts = threshold_set(&g);
    let th = fight_thresholds(&g, beta);
    let pi = peace_interval(&g);
    println!("beta_g_minus={:.6}", ts.beta_g_minus);
    println!("beta_g_plus={:.6}", ts.beta_g_plus);
    println!("beta_r_minus={:.6}", ts.beta_r_minus);
    println!("beta_r_plus={:.6}", ts.beta_r_plus);
    println!("t_g={}", fmt_ext(th.t_g));
    println!("t_r={}", fmt_ext(th.t_r));
    println!("peace_exists={}", pi.exists);
    println!("peace_lo={:.6}", pi.lo);
    println!("peace_hi={:.6}", pi.hi);
    if csv {
        println!("beta_g_minus,beta_g_plus,beta_r_minus,beta_r_plus,t_g,t_r,peace_exists");
        println!(
            "{:.11e},{:.11e},{:.11e},{:.11e},{},{},{}",
            ts.beta_g_minus,
            ts.beta_g_plus,
            ts.beta_r_minus,
            ts.beta_r_plus,
            fmt_ext(th.t_g),
            fmt_ext(th.t_r),
            pi.exists
        );
    }
    Ok(())
}

fn cmd_acrit(alpha: f64, x: f64) -> Result<(), CliError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::new(format!(
            "AlphaOutOfRange: alpha must lie strictly inside (0,1), got {alpha}"
        )));
    }
    match a_crit(alpha, x) {
        CriticalWidth::Bounded(v) => println!("a_crit={v:.6}"),
        CriticalWidth::Unbounded => println!("a_crit=UNBOUNDED"),
    }
    Ok(())
}

fn cmd_payoff(
    params: &ParamArgs,
    lo: f64,
    hi: f64,
    count: usize,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let p = params.symmetric()?;
    if !(count >= 2 && lo < hi && (0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi)) {
        return Err(CliError::new("payoff grid needs 0 <= lo < hi <= 1 and count >= 2"));
    }
    let mut buf = Vec::new();
    writeln!(buf, "beta,branch,gov_total,reb_total,prob_war,welfare")?;
    for i in 0..count {
        let beta = lo + (hi - lo) * i as f64 / (count - 1) as f64;
        let g = gov_payoff_auto(&p, beta);
        let r = reb_payoff(&p, beta);
        let welfare = 1.0 - g.prob_war * (1.0 - p.alpha());
        writeln!(
            buf,
            "{:.11e},{},{:.11e},{:.11e},{:.11e},{:.11e}",
            beta, g.branch, g.total, r.total, g.prob_war, welfare
        )?;
    }
    match out {
        Some(path) => std::fs::write(path, buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

fn cmd_solve(params: &ParamArgs, oracle: bool) -> Result<(), CliError> {
    let p = params.symmetric()?;
    let sol = solve(&p);
    let rep = outcome_report(&p, &sol);
    println!("beta_star={:.6}", sol.beta_star);
    println!("regime={}", sol.regime);
    println!("prob_war={:.6}", rep.prob_war);
    println!("welfare={:.6}", rep.welfare);
    println!("gov_payoff={:.6}", rep.gov_payoff);
    println!("reb_payoff={:.6}", rep.reb_payoff);
    println!("is_unique={}", sol.is_unique);
    match switch_condition(&p) {
        SwitchCondition::NoRealRoots => println!("switch_condition=NoRealRoots"),
        SwitchCondition::Band { holds, x_lo, x_hi } => {
            println!("switch_condition=holds:{holds} x_band:[{x_lo:.6},{x_hi:.6}]")
        }
    }
    for (beta, payoff) in &sol.candidates {
        println!("candidate beta={beta:.6} payoff={payoff:.6}");
    }
    if oracle {
        let n = 100_000;
        let (mut best_b, mut best_v) = (0.0, f64::NEG_INFINITY);
        for i in 0..=n {
            let beta = i as f64 / n as f64;
            let v = gov_payoff_auto(&p, beta).total;
            if v > best_v {
                best_v = v;
                best_b = beta;
            }
        }
        println!("oracle_beta={best_b:.6}");
        println!("oracle_discrepancy={:.3e}", (sol.beta_star - best_b).abs());
    }
    Ok(())
}

fn cmd_sweep(
    params: &ParamArgs,
    param: SweptParamArg,
    lo: f64,
    hi: Option<f64>,
    count: usize,
    spacing: SpacingArg,
    out: &PathBuf,
    truncate_acrit: bool,
) -> Result<(), CliError> {
    let base = params.symmetric()?;
    let param = match param {
        SweptParamArg::AHalf => SweptParam::AHalf,
        SweptParamArg::Alpha => SweptParam::Alpha,
        SweptParamArg::X => SweptParam::X,
    };
    let hi = match hi {
        Some(v) => v,
        None if param == SweptParam::AHalf => match a_crit(base.alpha(), base.arms_gap()) {
            CriticalWidth::Bounded(v) => v,
            CriticalWidth::Unbounded => {
                return Err(CliError::new(
                    "critical width is unbounded here; give --hi explicitly",
                ))
            }
        },
        None => return Err(CliError::new("missing --hi for this sweep parameter")),
    };
    if !(lo < hi && count >= 2) {
        return Err(CliError::new("sweep grid needs lo < hi and count >= 2"));
    }
    let spec = SweepSpec {
        base,
        param,
        lo,
        hi,
        count,
        spacing: match spacing {
            SpacingArg::Linear => Spacing::Linear,
            SpacingArg::Log => Spacing::Log,
        },
        auto_truncate_at_acrit: truncate_acrit,
    };
    let result = run_sweep(&spec);
    let mut buf = Vec::new();
    emit_csv(&result.rows, &mut buf)?;
    std::fs::write(out, buf)?;
    let mut ann = Vec::new();
    emit_annotations(&result.annotations, &mut ann)?;
    let ann_path = out.with_extension("annotations.txt");
    std::fs::write(&ann_path, &ann)?;
    print!("{}", String::from_utf8_lossy(&ann));
    println!("rows={}", result.rows.len());
    println!("csv={}", out.display());
    println!("annotations={}", ann_path.display());
    Ok(())
}

fn cmd_simulate(params: &ParamArgs, beta: f64, draws: u64, seed: u64) -> Result<(), CliError> {
    let g = params.game()?;
    if !(0.0..=1.0).contains(&beta) {
        return Err(CliError::new(format!("beta must lie in [0,1], got {beta}")));
    }
    if draws < 1 {
        return Err(CliError::new("draws must be at least 1"));
    }
    let est = simulate(&SimConfig {
        params: g,
        beta,
        draws,
        seed,
    });
    println!("gov_mean={:.6}", est.gov_mean);
    println!("gov_se={:.3e}", est.gov_se);
    println!("reb_mean={:.6}", est.reb_mean);
    println!("reb_se={:.3e}", est.reb_se);
    println!("war_freq={:.6}", est.war_freq);
    println!("war_se={:.3e}", est.war_se);
    println!("draws={draws}");
    Ok(())
}

fn cmd_verify(draws: u64, seed: u64, pairs: usize) -> Result<(), CliError> {
    let mut rng = SplitMix64::new(seed);
    let mut flagged = 0usize;
    for i in 0..pairs {
        let alpha = 0.05 + 0.90 * rng.next_f64();
        let x = -2.0 + 4.0 * rng.next_f64();
        let a = 0.05 + 1.95 * rng.next_f64();
        let beta = rng.next_f64();
        let p = SymmetricParams::new(x, 0.0, alpha, a)?;
        let rep = validate_analytics(&p, beta, draws, rng.next_u64());
        if rep.flags.is_empty() {
            continue;
        }
        flagged += 1;
        for f in &rep.flags {
            println!(
                "FLAG pair={i} quantity={f} alpha={alpha:.4} x={x:.4} a_half={a:.4} beta={beta:.4}"
            );
        }
    }
    println!("verify: pairs={pairs} draws={draws} flagged={flagged}");
    // Also pin the frozen reference point.
    let p = SymmetricParams::new(0.0, 0.0, 0.7, 1.0)?;
    let est = simulate(&SimConfig {
        params: *p.game(),
        beta: 0.6,
        draws,
        seed,
    });
    let analytic = war_probability(&p, 0.6);
    let ok = (est.war_freq - analytic).abs() <= 3.0 * est.war_se;
    println!(
        "reference_point war_analytic={analytic:.6} war_freq={:.6} ok={ok}",
        est.war_freq
    );
    if flagged > 0 || !ok {
        return Err(CliError {
            lines: vec![format!("verify failed: {flagged} flagged pairs, reference ok={ok}")],
            code: 1,
        });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Thresholds { params, beta, csv } => cmd_thresholds(&params, beta, csv),
        Command::Acrit { alpha, x } => cmd_acrit(alpha, x),
        Command::Payoff {
            params,
            lo,
            hi,
            count,
            out,
        } => cmd_payoff(&params, lo, hi, count, out.as_ref()),
        Command::Solve { params, oracle } => cmd_solve(&params, oracle),
        Command::Sweep {
            params,
            param,
            lo,
            hi,
            count,
            spacing,
            out,
            truncate_acrit,
        } => cmd_sweep(&params, param, lo, hi, count, spacing, &out, truncate_acrit),
        Command::Simulate {
            params,
            beta,
            draws,
            seed,
        } => cmd_simulate(&params, beta, draws, seed),
        Command::Verify { draws, seed, pairs } => cmd_verify(draws, seed, pairs),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        for line in &e.lines {
            eprintln!("error: {line}");
        }
        std::process::exit(e.code);
    }
}
