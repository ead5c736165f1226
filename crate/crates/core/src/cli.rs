//! Command implementations behind the `uav-mission` binary.
//!
//! Each command writes human-readable output to `out` and returns the
//! process exit code: 0 ok/feasible, 1 verified infeasible, 2 input error,
//! 3 internal solver inconsistency.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::config::MissionConfig;
use crate::mission::{completion_time, MissionPlan};
use crate::ordering::{build_weight_matrix_with_tol, solve_order_distance_tsp, VisitOrder};
use crate::planner::{choose_order, format_order, plan_mission, OrderMode};
use crate::sample::sample_trajectory;
use crate::scenario::{PlanDocument, ScenarioFile};
use crate::subtrajectory::DEFAULT_POS_TOL_M;
use crate::verify::{verify_plan, VerificationReport};
use crate::mission::assemble_plan;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Io(_) => EXIT_INPUT,
        }
    }
}

pub const DEFAULT_ALPHAS: [f64; 8] = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];

#[derive(Debug, Clone)]
pub struct SolveArgs {
    pub scenario: PathBuf,
    pub order: OrderMode,
    pub alpha: Option<f64>,
    pub pos_tol_m: f64,
    pub out: Option<PathBuf>,
}

impl SolveArgs {
    pub fn new(scenario: impl Into<PathBuf>) -> SolveArgs {
        SolveArgs { scenario: scenario.into(), order: OrderMode::Auto, alpha: None, pos_tol_m: DEFAULT_POS_TOL_M, out: None }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn load_config(path: &Path, alpha: Option<f64>) -> Result<MissionConfig, CliError> {
    let scenario = ScenarioFile::parse(&read(path)?).map_err(|e| CliError::Input(e.to_string()))?;
    let alpha = alpha.unwrap_or(scenario.alpha);
    scenario.to_config_with_alpha(alpha).map_err(|e| CliError::Input(e.to_string()))
}

/// Loads a plan document and checks it matches `cfg`'s target count.
pub fn load_plan(path: &Path, cfg: &MissionConfig) -> Result<MissionPlan, CliError> {
    let doc = PlanDocument::from_json(&read(path)?).map_err(|e| CliError::Input(e.to_string()))?;
    if doc.n_targets != cfg.n() || doc.plan.order.len() != cfg.n() || doc.plan.critical_instants.len() != cfg.n() {
        return Err(CliError::Input(format!(
            "plan is for {} targets but the scenario has {}",
            doc.n_targets,
            cfg.n()
        )));
    }
    Ok(doc.plan)
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if !(args.pos_tol_m.is_finite() && args.pos_tol_m > 0.0) {
        return Err(CliError::Input("--pos-tol-m must be positive".into()));
    }
    let cfg = load_config(&args.scenario, args.alpha)?;
    let plan = plan_mission(&cfg, &args.order, args.pos_tol_m).map_err(|e| CliError::Input(e.to_string()))?;
    let report = verify_plan(&cfg, &plan);

    writeln!(out, "order: {}", format_order(&plan.order))?;
    for (k, st) in plan.stages.iter().enumerate() {
        writeln!(
            out,
            "stage {}: target {} {:?} duration {:.6} s delivered {:.1} bits",
            k + 1,
            st.target,
            st.transmission.kind,
            st.transmission.duration_s,
            st.transmission.delivered_bits
        )?;
    }
    writeln!(out, "total_time_s: {}", completion_time(&plan))?;

    if let Some(path) = &args.out {
        fs::write(path, PlanDocument::new(plan.clone()).to_json())?;
    }
    if !report.feasible || !report.stages_sufficient(&cfg, &plan) {
        write_report(&report, out)?;
        return Err(CliError::Internal("solver produced a plan that fails verification".into()));
    }
    Ok(EXIT_OK)
}

pub fn write_report(report: &VerificationReport, out: &mut dyn Write) -> std::io::Result<()> {
    for c in &report.per_constraint {
        writeln!(out, "{:<28} {:<4} margin {:e}", c.id, if c.satisfied { "ok" } else { "FAIL" }, c.margin)?;
    }
    for (k, (d, m)) in report.stage_delivered_bits.iter().zip(&report.stage_margins).enumerate() {
        writeln!(out, "stage {:<3} delivered {:.1} bits, own-stage margin {:e}", k + 1, d, m)?;
    }
    writeln!(out, "feasible: {}", report.feasible)
}

pub fn cmd_verify(scenario: &Path, plan_path: &Path, alpha: Option<f64>, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = load_config(scenario, alpha)?;
    let plan = load_plan(plan_path, &cfg)?;
    let report = verify_plan(&cfg, &plan);
    write_report(&report, out)?;
    Ok(if report.feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

/// One row of the scheme comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub alpha: f64,
    pub proposed: VisitOrder,
    pub proposed_time_s: f64,
    pub distance: VisitOrder,
    pub distance_time_s: f64,
}

/// Completion times of the transmission-aware order and the
/// shortest-distance order, both flown with the same stage designs.
pub fn compare_schemes(scenario: &ScenarioFile, alphas: &[f64], pos_tol_m: f64) -> Result<Vec<CompareRow>, CliError> {
    alphas
        .iter()
        .map(|&alpha| {
            let cfg = scenario.to_config_with_alpha(alpha).map_err(|e| CliError::Input(e.to_string()))?;
            let wm = build_weight_matrix_with_tol(&cfg, pos_tol_m);
            let proposed = choose_order(&cfg, &wm, &OrderMode::Auto).map_err(|e| CliError::Internal(e.to_string()))?;
            let distance = VisitOrder::evaluate(solve_order_distance_tsp(&cfg).order, &wm)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            let time = |order: &VisitOrder| {
                assemble_plan(&cfg, order, &wm)
                    .map(|p| completion_time(&p))
                    .map_err(|e| CliError::Internal(e.to_string()))
            };
            Ok(CompareRow {
                alpha,
                proposed_time_s: time(&proposed)?,
                distance_time_s: time(&distance)?,
                proposed,
                distance,
            })
        })
        .collect()
}

pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut s = String::from("alpha,proposed_order,proposed_time_s,distance_order,distance_time_s\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            r.alpha,
            r.proposed.order.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-"),
            r.proposed_time_s,
            r.distance.order.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-"),
            r.distance_time_s
        ));
    }
    s
}

pub fn cmd_compare(
    scenario: &Path,
    alphas: &[f64],
    pos_tol_m: f64,
    csv_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if alphas.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
        return Err(CliError::Input("alphas must be finite and non-negative".into()));
    }
    let file = ScenarioFile::parse(&read(scenario)?).map_err(|e| CliError::Input(e.to_string()))?;
    let rows = compare_schemes(&file, alphas, pos_tol_m)?;
    writeln!(out, "{:>8}  {:>14}  {:>14}  {:>14}  {:>14}", "alpha", "proposed", "T_proposed_s", "distance", "T_distance_s")?;
    for r in &rows {
        writeln!(
            out,
            "{:>8}  {:>14}  {:>14.3}  {:>14}  {:>14.3}",
            r.alpha,
            format_order(&r.proposed.order),
            r.proposed_time_s,
            format_order(&r.distance.order),
            r.distance_time_s
        )?;
    }
    let csv = compare_csv(&rows);
    match csv_out {
        Some(path) => fs::write(path, csv)?,
        None => write!(out, "\n{csv}")?,
    }
    Ok(EXIT_OK)
}

pub const SAMPLE_HEADER: &str = "t,x,y,rate_bps,cum_bits,stage";

pub fn sample_csv(plan: &MissionPlan, cfg: &MissionConfig, dt: f64) -> String {
    let mut s = String::from(SAMPLE_HEADER);
    s.push('\n');
    for r in sample_trajectory(plan, cfg, dt) {
        s.push_str(&format!("{},{},{},{},{},{}\n", r.t, r.x, r.y, r.rate_bps, r.cum_bits, r.stage));
    }
    s
}

pub fn cmd_sample(
    scenario: &Path,
    plan_path: &Path,
    dt: f64,
    alpha: Option<f64>,
    csv_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(CliError::Input("--dt must be positive".into()));
    }
    let cfg = load_config(scenario, alpha)?;
    let plan = load_plan(plan_path, &cfg)?;
    if plan.timeline.is_empty() {
        return Err(CliError::Input("plan has an empty timeline".into()));
    }
    let csv = sample_csv(&plan, &cfg, dt);
    match csv_out {
        Some(path) => fs::write(path, csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(EXIT_OK)
}
