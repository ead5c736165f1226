//! Independent feasibility check of a mission plan.
//!
//! Nothing here trusts the volumes cached by the stage solver: every
//! transmitted volume is re-integrated from the timeline geometry. The same
//! checks apply to plans produced by other planners.

use serde::Serialize;

use crate::config::MissionConfig;
use crate::mission::{gated_volume, MissionPlan};
use crate::ordering::is_permutation;

/// Relative shortfall tolerated on delivered volumes.
pub const VOLUME_SLACK: f64 = 1e-5;
/// Positional tolerance for hover and endpoint checks, in meters.
pub const POSITION_TOL_M: f64 = 1e-6;
/// Relative overspeed tolerated on any segment.
pub const SPEED_SLACK: f64 = 1e-9;
/// Tolerance on timestamps, in seconds.
pub const TIME_TOL_S: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintCheck {
    pub id: String,
    pub satisfied: bool,
    /// Raw margin in the constraint's own unit; negative means violated.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub feasible: bool,
    pub per_constraint: Vec<ConstraintCheck>,
    /// Bits delivered in each transmission stage, in visit order.
    pub stage_delivered_bits: Vec<f64>,
    /// Delivered minus collected for each stage on its own. Informational:
    /// a plan may miss these and still meet the cumulative constraints.
    pub stage_margins: Vec<f64>,
    /// For each visit position `i`: bits delivered in stages `i..N` minus
    /// bits collected in stages `i..N`.
    pub cumulative_causality_margins: Vec<f64>,
}

impl VerificationReport {
    /// Whether every stage on its own delivered its target's volume, within
    /// [`VOLUME_SLACK`].
    pub fn stages_sufficient(&self, cfg: &MissionConfig, plan: &MissionPlan) -> bool {
        self.stage_margins.len() == plan.order.len()
            && plan.order.iter().zip(&self.stage_margins).all(|(&id, &m)| {
                m >= -VOLUME_SLACK * cfg.target(id).volume_bits
            })
    }

    pub fn failed(&self) -> impl Iterator<Item = &ConstraintCheck> {
        self.per_constraint.iter().filter(|c| !c.satisfied)
    }
}

struct Checks(Vec<ConstraintCheck>);

impl Checks {
    fn push(&mut self, id: impl Into<String>, satisfied: bool, margin: f64) {
        self.0.push(ConstraintCheck { id: id.into(), satisfied, margin });
    }
}

pub fn verify_plan(cfg: &MissionConfig, plan: &MissionPlan) -> VerificationReport {
    let n = cfg.n();
    let mut checks = Checks(Vec::new());
    let total = plan.total_time_s;

    let order_ok = is_permutation(&plan.order, n);
    checks.push("order-permutation", order_ok, if order_ok { 0.0 } else { -1.0 });
    let instants_ok = plan.critical_instants.len() == n;
    checks.push("critical-instants-count", instants_ok, if instants_ok { 0.0 } else { -1.0 });

    // Timeline shape.
    let tl = &plan.timeline;
    let mut gap_m: f64 = 0.0;
    let mut gap_s: f64 = 0.0;
    let mut negative_duration = false;
    if let Some(first) = tl.first() {
        gap_s = gap_s.max(first.t_start_s.abs());
    }
    for p in tl {
        negative_duration |= p.primitive.duration_s.is_nan() || p.primitive.duration_s < 0.0;
    }
    for w in tl.windows(2) {
        gap_m = gap_m.max(w[0].primitive.to.distance(w[1].primitive.from));
        gap_s = gap_s.max((w[0].t_end_s() - w[1].t_start_s).abs());
    }
    let end_s = tl.last().map_or(0.0, |p| p.t_end_s());
    let contiguous = !tl.is_empty() && !negative_duration && gap_m <= POSITION_TOL_M && gap_s <= TIME_TOL_S;
    checks.push("timeline-contiguity", contiguous, -(gap_m.max(gap_s)));

    // Endpoints u(0) = u0, u(T) = uF.
    let start_err = tl.first().map_or(f64::INFINITY, |p| p.primitive.from.distance(cfg.start));
    let finish_err = tl.last().map_or(f64::INFINITY, |p| p.primitive.to.distance(cfg.finish));
    let end_err = (end_s - total).abs();
    checks.push("start-point", start_err <= POSITION_TOL_M, -start_err);
    checks.push("finish-point", finish_err <= POSITION_TOL_M && end_err <= TIME_TOL_S, -finish_err.max(end_err));

    // Speed cap.
    let max_speed = tl.iter().map(|p| p.primitive.speed()).fold(0.0, f64::max);
    let overspeed_ok = max_speed <= cfg.v_max * (1.0 + SPEED_SLACK);
    checks.push("speed", overspeed_ok, cfg.v_max - max_speed);

    if !(order_ok && instants_ok) {
        return finish(checks, Vec::new(), Vec::new(), Vec::new());
    }

    // Collection hovers and instant ordering.
    let mut prev_depart = 0.0;
    for (i, (&id, ci)) in plan.order.iter().zip(&plan.critical_instants).enumerate() {
        let k = i + 1;
        let target = cfg.target(id);
        let dur_err = (ci.depart_s - ci.arrive_s - target.collect_time_s).abs();
        checks.push(format!("collection-time[{k}]"), dur_err <= TIME_TOL_S, -dur_err);

        let order_margin = ci.arrive_s - prev_depart;
        checks.push(format!("instant-order[{k}]"), order_margin >= -TIME_TOL_S, order_margin);
        prev_depart = ci.depart_s;

        let dev = hover_deviation(plan, ci.arrive_s, ci.depart_s, target.position);
        checks.push(format!("collection-hover[{k}]"), dev <= POSITION_TOL_M, -dev);
    }
    let last_margin = total - prev_depart;
    checks.push("instant-order[end]", last_margin >= -TIME_TOL_S, last_margin);

    // Transmitted volumes per stage, from geometry.
    let delivered: Vec<f64> = (0..n)
        .map(|i| {
            let t0 = plan.critical_instants[i].depart_s;
            let t1 = plan.critical_instants.get(i + 1).map_or(total, |c| c.arrive_s);
            gated_volume(tl, t0, t1, cfg.gbs, &cfg.radio)
        })
        .collect();
    let collected: Vec<f64> = plan.order.iter().map(|&id| cfg.target(id).volume_bits).collect();
    let stage_margins: Vec<f64> = delivered.iter().zip(&collected).map(|(d, c)| d - c).collect();

    let mut cumulative = vec![0.0; n];
    let (mut sent, mut owed) = (0.0, 0.0);
    for i in (0..n).rev() {
        sent += delivered[i];
        owed += collected[i];
        cumulative[i] = sent - owed;
        checks.push(format!("causality[{}]", i + 1), cumulative[i] >= -VOLUME_SLACK * owed, cumulative[i]);
    }

    finish(checks, delivered, stage_margins, cumulative)
}

fn finish(
    checks: Checks,
    stage_delivered_bits: Vec<f64>,
    stage_margins: Vec<f64>,
    cumulative_causality_margins: Vec<f64>,
) -> VerificationReport {
    let per_constraint = checks.0;
    VerificationReport {
        feasible: per_constraint.iter().all(|c| c.satisfied),
        per_constraint,
        stage_delivered_bits,
        stage_margins,
        cumulative_causality_margins,
    }
}

/// Largest distance from `at` over the timeline restricted to `[t0, t1]`.
fn hover_deviation(plan: &MissionPlan, t0: f64, t1: f64, at: crate::geometry::Point2D) -> f64 {
    let mut dev = [t0, t1]
        .iter()
        .map(|&t| plan.position_at(t).map_or(f64::INFINITY, |p| p.distance(at)))
        .fold(0.0, f64::max);
    for p in &plan.timeline {
        let a = (t0 - p.t_start_s).max(0.0);
        let b = (t1 - p.t_start_s).min(p.primitive.duration_s);
        if b > a {
            let piece = p.primitive.slice(a, b);
            dev = dev.max(piece.from.distance(at)).max(piece.to.distance(at));
        }
    }
    dev
}
