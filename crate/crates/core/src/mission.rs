//! Whole-mission plans: stage sub-trajectories stitched together with the
//! collection hovers into one timestamped timeline.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::MissionConfig;
use crate::error::MissionError;
use crate::geometry::Point2D;
use crate::ordering::{VisitOrder, WeightMatrix};
use crate::primitive::{volume_along, FlightPrimitive};
use crate::radio::RadioParams;
use crate::subtrajectory::SubTrajectory;

/// Which part of the mission a primitive belongs to. Target ids are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum StageLabel {
    /// Flight from the start to the first target; nothing to transmit yet.
    Initial,
    /// Hovering at a target's collection point.
    Collect(usize),
    /// Flight after leaving a target, offloading that target's data.
    Transmit(usize),
}

impl fmt::Display for StageLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageLabel::Initial => f.write_str("initial"),
            StageLabel::Collect(k) => write!(f, "collect-{k}"),
            StageLabel::Transmit(k) => write!(f, "transmit-{k}"),
        }
    }
}

impl FromStr for StageLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "initial" {
            return Ok(StageLabel::Initial);
        }
        let parse_id = |rest: &str| rest.parse::<usize>().map_err(|_| format!("bad stage label {s:?}"));
        if let Some(rest) = s.strip_prefix("collect-") {
            return parse_id(rest).map(StageLabel::Collect);
        }
        if let Some(rest) = s.strip_prefix("transmit-") {
            return parse_id(rest).map(StageLabel::Transmit);
        }
        Err(format!("bad stage label {s:?}"))
    }
}

impl TryFrom<String> for StageLabel {
    type Error = String;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<StageLabel> for String {
    fn from(label: StageLabel) -> String {
        label.to_string()
    }
}

/// A flight primitive placed on the mission clock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimedPrimitive {
    pub t_start_s: f64,
    #[serde(flatten)]
    pub primitive: FlightPrimitive,
    /// Whether the UAV transmits to the GBS during this primitive.
    pub transmitting: bool,
    pub stage: StageLabel,
}

impl TimedPrimitive {
    pub fn t_end_s(&self) -> f64 {
        self.t_start_s + self.primitive.duration_s
    }
}

/// Arrival at (`arrive_s`) and departure from (`depart_s`) the i-th visited
/// collection point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalInstants {
    pub arrive_s: f64,
    pub depart_s: f64,
}

/// The collection hover at one target and the transmission stage after it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannedStage {
    pub target: usize,
    pub collect_s: f64,
    pub transmission: SubTrajectory,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionPlan {
    pub order: Vec<usize>,
    /// Path weight of `order` on the stage graph. Informational.
    #[serde(default)]
    pub order_cost_s: f64,
    pub critical_instants: Vec<CriticalInstants>,
    /// Stage designs; absent for plans produced by other tools.
    #[serde(default)]
    pub initial: Option<SubTrajectory>,
    #[serde(default)]
    pub stages: Vec<PlannedStage>,
    pub total_time_s: f64,
    pub timeline: Vec<TimedPrimitive>,
}

impl MissionPlan {
    pub fn visit_order(&self) -> VisitOrder {
        VisitOrder { order: self.order.clone(), cost_s: self.order_cost_s }
    }

    /// Primitive active at time `t` (half-open `[start, end)`; the last
    /// non-empty primitive also owns `t = T`). Zero-duration primitives are
    /// never returned unless the timeline has nothing else.
    pub fn active_primitive(&self, t: f64) -> Option<&TimedPrimitive> {
        active_primitive(&self.timeline, t)
    }

    pub fn position_at(&self, t: f64) -> Option<Point2D> {
        self.active_primitive(t)
            .map(|p| p.primitive.position_at(t - p.t_start_s))
    }
}

pub(crate) fn active_primitive(timeline: &[TimedPrimitive], t: f64) -> Option<&TimedPrimitive> {
    let idx = timeline.partition_point(|p| p.t_start_s <= t);
    timeline[..idx]
        .iter()
        .rev()
        .find(|p| p.primitive.duration_s > 0.0)
        .or_else(|| timeline.iter().find(|p| p.primitive.duration_s > 0.0))
        .or_else(|| timeline.first())
}

/// Bits delivered over `[t0, t1]` by the transmitting primitives of `timeline`.
pub(crate) fn gated_volume(
    timeline: &[TimedPrimitive],
    t0: f64,
    t1: f64,
    g: Point2D,
    radio: &RadioParams,
) -> f64 {
    if t1 <= t0 {
        return 0.0;
    }
    let first = timeline.partition_point(|p| p.t_end_s() <= t0);
    let mut total = 0.0;
    for p in &timeline[first..] {
        if p.t_start_s >= t1 {
            break;
        }
        if !p.transmitting || p.primitive.duration_s <= 0.0 {
            continue;
        }
        let a = (t0 - p.t_start_s).max(0.0);
        let b = (t1 - p.t_start_s).min(p.primitive.duration_s);
        if b > a {
            let piece = if a == 0.0 && b == p.primitive.duration_s {
                p.primitive
            } else {
                p.primitive.slice(a, b)
            };
            total += volume_along(&piece, g, radio);
        }
    }
    total
}

/// Stitches the precomputed stage solutions for `order` into a plan.
///
/// With `τ_i` the duration of the stage ending at the i-th visited target
/// and `C_i` its collection time, `arrive_i = Σ_{j<i} C_j + Σ_{j≤i} τ_j` and
/// `depart_i = arrive_i + C_i`.
pub fn assemble_plan(
    cfg: &MissionConfig,
    order: &VisitOrder,
    wm: &WeightMatrix,
) -> Result<MissionPlan, MissionError> {
    wm.check_order(&order.order)?;
    let finish = cfg.finish_vertex();
    let lookup = |from: usize, to: usize| {
        wm.stage(from, to)
            .cloned()
            .ok_or(MissionError::MissingStageSolution { from, to })
    };

    let mut timeline = Vec::new();
    let mut push_stage = |t0: f64, primitives: &[FlightPrimitive], label: StageLabel, transmitting: bool| {
        let mut t = t0;
        for p in primitives {
            timeline.push(TimedPrimitive { t_start_s: t, primitive: *p, transmitting, stage: label });
            t += p.duration_s;
        }
        t
    };

    let mut clock = 0.0;
    let initial = lookup(0, order.order[0])?;
    // The clock follows the timeline itself so that instants and the
    // completion time match primitive timestamps bit for bit.
    clock = push_stage(clock, &initial.primitives, StageLabel::Initial, false);

    let mut critical_instants = Vec::with_capacity(cfg.n());
    let mut stages = Vec::with_capacity(cfg.n());
    for (k, &target) in order.order.iter().enumerate() {
        let arrive_s = clock;
        let collect_s = cfg.target(target).collect_time_s;
        let depart_s = if collect_s > 0.0 {
            let hover = FlightPrimitive::hover(cfg.target(target).position, collect_s);
            push_stage(arrive_s, &[hover], StageLabel::Collect(target), false)
        } else {
            arrive_s
        };
        critical_instants.push(CriticalInstants { arrive_s, depart_s });

        let next = order.order.get(k + 1).copied().unwrap_or(finish);
        let transmission = lookup(target, next)?;
        clock = push_stage(depart_s, &transmission.primitives, StageLabel::Transmit(target), true);
        stages.push(PlannedStage { target, collect_s, transmission });
    }

    Ok(MissionPlan {
        order: order.order.clone(),
        order_cost_s: wm.path_cost(&order.order),
        critical_instants,
        initial: Some(initial),
        stages,
        total_time_s: clock,
        timeline,
    })
}

/// Mission completion time `T`: the instant the UAV reaches the finish point.
pub fn completion_time(plan: &MissionPlan) -> f64 {
    plan.total_time_s
}
