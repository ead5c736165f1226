//! End-to-end planning: stage graph, visit order, assembled plan.

use std::fmt;
use std::str::FromStr;

use crate::config::MissionConfig;
use crate::error::{MissionError, OrderError};
use crate::mission::{assemble_plan, MissionPlan};
use crate::ordering::{
    build_weight_matrix_with_tol, solve_order_distance_tsp, solve_order_exhaustive, solve_order_heuristic,
    VisitOrder, WeightMatrix,
};

/// Largest `N` for which [`OrderMode::Auto`] runs the exhaustive search.
pub const AUTO_EXHAUSTIVE_MAX: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum OrderMode {
    /// Exhaustive up to [`AUTO_EXHAUSTIVE_MAX`] targets, heuristic beyond.
    #[default]
    Auto,
    Heuristic,
    Exhaustive,
    /// Shortest flying distance, ignoring transmission.
    Distance,
    Given(Vec<usize>),
}

impl FromStr for OrderMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(OrderMode::Auto),
            "nn" => Ok(OrderMode::Heuristic),
            "exhaustive" => Ok(OrderMode::Exhaustive),
            "distance" => Ok(OrderMode::Distance),
            list => list
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map(OrderMode::Given)
                .map_err(|_| format!("order must be auto, nn, exhaustive, distance or a list like 1,2,3; got {s:?}")),
        }
    }
}

impl fmt::Display for OrderMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderMode::Auto => f.write_str("auto"),
            OrderMode::Heuristic => f.write_str("nn"),
            OrderMode::Exhaustive => f.write_str("exhaustive"),
            OrderMode::Distance => f.write_str("distance"),
            OrderMode::Given(v) => f.write_str(&format_order(v)),
        }
    }
}

pub fn format_order(order: &[usize]) -> String {
    order.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Picks a visit order on `wm`; the returned cost is always priced on `wm`.
pub fn choose_order(cfg: &MissionConfig, wm: &WeightMatrix, mode: &OrderMode) -> Result<VisitOrder, OrderError> {
    match mode {
        OrderMode::Auto if wm.n() <= AUTO_EXHAUSTIVE_MAX => solve_order_exhaustive(wm),
        OrderMode::Auto | OrderMode::Heuristic => Ok(solve_order_heuristic(wm)),
        OrderMode::Exhaustive => solve_order_exhaustive(wm),
        OrderMode::Distance => VisitOrder::evaluate(solve_order_distance_tsp(cfg).order, wm),
        OrderMode::Given(order) => VisitOrder::evaluate(order.clone(), wm),
    }
}

pub fn plan_mission(cfg: &MissionConfig, mode: &OrderMode, pos_tol_m: f64) -> Result<MissionPlan, MissionError> {
    let wm = build_weight_matrix_with_tol(cfg, pos_tol_m);
    let order = choose_order(cfg, &wm, mode)?;
    assemble_plan(cfg, &order, &wm)
}
