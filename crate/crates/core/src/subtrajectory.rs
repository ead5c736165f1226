//! Single-stage trajectory design.
//!
//! A stage flies from `origin` to `dest` while offloading `required_bits` to
//! the GBS. Three path families cover the whole range of volumes:
//!
//! * **time-oriented**: straight line at full speed. Optimal whenever the
//!   straight flight already delivers the volume (`required ≤ D_T`).
//! * **rate-oriented**: fly straight to the point above the GBS, hover there
//!   just long enough, then fly straight to `dest` (`required ≥ D_R0`, the
//!   zero-hover volume of that detour).
//! * **balanced**: two straight legs joined at a turn point `b` on the
//!   segment `[origin, g]`. Both the flying time and the delivered volume grow
//!   as `b` slides from `origin` toward `g`, so the shortest feasible `b` is
//!   found by bisection on its arc-length position.
//!
//! Every leg is flown at `v_max`; the only hover is above the GBS.

use serde::{Deserialize, Serialize};

use crate::config::MissionConfig;
use crate::error::StageError;
use crate::geometry::Point2D;
use crate::primitive::{volume_along, FlightPrimitive};
use crate::radio::rate_bps;

/// Default width of the final bisection bracket, in meters.
pub const DEFAULT_POS_TOL_M: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryKind {
    TimeOriented,
    RateOriented,
    Balanced,
    /// Supplied by an outside planner; structure unknown.
    External,
}

/// Flight plan for one stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubTrajectory {
    pub kind: TrajectoryKind,
    pub primitives: Vec<FlightPrimitive>,
    pub duration_s: f64,
    pub delivered_bits: f64,
    /// Turn point `b`, balanced trajectories only.
    pub turn_point: Option<Point2D>,
    /// Hover time above the GBS, rate-oriented trajectories only.
    pub hover_s: f64,
}

impl SubTrajectory {
    fn from_primitives(
        kind: TrajectoryKind,
        primitives: Vec<FlightPrimitive>,
        stage: &Stage<'_>,
    ) -> SubTrajectory {
        let duration_s = primitives.iter().map(|p| p.duration_s).sum();
        let delivered_bits = primitives.iter().map(|p| stage.volume(p)).sum();
        SubTrajectory {
            kind,
            primitives,
            duration_s,
            delivered_bits,
            turn_point: None,
            hover_s: 0.0,
        }
    }

    pub fn origin(&self) -> Option<Point2D> {
        self.primitives.first().map(|p| p.from)
    }

    pub fn destination(&self) -> Option<Point2D> {
        self.primitives.last().map(|p| p.to)
    }
}

/// Geometry and link constants shared by the three constructions.
struct Stage<'a> {
    origin: Point2D,
    dest: Point2D,
    cfg: &'a MissionConfig,
}

impl Stage<'_> {
    fn volume(&self, p: &FlightPrimitive) -> f64 {
        volume_along(p, self.cfg.gbs, &self.cfg.radio)
    }

    fn leg(&self, from: Point2D, to: Point2D) -> FlightPrimitive {
        FlightPrimitive::segment(from, to, self.cfg.v_max)
    }

    /// `D_T`: volume of the straight flight.
    fn straight_volume(&self) -> f64 {
        self.volume(&self.leg(self.origin, self.dest))
    }

    /// `D_R0`: volume of the via-GBS detour without hovering.
    fn detour_volume(&self) -> f64 {
        let g = self.cfg.gbs;
        self.volume(&self.leg(self.origin, g)) + self.volume(&self.leg(g, self.dest))
    }

    /// Turn point at arc length `s` from the origin along `[origin, g]`.
    fn turn_point(&self, s: f64, reach: f64) -> Point2D {
        if s >= reach {
            self.cfg.gbs
        } else {
            self.origin.lerp(self.cfg.gbs, s / reach)
        }
    }

    /// `D_B(b)` for the turn point at arc length `s`.
    fn balanced_volume(&self, s: f64, reach: f64) -> f64 {
        let b = self.turn_point(s, reach);
        self.volume(&self.leg(self.origin, b)) + self.volume(&self.leg(b, self.dest))
    }

    fn time_oriented(&self) -> SubTrajectory {
        SubTrajectory::from_primitives(
            TrajectoryKind::TimeOriented,
            vec![self.leg(self.origin, self.dest)],
            self,
        )
    }

    fn rate_oriented(&self, required_bits: f64, detour_bits: f64) -> Result<SubTrajectory, StageError> {
        if required_bits < detour_bits {
            return Err(StageError::InsufficientVolume { required_bits, detour_bits });
        }
        let g = self.cfg.gbs;
        let hover_s = (required_bits - detour_bits) / rate_bps(g, g, &self.cfg.radio);
        let primitives = vec![
            self.leg(self.origin, g),
            FlightPrimitive::hover(g, hover_s),
            self.leg(g, self.dest),
        ];
        let mut sub = SubTrajectory::from_primitives(TrajectoryKind::RateOriented, primitives, self);
        sub.hover_s = hover_s;
        Ok(sub)
    }

    fn balanced(&self, required_bits: f64, pos_tol_m: f64) -> Result<SubTrajectory, StageError> {
        let reach = self.origin.distance(self.cfg.gbs);
        if reach == 0.0 {
            return Err(StageError::DegenerateGeometry);
        }
        let detour_bits = self.balanced_volume(reach, reach);
        if required_bits > detour_bits {
            return Err(StageError::BeyondDetourVolume { required_bits, detour_bits });
        }

        // Bracket invariant: D_B(lo) < required <= D_B(hi). Returning `hi`
        // keeps the plan feasible regardless of where the root sits inside
        // the final bracket.
        let (mut lo, mut hi) = (0.0, reach);
        let mut first = true;
        while hi - lo > pos_tol_m {
            let mid = 0.5 * (lo + hi);
            let v = self.balanced_volume(mid, reach);
            if first {
                debug_assert!(
                    v >= self.straight_volume() * (1.0 - 1e-9) && v <= detour_bits * (1.0 + 1e-9),
                    "balanced volume not bracketed by its endpoints at the midpoint"
                );
                first = false;
            }
            if v >= required_bits {
                hi = mid;
            } else {
                lo = mid;
            }
        }

        let b = self.turn_point(hi, reach);
        let primitives = vec![self.leg(self.origin, b), self.leg(b, self.dest)];
        let mut sub = SubTrajectory::from_primitives(TrajectoryKind::Balanced, primitives, self);
        sub.turn_point = Some(b);
        Ok(sub)
    }
}

/// `D_T`: bits delivered by flying straight from `origin` to `dest` at `v_max`.
pub fn straight_volume(origin: Point2D, dest: Point2D, cfg: &MissionConfig) -> f64 {
    Stage { origin, dest, cfg }.straight_volume()
}

/// `D_R0`: bits delivered by flying `origin -> g -> dest` at `v_max` without hovering.
pub fn detour_volume(origin: Point2D, dest: Point2D, cfg: &MissionConfig) -> f64 {
    Stage { origin, dest, cfg }.detour_volume()
}

/// Straight flight at full speed.
pub fn time_oriented(origin: Point2D, dest: Point2D, cfg: &MissionConfig) -> SubTrajectory {
    Stage { origin, dest, cfg }.time_oriented()
}

/// Detour over the GBS with the minimum hover that delivers `required_bits`.
pub fn rate_oriented(
    origin: Point2D,
    dest: Point2D,
    required_bits: f64,
    cfg: &MissionConfig,
) -> Result<SubTrajectory, StageError> {
    let stage = Stage { origin, dest, cfg };
    stage.rate_oriented(required_bits, stage.detour_volume())
}

/// Two-leg path through the turn point on `[origin, g]` that just delivers
/// `required_bits`, located to within `pos_tol_m` of arc length.
pub fn balanced(
    origin: Point2D,
    dest: Point2D,
    required_bits: f64,
    cfg: &MissionConfig,
    pos_tol_m: f64,
) -> Result<SubTrajectory, StageError> {
    Stage { origin, dest, cfg }.balanced(required_bits, pos_tol_m)
}

/// Minimum-time stage design with the default bisection tolerance.
pub fn solve_stage(origin: Point2D, dest: Point2D, required_bits: f64, cfg: &MissionConfig) -> SubTrajectory {
    solve_stage_with_tol(origin, dest, required_bits, cfg, DEFAULT_POS_TOL_M)
}

/// Picks the structure by comparing `required_bits` against `D_T` and `D_R0`:
/// time-oriented on `[0, D_T]`, balanced on `(D_T, D_R0)`, rate-oriented on
/// `[D_R0, ∞)`.
pub fn solve_stage_with_tol(
    origin: Point2D,
    dest: Point2D,
    required_bits: f64,
    cfg: &MissionConfig,
    pos_tol_m: f64,
) -> SubTrajectory {
    let stage = Stage { origin, dest, cfg };
    let straight = stage.time_oriented();
    if required_bits <= straight.delivered_bits {
        return straight;
    }
    let detour_bits = stage.detour_volume();
    // With the origin above the GBS the detour is the straight line, so
    // D_T == D_R0 and the balanced branch is empty.
    if required_bits >= detour_bits || origin == cfg.gbs {
        return stage
            .rate_oriented(required_bits, detour_bits.min(required_bits))
            .expect("required volume is at least the detour volume");
    }
    stage
        .balanced(required_bits, pos_tol_m)
        .expect("required volume lies strictly between D_T and D_R0")
}
