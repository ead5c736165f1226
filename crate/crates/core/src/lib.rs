//! Mission planning for a cellular-connected UAV that hovers at fixed points
//! to collect data and must offload every collected bit to a ground base
//! station (GBS) while flying.
//!
//! The planner splits the mission into independent stages (start to first
//! target, then target to target while transmitting), designs each stage in
//! closed form or by a 1-D bisection ([`subtrajectory`]), prices every
//! possible stage on a directed graph and picks the visit order as a
//! fixed-endpoint path TSP ([`ordering`]). [`mission`] stitches the result
//! into a timeline and [`verify`] re-checks it from scratch.

pub mod cli;
pub mod config;
pub mod error;
pub mod geometry;
pub mod mission;
pub mod ordering;
pub mod planner;
pub mod primitive;
pub mod quadrature;
pub mod radio;
pub mod sample;
pub mod scenario;
pub mod subtrajectory;
pub mod verify;

pub use config::{MissionConfig, Target};
pub use geometry::Point2D;
pub use mission::{assemble_plan, completion_time, MissionPlan, StageLabel, TimedPrimitive};
pub use ordering::{build_weight_matrix, VisitOrder, WeightMatrix};
pub use primitive::{volume_along, volume_along_path, FlightPrimitive, PrimitiveKind};
pub use radio::{distance3d, rate_bps, RadioParams};
pub use subtrajectory::{solve_stage, SubTrajectory, TrajectoryKind};
pub use verify::{verify_plan, VerificationReport};
