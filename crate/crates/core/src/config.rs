//! Mission description: targets, GBS, endpoints and kinematics.

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::geometry::Point2D;
use crate::radio::RadioParams;

/// A ground target served by hovering at its collection point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub position: Point2D,
    pub volume_bits: f64,
    pub collect_time_s: f64,
}

/// Everything the planner needs to know about one mission.
///
/// Graph vertices are numbered `0` (start), `1..=N` (targets in list
/// order) and `N + 1` (finish).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionConfig {
    pub radio: RadioParams,
    pub gbs: Point2D,
    pub start: Point2D,
    pub finish: Point2D,
    pub v_max: f64,
    pub targets: Vec<Target>,
}

impl MissionConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.radio.validate()?;
        if !(self.v_max.is_finite() && self.v_max > 0.0) {
            return Err(ConfigError::NonPositive { field: "v_max", value: self.v_max });
        }
        if self.targets.is_empty() {
            return Err(ConfigError::NoTargets);
        }
        for (name, p) in [("gbs", self.gbs), ("start", self.start), ("finish", self.finish)] {
            if !p.is_finite() {
                return Err(ConfigError::NonFinitePoint(name.to_string()));
            }
        }
        for (i, t) in self.targets.iter().enumerate() {
            let id = i + 1;
            if !t.position.is_finite() {
                return Err(ConfigError::NonFinitePoint(format!("target {id}")));
            }
            for (field, value) in [("volume_bits", t.volume_bits), ("collect_time_s", t.collect_time_s)] {
                if !(value.is_finite() && value >= 0.0) {
                    return Err(ConfigError::Negative { field: format!("target {id} {field}"), value });
                }
            }
        }
        Ok(())
    }

    /// Number of targets `N`.
    pub fn n(&self) -> usize {
        self.targets.len()
    }

    /// Index of the finish vertex, `N + 1`.
    pub fn finish_vertex(&self) -> usize {
        self.targets.len() + 1
    }

    pub fn vertex_position(&self, v: usize) -> Point2D {
        match v {
            0 => self.start,
            v if v == self.finish_vertex() => self.finish,
            v => self.targets[v - 1].position,
        }
    }

    /// Bits that must be offloaded on the stage leaving vertex `v`: zero for the
    /// start vertex, `D_v` for a target.
    pub fn outgoing_volume(&self, v: usize) -> f64 {
        match v {
            0 => 0.0,
            v if v == self.finish_vertex() => 0.0,
            v => self.targets[v - 1].volume_bits,
        }
    }

    pub fn target(&self, id: usize) -> &Target {
        &self.targets[id - 1]
    }

    /// Copy with every volume multiplied by `alpha`.
    pub fn scaled_volumes(&self, alpha: f64) -> MissionConfig {
        let mut cfg = self.clone();
        for t in &mut cfg.targets {
            t.volume_bits *= alpha;
        }
        cfg
    }

    pub fn total_volume(&self) -> f64 {
        self.targets.iter().map(|t| t.volume_bits).sum()
    }
}
