//! Scenario files (TOML) and plan documents (JSON).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{MissionConfig, Target};
use crate::error::ConfigError;
use crate::geometry::Point2D;
use crate::mission::MissionPlan;
use crate::radio::{db_to_linear, dbm_to_watts, RadioParams};

pub const PLAN_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot parse scenario: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("cannot parse plan: {0}")]
    PlanParse(#[from] serde_json::Error),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetEntry {
    pub xy: Point2D,
    /// Reference volume before scaling by `alpha`.
    pub volume_bits: f64,
    #[serde(default)]
    pub collect_time_s: f64,
}

/// Mission description as written by users, in engineering units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub bandwidth_hz: f64,
    pub tx_power_dbm: f64,
    pub ref_gain_db: f64,
    pub noise_dbm: f64,
    pub v_max_mps: f64,
    pub uav_altitude_m: f64,
    pub gbs_height_m: f64,
    pub gbs_xy: Point2D,
    pub start_xy: Point2D,
    pub finish_xy: Point2D,
    #[serde(default = "unit_alpha")]
    pub alpha: f64,
    pub targets: Vec<TargetEntry>,
}

fn unit_alpha() -> f64 {
    1.0
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<ScenarioFile, ScenarioError> {
        Ok(toml::from_str(text)?)
    }

    /// Mission configuration with the file's own `alpha`.
    pub fn to_config(&self) -> Result<MissionConfig, ScenarioError> {
        self.to_config_with_alpha(self.alpha)
    }

    /// Converts dB quantities to linear SI units and scales volumes by `alpha`.
    pub fn to_config_with_alpha(&self, alpha: f64) -> Result<MissionConfig, ScenarioError> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(ScenarioError::Invalid(format!("alpha must be finite and >= 0, got {alpha}")));
        }
        for (name, v) in [
            ("tx_power_dbm", self.tx_power_dbm),
            ("ref_gain_db", self.ref_gain_db),
            ("noise_dbm", self.noise_dbm),
            ("uav_altitude_m", self.uav_altitude_m),
            ("gbs_height_m", self.gbs_height_m),
        ] {
            if !v.is_finite() {
                return Err(ScenarioError::Invalid(format!("{name} must be finite")));
            }
        }
        if self.uav_altitude_m <= self.gbs_height_m {
            return Err(ScenarioError::Invalid(format!(
                "uav_altitude_m ({}) must exceed gbs_height_m ({})",
                self.uav_altitude_m, self.gbs_height_m
            )));
        }
        let cfg = MissionConfig {
            radio: RadioParams {
                bandwidth_hz: self.bandwidth_hz,
                tx_power_w: dbm_to_watts(self.tx_power_dbm),
                ref_gain_linear: db_to_linear(self.ref_gain_db),
                noise_w: dbm_to_watts(self.noise_dbm),
                height_diff_m: self.uav_altitude_m - self.gbs_height_m,
            },
            gbs: self.gbs_xy,
            start: self.start_xy,
            finish: self.finish_xy,
            v_max: self.v_max_mps,
            targets: self
                .targets
                .iter()
                .map(|t| Target {
                    position: t.xy,
                    volume_bits: alpha * t.volume_bits,
                    collect_time_s: t.collect_time_s,
                })
                .collect(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// On-disk plan: the plan itself plus a format tag and its target count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanDocument {
    pub format_version: u32,
    pub n_targets: usize,
    #[serde(flatten)]
    pub plan: MissionPlan,
}

impl PlanDocument {
    pub fn new(plan: MissionPlan) -> PlanDocument {
        PlanDocument { format_version: PLAN_FORMAT_VERSION, n_targets: plan.order.len(), plan }
    }

    /// Pretty JSON. Floats use shortest round-trip formatting, so reading the
    /// document back reproduces every value bit for bit.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plan is serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<PlanDocument, ScenarioError> {
        let doc: PlanDocument = serde_json::from_str(text)?;
        if doc.format_version != PLAN_FORMAT_VERSION {
            return Err(ScenarioError::Invalid(format!(
                "unsupported plan format version {}",
                doc.format_version
            )));
        }
        Ok(doc)
    }
}
