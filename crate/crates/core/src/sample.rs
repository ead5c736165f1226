//! Uniform-time sampling of a plan for plotting and export.

use crate::config::MissionConfig;
use crate::mission::{gated_volume, MissionPlan, StageLabel};
use crate::radio::rate_bps;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    /// Instantaneous rate, zero outside transmission stages.
    pub rate_bps: f64,
    /// Bits delivered on `[0, t]`, integrated exactly between samples.
    pub cum_bits: f64,
    pub stage: StageLabel,
}

/// Sample times `0, dt, 2dt, …` plus `T` itself when `T` is not a multiple of `dt`.
pub fn sample_times(total: f64, dt: f64) -> Vec<f64> {
    assert!(dt > 0.0, "sampling step must be positive");
    let steps = (total / dt).floor();
    let n = steps as usize;
    let mut times: Vec<f64> = (0..=n).map(|k| k as f64 * dt).collect();
    let last = *times.last().expect("at least t = 0");
    if (total - last).abs() <= 1e-9 * total.max(1.0) {
        *times.last_mut().unwrap() = total;
    } else {
        times.push(total);
    }
    times
}

/// # Panics
/// If `dt <= 0` or the plan has an empty timeline.
pub fn sample_trajectory(plan: &MissionPlan, cfg: &MissionConfig, dt: f64) -> Vec<TrajectorySample> {
    let mut cum = 0.0;
    let mut prev_t = 0.0;
    sample_times(plan.total_time_s, dt)
        .into_iter()
        .map(|t| {
            let active = plan.active_primitive(t).expect("timeline is empty");
            let pos = active.primitive.position_at(t - active.t_start_s);
            let rate = if active.transmitting { rate_bps(pos, cfg.gbs, &cfg.radio) } else { 0.0 };
            cum += gated_volume(&plan.timeline, prev_t, t, cfg.gbs, &cfg.radio);
            prev_t = t;
            TrajectorySample { t, x: pos.x, y: pos.y, rate_bps: rate, cum_bits: cum, stage: active.stage }
        })
        .collect()
}
