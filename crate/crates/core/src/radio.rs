//! Line-of-sight UAV-to-GBS link: free-space channel power and Shannon rate.

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::geometry::Point2D;

/// Link-budget constants, all in linear SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    /// Allocated bandwidth `B` in Hz.
    pub bandwidth_hz: f64,
    /// UAV transmit power `P` in watts.
    pub tx_power_w: f64,
    /// Channel power gain at the 1 m reference distance (linear).
    pub ref_gain_linear: f64,
    /// Receiver noise power in watts.
    pub noise_w: f64,
    /// UAV altitude minus GBS antenna height, in meters.
    pub height_diff_m: f64,
}

impl RadioParams {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fields = [
            ("bandwidth_hz", self.bandwidth_hz),
            ("tx_power_w", self.tx_power_w),
            ("ref_gain_linear", self.ref_gain_linear),
            ("noise_w", self.noise_w),
            ("height_diff_m", self.height_diff_m),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(ConfigError::NonPositive { field: name, value });
            }
        }
        Ok(())
    }

    /// Received SNR at unit distance, `P·β₀/σ²`.
    pub fn reference_snr(&self) -> f64 {
        self.tx_power_w * self.ref_gain_linear / self.noise_w
    }
}

/// Watts from dBm.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Linear power ratio from dB.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Slant range between the UAV at horizontal position `u` and the GBS at `g`.
pub fn distance3d(u: Point2D, g: Point2D, radio: &RadioParams) -> f64 {
    ((u - g).norm_squared() + radio.height_diff_m * radio.height_diff_m).sqrt()
}

/// Achievable rate in bits/s while transmitting from horizontal position `u`.
///
/// This is the positional rate only; whether the UAV is actually transmitting
/// at a given instant is decided by the mission timeline.
pub fn rate_bps(u: Point2D, g: Point2D, radio: &RadioParams) -> f64 {
    let d2 = (u - g).norm_squared() + radio.height_diff_m * radio.height_diff_m;
    radio.bandwidth_hz * (radio.reference_snr() / d2).ln_1p() / std::f64::consts::LN_2
}
