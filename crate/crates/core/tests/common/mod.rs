//! Oracles and generators shared by the integration tests.
//!
//! The oracles here deliberately avoid the library's quadrature and stage
//! solver: volumes come from a closed-form antiderivative of the rate law or
//! from brute-force Riemann sums.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uav_mission::{MissionConfig, Point2D, RadioParams, Target};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// B = 1 MHz, P = 30 dBm, β0 = −60 dB, σ² = −110 dBm, H = 100 m.
pub fn reference_radio() -> RadioParams {
    RadioParams {
        bandwidth_hz: 1e6,
        tx_power_w: 1.0,
        ref_gain_linear: 1e-6,
        noise_w: 1e-14,
        height_diff_m: 100.0,
    }
}

pub fn reference_config(alpha: f64) -> MissionConfig {
    let targets = [([0.0, 0.0], 3e8), ([100.0, 100.0], 7e8), ([-30.0, -800.0], 2e8), ([70.0, -900.0], 6e8)]
        .into_iter()
        .map(|(xy, d)| Target { position: xy.into(), volume_bits: alpha * d, collect_time_s: 0.0 })
        .collect();
    MissionConfig {
        radio: reference_radio(),
        gbs: Point2D::new(20.0, -500.0),
        start: Point2D::new(-100.0, -400.0),
        finish: Point2D::new(150.0, -400.0),
        v_max: 10.0,
        targets,
    }
}

pub const REFERENCE_SCENARIO: &str = include_str!("../../scenarios/reference.toml");

// ---------------------------------------------------------------------------
// Volume oracles

/// `∫ ln(x² + a²) dx`.
fn log_antiderivative(x: f64, a: f64) -> f64 {
    x * (x * x + a * a).ln() - 2.0 * x + 2.0 * a * (x / a).atan()
}

/// Exact bits delivered flying the straight segment `p -> q` at `speed`.
///
/// Along the segment, `‖u − g‖² + H² = (s − s0)² + h²`, so the rate is
/// `B/ln2 · [ln((s−s0)² + h² + K) − ln((s−s0)² + h²)]` with `K = Pβ0/σ²`.
pub fn closed_form_segment_volume(p: Point2D, q: Point2D, speed: f64, g: Point2D, radio: &RadioParams) -> f64 {
    let len = p.distance(q);
    if len == 0.0 {
        return 0.0;
    }
    let d = (q - p) * (1.0 / len);
    let w = g - p;
    let s0 = w.dot(d);
    let e = w.cross(d);
    let h2 = e * e + radio.height_diff_m * radio.height_diff_m;
    let k = radio.tx_power_w * radio.ref_gain_linear / radio.noise_w;
    let (a_hi, a_lo) = ((h2 + k).sqrt(), h2.sqrt());
    let f = |x: f64| log_antiderivative(x, a_hi) - log_antiderivative(x, a_lo);
    radio.bandwidth_hz / std::f64::consts::LN_2 * (f(len - s0) - f(-s0)) / speed
}

/// Midpoint Riemann sum of the rate over the flight time with `steps` steps.
pub fn riemann_segment_volume(
    p: Point2D,
    q: Point2D,
    speed: f64,
    g: Point2D,
    radio: &RadioParams,
    steps: usize,
) -> f64 {
    let duration = p.distance(q) / speed;
    if duration == 0.0 {
        return 0.0;
    }
    let h = duration / steps as f64;
    let k = radio.tx_power_w * radio.ref_gain_linear / radio.noise_w;
    let h2 = radio.height_diff_m * radio.height_diff_m;
    let mut sum = 0.0;
    for i in 0..steps {
        let u = p.lerp(q, (i as f64 + 0.5) / steps as f64);
        let d2 = (u - g).norm_squared() + h2;
        sum += (k / d2).ln_1p();
    }
    radio.bandwidth_hz / std::f64::consts::LN_2 * sum * h
}

/// Closed-form `D_B(b)` for the two-leg path `origin -> b -> dest`.
pub fn oracle_two_leg_volume(origin: Point2D, b: Point2D, dest: Point2D, cfg: &MissionConfig) -> f64 {
    closed_form_segment_volume(origin, b, cfg.v_max, cfg.gbs, &cfg.radio)
        + closed_form_segment_volume(b, dest, cfg.v_max, cfg.gbs, &cfg.radio)
}

/// First of `points` evenly spaced turn points on `[origin, g]` (origin
/// excluded, g included) whose two-leg volume reaches `required`.
pub fn grid_turn_point(origin: Point2D, dest: Point2D, required: f64, cfg: &MissionConfig, points: usize) -> Option<Point2D> {
    (1..=points)
        .map(|k| origin.lerp(cfg.gbs, k as f64 / points as f64))
        .find(|&b| oracle_two_leg_volume(origin, b, dest, cfg) >= required)
}

// ---------------------------------------------------------------------------
// Generators

pub fn random_point<R: Rng>(rng: &mut R, half_width: f64) -> Point2D {
    Point2D::new(rng.gen_range(-half_width..half_width), rng.gen_range(-half_width..half_width))
}

/// Random mission around the reference link budget.
pub fn random_config<R: Rng>(rng: &mut R, n: usize) -> MissionConfig {
    let targets = (0..n)
        .map(|_| Target {
            position: random_point(rng, 1000.0),
            volume_bits: rng.gen_range(0.0..8e8),
            collect_time_s: if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..20.0) },
        })
        .collect();
    MissionConfig {
        radio: reference_radio(),
        gbs: random_point(rng, 600.0),
        start: random_point(rng, 1000.0),
        finish: random_point(rng, 1000.0),
        v_max: rng.gen_range(5.0..30.0),
        targets,
    }
}

/// Single-target configuration carrying only the link and kinematics.
pub fn stage_config(gbs: Point2D, v_max: f64) -> MissionConfig {
    MissionConfig {
        radio: reference_radio(),
        gbs,
        start: Point2D::default(),
        finish: Point2D::default(),
        v_max,
        targets: vec![Target { position: Point2D::default(), volume_bits: 0.0, collect_time_s: 0.0 }],
    }
}

/// A stage whose required volume falls strictly inside `(D_T, D_R0)`.
pub struct BalancedInstance {
    pub cfg: MissionConfig,
    pub origin: Point2D,
    pub dest: Point2D,
    pub required: f64,
}

pub fn random_balanced_instance<R: Rng>(rng: &mut R) -> BalancedInstance {
    loop {
        let cfg = stage_config(random_point(rng, 500.0), rng.gen_range(5.0..30.0));
        let origin = random_point(rng, 1000.0);
        let dest = random_point(rng, 1000.0);
        let straight = closed_form_segment_volume(origin, dest, cfg.v_max, cfg.gbs, &cfg.radio);
        let detour = oracle_two_leg_volume(origin, cfg.gbs, dest, &cfg);
        // Skip near-degenerate instances where the balanced window collapses.
        if origin.distance(cfg.gbs) < 1.0 || detour - straight < 1e-3 * detour {
            continue;
        }
        let required = straight + rng.gen_range(0.01..0.99) * (detour - straight);
        return BalancedInstance { cfg, origin, dest, required };
    }
}
