//! Straight-line and hover pieces of a flight plan, and the data volume
//! delivered to the GBS while flying them.

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::geometry::Point2D;
use crate::quadrature::{adaptive_simpson, MAX_DEPTH, REL_TOL};
use crate::radio::{rate_bps, RadioParams};

/// Endpoint mismatch tolerated between consecutive primitives, in meters.
pub const CONTIGUITY_TOL_M: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimitiveKind {
    Segment,
    Hover,
}

/// Constant-velocity motion from `from` to `to` over `duration_s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlightPrimitive {
    pub kind: PrimitiveKind,
    pub from: Point2D,
    pub to: Point2D,
    pub duration_s: f64,
}

impl FlightPrimitive {
    /// Straight flight at exactly `speed`. A zero-length segment takes no time.
    pub fn segment(from: Point2D, to: Point2D, speed: f64) -> Self {
        Self {
            kind: PrimitiveKind::Segment,
            from,
            to,
            duration_s: from.distance(to) / speed,
        }
    }

    pub fn hover(at: Point2D, duration_s: f64) -> Self {
        Self {
            kind: PrimitiveKind::Hover,
            from: at,
            to: at,
            duration_s,
        }
    }

    pub fn length(&self) -> f64 {
        self.from.distance(self.to)
    }

    /// Ground speed; zero for hovers and zero-duration pieces of zero length.
    pub fn speed(&self) -> f64 {
        let len = self.length();
        if len == 0.0 {
            0.0
        } else {
            len / self.duration_s
        }
    }

    /// Position `dt` seconds after the start of the primitive, clamped to its span.
    pub fn position_at(&self, dt: f64) -> Point2D {
        if self.duration_s <= 0.0 {
            return self.to;
        }
        self.from.lerp(self.to, (dt / self.duration_s).clamp(0.0, 1.0))
    }

    /// The sub-primitive covering `[t0, t1]` seconds after the start.
    pub fn slice(&self, t0: f64, t1: f64) -> FlightPrimitive {
        let t0 = t0.clamp(0.0, self.duration_s);
        let t1 = t1.clamp(t0, self.duration_s);
        FlightPrimitive {
            kind: self.kind,
            from: self.position_at(t0),
            to: self.position_at(t1),
            duration_s: t1 - t0,
        }
    }

    pub fn reversed(&self) -> FlightPrimitive {
        FlightPrimitive {
            from: self.to,
            to: self.from,
            ..*self
        }
    }
}

/// Bits delivered to the GBS at `g` while transmitting throughout `primitive`.
pub fn volume_along(primitive: &FlightPrimitive, g: Point2D, radio: &RadioParams) -> f64 {
    let duration = primitive.duration_s;
    if duration <= 0.0 {
        return 0.0;
    }
    if primitive.from == primitive.to {
        return rate_bps(primitive.from, g, radio) * duration;
    }
    let (from, to) = (primitive.from, primitive.to);
    adaptive_simpson(
        |t| rate_bps(from.lerp(to, t / duration), g, radio),
        0.0,
        duration,
        REL_TOL,
        MAX_DEPTH,
    )
}

/// Sum of [`volume_along`] over a contiguous chain of primitives.
pub fn volume_along_path(
    primitives: &[FlightPrimitive],
    g: Point2D,
    radio: &RadioParams,
) -> Result<f64, ModelError> {
    check_contiguous(primitives)?;
    Ok(primitives.iter().map(|p| volume_along(p, g, radio)).sum())
}

pub(crate) fn check_contiguous(primitives: &[FlightPrimitive]) -> Result<(), ModelError> {
    for (index, pair) in primitives.windows(2).enumerate() {
        let gap = pair[0].to.distance(pair[1].from);
        if gap > CONTIGUITY_TOL_M {
            return Err(ModelError::NonContiguousPath { index: index + 1, gap_m: gap });
        }
    }
    Ok(())
}
