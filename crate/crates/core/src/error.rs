use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{field} must be finite and strictly positive, got {value}")]
    NonPositive { field: &'static str, value: f64 },
    #[error("{field} must be finite and non-negative, got {value}")]
    Negative { field: String, value: f64 },
    #[error("{0} has a non-finite coordinate")]
    NonFinitePoint(String),
    #[error("a mission needs at least one target")]
    NoTargets,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("primitive {index} does not start where the previous one ends (gap {gap_m} m)")]
    NonContiguousPath { index: usize, gap_m: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StageError {
    #[error("required volume {required_bits} bits is below the zero-hover detour volume {detour_bits} bits")]
    InsufficientVolume { required_bits: f64, detour_bits: f64 },
    #[error("required volume {required_bits} bits exceeds the zero-hover detour volume {detour_bits} bits")]
    BeyondDetourVolume { required_bits: f64, detour_bits: f64 },
    #[error("stage origin coincides with the GBS; no turn point can be searched")]
    DegenerateGeometry,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrderError {
    #[error("exhaustive search limited to {max} targets, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("order {0:?} is not a permutation of the target indices")]
    InvalidOrder(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MissionError {
    #[error("no stage solution for edge {from} -> {to}")]
    MissingStageSolution { from: usize, to: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
}
