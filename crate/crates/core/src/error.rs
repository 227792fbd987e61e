use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid weight moment sequence: {0}")]
    InvalidWeightMoments(String),

    #[error("weight moments known up to X_{available}, but X_{needed} is required")]
    MomentsTooShort { needed: usize, available: usize },

    #[error("edge vector has length {len}, expected {kappa}")]
    DimensionMismatch { kappa: usize, len: usize },

    #[error("end vertex {j} outside 1..={kappa}")]
    IndexOutOfRange { j: usize, kappa: usize },

    #[error("even moment m_{k} is negative")]
    NegativeEvenMoment { k: usize },

    #[error("walk length {k} exceeds the enumeration cap {cap}")]
    EnumerationCap { k: usize, cap: usize },

    #[error("vertex count N={n} is smaller than the hyperedge size q={q}")]
    TooFewVertices { n: u64, q: usize },

    #[error("malformed walk: {0}")]
    InvalidWalk(String),
}

pub type Result<T> = std::result::Result<T, MomentError>;
