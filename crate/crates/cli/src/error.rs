use hypermoment::MomentError;
use hypermoment_sim::SimError;
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_CAP: u8 = 3;
pub const EXIT_COMPARISON: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("k_max = {k} exceeds the enumeration cap {cap}; pass --unsafe-cap {k} to run it anyway")]
    Cap { k: usize, cap: usize },

    #[error(transparent)]
    Moment(#[from] MomentError),

    #[error(transparent)]
    Sim(#[from] SimError),

    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),

    #[error("encoding output: {0}")]
    Encode(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => EXIT_CONFIG,
            Self::Cap { .. } => EXIT_CAP,
            Self::Moment(MomentError::EnumerationCap { .. }) => EXIT_CAP,
            Self::Moment(_) => EXIT_CONFIG,
            Self::Sim(SimError::InvalidParameter(_) | SimError::InvalidDistribution { .. }) => EXIT_CONFIG,
            Self::Sim(SimError::Moment(_)) => EXIT_CONFIG,
            Self::Sim(_) | Self::Io(_) | Self::Encode(_) => EXIT_RUNTIME,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Encode(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Encode(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
