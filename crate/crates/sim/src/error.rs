use hypermoment::MomentError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid weight distribution `{spec}`: {reason}")]
    InvalidDistribution { spec: String, reason: String },

    #[error("symmetric eigensolver did not converge (trial {trial}, seed {seed})")]
    Eigen { trial: usize, seed: u64 },

    #[error("moment paths disagree on trial {trial}: M_{k} = {trace} by trace powers, {spectral} from eigenvalues")]
    MomentPathMismatch { trial: usize, k: usize, trace: f64, spectral: f64 },

    #[error(transparent)]
    Moment(#[from] MomentError),
}

pub type Result<T> = std::result::Result<T, SimError>;
