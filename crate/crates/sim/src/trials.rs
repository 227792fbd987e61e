//! Independent trials and their aggregates.

use hypermoment::{rational_string, BigRational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adjacency::assemble_adjacency;
use crate::distribution::WeightDistribution;
use crate::error::{Result, SimError};
use crate::histogram::{eigen_histogram, BinSpec, Histogram};
use crate::hypergraph::{edge_probability, sample_hypergraph, EdgeSampler};
use crate::moments::{absolute_moments, eigenvalues, empirical_moments, moments_from_eigenvalues};

/// Relative tolerance between trace-power and spectral moments.
pub const MOMENT_PATH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramRequest {
    pub bins: usize,
    /// Defaults to a symmetric range covering every eigenvalue seen.
    pub range: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub q: usize,
    #[serde(with = "rational_string")]
    pub p: BigRational,
    pub dist: WeightDistribution,
    pub trials: usize,
    pub k_max: usize,
    pub seed: u64,
    #[serde(default)]
    pub sampler: EdgeSampler,
    #[serde(default)]
    pub histogram: Option<HistogramRequest>,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        edge_probability(self.n, self.q, &self.p)?;
        if self.trials == 0 {
            return Err(SimError::InvalidParameter("trials must be at least 1".into()));
        }
        if let Some(h) = &self.histogram {
            if h.bins == 0 {
                return Err(SimError::InvalidParameter("histogram needs at least one bin".into()));
            }
            if let Some((lo, hi)) = h.range {
                BinSpec::new(lo, hi, h.bins)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRun {
    pub config: SimConfig,
    /// `M̂_0..=M̂_{k_max}` for each trial, in trial order.
    pub per_trial: Vec<Vec<f64>>,
    pub edge_counts: Vec<usize>,
    pub mean: Vec<f64>,
    /// Standard error of the mean; absent with a single trial.
    pub std_err: Option<Vec<f64>>,
    /// Sample covariance `Ĉ_{k,m}` of `(M̂_k, M̂_m)`; absent with a single
    /// trial.
    pub correlators: Option<Vec<Vec<f64>>>,
    pub histogram: Option<Histogram>,
}

impl SimRun {
    pub fn correlator(&self, k: usize, m: usize) -> Option<f64> {
        self.correlators.as_ref().map(|c| c[k][m])
    }
}

/// Stream `trial` of the ChaCha8 generator keyed by `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

struct Trial {
    moments: Vec<f64>,
    edges: usize,
    eigs: Option<Vec<f64>>,
}

fn run_one(config: &SimConfig, index: usize) -> Result<Trial> {
    let mut rng = trial_rng(config.seed, index);
    let h = sample_hypergraph(config.n, config.q, &config.p, &config.dist, config.sampler, &mut rng)?;
    let a = assemble_adjacency(&h);
    let moments = empirical_moments(&a, config.k_max);
    let eigs = match config.histogram {
        None => None,
        Some(_) => {
            let eigs = eigenvalues(&a).ok_or(SimError::Eigen { trial: index, seed: config.seed })?;
            let spectral = moments_from_eigenvalues(&eigs, config.k_max);
            let scale = absolute_moments(&eigs, config.k_max);
            for k in 0..=config.k_max {
                if (moments[k] - spectral[k]).abs() > MOMENT_PATH_TOLERANCE * scale[k] {
                    return Err(SimError::MomentPathMismatch {
                        trial: index,
                        k,
                        trace: moments[k],
                        spectral: spectral[k],
                    });
                }
            }
            Some(eigs)
        }
    };
    Ok(Trial { moments, edges: h.edge_count(), eigs })
}

/// Runs `config.trials` trials on a pool of `workers` threads (0 = rayon's
/// default). Trial `i` always uses [`trial_rng`]`(seed, i)` and aggregates
/// are reduced in trial order, so the result is the same for any `workers`.
pub fn run_trials(config: &SimConfig, workers: usize) -> Result<SimRun> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SimError::InvalidParameter(format!("thread pool: {e}")))?;
    let trials: Vec<Trial> =
        pool.install(|| (0..config.trials).into_par_iter().map(|i| run_one(config, i)).collect::<Result<_>>())?;

    let mut per_trial = Vec::with_capacity(trials.len());
    let mut edge_counts = Vec::with_capacity(trials.len());
    let mut spectra = Vec::new();
    for t in trials {
        per_trial.push(t.moments);
        edge_counts.push(t.edges);
        if let Some(e) = t.eigs {
            spectra.push(e);
        }
    }
    let (mean, std_err, correlators) = aggregate(&per_trial, config.k_max);

    let histogram = match &config.histogram {
        None => None,
        Some(req) => {
            let spec = match req.range {
                Some((lo, hi)) => BinSpec::new(lo, hi, req.bins)?,
                None => {
                    let extent = spectra.iter().flatten().fold(0.0f64, |m, l| m.max(l.abs()));
                    BinSpec::symmetric(extent, req.bins)?
                }
            };
            let parts: Vec<Histogram> = spectra.iter().map(|e| eigen_histogram(e, spec)).collect();
            Histogram::average(&parts)
        }
    };

    Ok(SimRun { config: config.clone(), per_trial, edge_counts, mean, std_err, correlators, histogram })
}

type Aggregates = (Vec<f64>, Option<Vec<f64>>, Option<Vec<Vec<f64>>>);

fn aggregate(per_trial: &[Vec<f64>], k_max: usize) -> Aggregates {
    let t = per_trial.len() as f64;
    let dim = k_max + 1;
    let mut mean = vec![0.0; dim];
    for row in per_trial {
        for (acc, v) in mean.iter_mut().zip(row) {
            *acc += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= t);
    if per_trial.len() < 2 {
        return (mean, None, None);
    }
    let mut cov = vec![vec![0.0; dim]; dim];
    for row in per_trial {
        for k in 0..dim {
            let dk = row[k] - mean[k];
            for m in k..dim {
                cov[k][m] += dk * (row[m] - mean[m]);
            }
        }
    }
    for k in 0..dim {
        for m in k..dim {
            cov[k][m] /= t - 1.0;
            cov[m][k] = cov[k][m];
        }
    }
    let se = (0..dim).map(|k| (cov[k][k] / t).sqrt()).collect();
    (mean, Some(se), Some(cov))
}
