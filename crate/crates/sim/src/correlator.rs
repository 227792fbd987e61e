//! How fast trace-power correlators shrink with `N`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::trials::{run_trials, trial_rng, SimConfig, SimRun};

/// Bootstrap resamples behind the slope interval.
pub const BOOTSTRAP_RESAMPLES: usize = 400;
/// `Ĉ` within this many standard errors of 0 counts as indistinguishable.
pub const DISTINGUISHABLE_SE: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorPoint {
    pub n: usize,
    pub value: f64,
    /// Standard error of the covariance estimate, from the spread of the
    /// centered products.
    pub std_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// Least-squares slope of `log Ĉ` against `log N`.
    pub slope: f64,
    pub intercept: f64,
    /// Percentile bootstrap interval (2.5%, 97.5%) for the slope; absent if
    /// no resample kept every estimate positive.
    pub ci: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorStudy {
    pub k: usize,
    pub m: usize,
    pub points: Vec<CorrelatorPoint>,
    pub fit: Option<DecayFit>,
    /// Why no fit was made, when it was not.
    pub degenerate: Option<String>,
}

fn covariance(rows: &[Vec<f64>], idx: impl Iterator<Item = usize> + Clone, k: usize, m: usize) -> f64 {
    let t = idx.clone().count() as f64;
    let (mut sk, mut sm) = (0.0, 0.0);
    for i in idx.clone() {
        sk += rows[i][k];
        sm += rows[i][m];
    }
    let (mk, mm) = (sk / t, sm / t);
    idx.map(|i| (rows[i][k] - mk) * (rows[i][m] - mm)).sum::<f64>() / (t - 1.0)
}

fn point(run: &SimRun, k: usize, m: usize) -> CorrelatorPoint {
    let rows = &run.per_trial;
    let t = rows.len() as f64;
    let value = run.correlator(k, m).unwrap_or(0.0);
    let mk = run.mean[k];
    let mm = run.mean[m];
    let prods: Vec<f64> = rows.iter().map(|r| (r[k] - mk) * (r[m] - mm)).collect();
    let pm = prods.iter().sum::<f64>() / t;
    let var = prods.iter().map(|x| (x - pm).powi(2)).sum::<f64>() / (t - 1.0);
    CorrelatorPoint { n: run.config.n, value, std_err: (var / t).sqrt() }
}

/// Ordinary least squares `y = a + b x`; returns `(b, a)`.
pub fn ols(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let b = sxy / sxx;
    (b, my - b * mx)
}

fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Runs `base` at every `N` in `n_grid` (same seed each time) and fits the
/// decay of `Ĉ_{k,m}` for each requested pair. A pair whose correlators are
/// not clearly positive gets `degenerate` set instead of a fit.
pub fn correlator_decay_study(
    base: &SimConfig,
    n_grid: &[usize],
    pairs: &[(usize, usize)],
    workers: usize,
) -> Result<Vec<CorrelatorStudy>> {
    if n_grid.len() < 4 {
        return Err(SimError::InvalidParameter(format!("N grid needs at least 4 points, got {}", n_grid.len())));
    }
    if base.trials < 2 {
        return Err(SimError::InvalidParameter("correlators need at least 2 trials".into()));
    }
    let k_max = pairs.iter().map(|&(k, m)| k.max(m)).max().unwrap_or(0).max(base.k_max);
    let runs: Vec<SimRun> = n_grid
        .iter()
        .map(|&n| run_trials(&SimConfig { n, k_max, histogram: None, ..base.clone() }, workers))
        .collect::<Result<_>>()?;

    let mut out = Vec::with_capacity(pairs.len());
    for (pair_index, &(k, m)) in pairs.iter().enumerate() {
        let points: Vec<CorrelatorPoint> = runs.iter().map(|r| point(r, k, m)).collect();
        let weak: Vec<usize> =
            points.iter().filter(|p| !(p.value > DISTINGUISHABLE_SE * p.std_err && p.value > 0.0)).map(|p| p.n).collect();
        if !weak.is_empty() {
            out.push(CorrelatorStudy {
                k,
                m,
                points,
                fit: None,
                degenerate: Some(format!("C_{k},{m} not distinguishable from 0 (or not positive) at N = {weak:?}")),
            });
            continue;
        }
        let x: Vec<f64> = points.iter().map(|p| (p.n as f64).ln()).collect();
        let y: Vec<f64> = points.iter().map(|p| p.value.ln()).collect();
        let (slope, intercept) = ols(&x, &y);

        // resample trials within each N; the stream index sits above any
        // trial index so it never coincides with a trial's generator
        let mut rng = trial_rng(base.seed, usize::MAX - pair_index);
        let mut slopes = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
        for _ in 0..BOOTSTRAP_RESAMPLES {
            let mut ys = Vec::with_capacity(runs.len());
            for r in &runs {
                let t = r.per_trial.len();
                let idx: Vec<usize> = (0..t).map(|_| rng.random_range(0..t)).collect();
                ys.push(covariance(&r.per_trial, idx.iter().copied(), k, m));
            }
            if ys.iter().all(|&c| c > 0.0) {
                let ly: Vec<f64> = ys.iter().map(|c| c.ln()).collect();
                slopes.push(ols(&x, &ly).0);
            }
        }
        slopes.sort_by(f64::total_cmp);
        let ci = (!slopes.is_empty()).then(|| (percentile(&slopes, 0.025), percentile(&slopes, 0.975)));
        out.push(CorrelatorStudy { k, m, points, fit: Some(DecayFit { slope, intercept, ci }), degenerate: None });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::WeightDistribution;
    use crate::hypergraph::EdgeSampler;
    use hypermoment::ratio;

    fn base(dist: WeightDistribution) -> SimConfig {
        SimConfig {
            n: 0,
            q: 3,
            p: ratio(2, 1),
            dist,
            trials: 300,
            k_max: 2,
            seed: 17,
            sampler: EdgeSampler::Auto,
            histogram: None,
        }
    }

    #[test]
    fn ols_recovers_a_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, -1.0, -3.0, -5.0];
        assert_eq!(ols(&x, &y), (-2.0, 1.0));
    }

    #[test]
    fn zero_weights_give_zero_correlators() {
        let studies = correlator_decay_study(
            &base(WeightDistribution::Constant(ratio(0, 1))),
            &[10, 20, 40, 80],
            &[(2, 2), (1, 2)],
            2,
        )
        .unwrap();
        for s in studies {
            assert!(s.points.iter().all(|p| p.value == 0.0));
            assert!(s.fit.is_none());
            assert!(s.degenerate.is_some());
        }
    }

    #[test]
    fn first_moment_correlators_are_zero() {
        let studies =
            correlator_decay_study(&base(WeightDistribution::Sign), &[10, 20, 40, 80], &[(1, 1), (1, 2)], 2).unwrap();
        for s in studies {
            assert!(s.points.iter().all(|p| p.value == 0.0));
            assert!(s.degenerate.is_some());
        }
    }

    #[test]
    fn short_grid_is_rejected() {
        assert!(correlator_decay_study(&base(WeightDistribution::Sign), &[10, 20, 40], &[(2, 2)], 1).is_err());
    }

    #[test]
    fn variance_of_second_moment_decays() {
        let studies =
            correlator_decay_study(&base(WeightDistribution::Sign), &[25, 50, 100, 200], &[(2, 2)], 0).unwrap();
        let fit = studies[0].fit.as_ref().unwrap();
        assert!(fit.slope < -0.5 && fit.slope > -1.5, "{fit:?}");
        let (lo, hi) = fit.ci.unwrap();
        assert!(lo <= fit.slope && fit.slope <= hi);
    }
}
