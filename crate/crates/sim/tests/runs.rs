//! Whole runs: reproducibility, matrix structure, and agreement with the
//! limiting moments.

use hypermoment::{limiting_moments, ratio, ExactParams, Scalar};
use hypermoment_sim::{
    assemble_adjacency, dense_trace_moments, empirical_moments, run_trials, sample_hypergraph, trial_rng, EdgeSampler,
    HistogramRequest, SimConfig, WeightDistribution,
};

fn config(n: usize, trials: usize, dist: &str) -> SimConfig {
    SimConfig {
        n,
        q: 3,
        p: ratio(2, 1),
        dist: dist.parse().unwrap(),
        trials,
        k_max: 6,
        seed: 7,
        sampler: EdgeSampler::Auto,
        histogram: None,
    }
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

#[test]
fn worker_count_does_not_change_results() {
    let mut c = config(60, 64, "gauss:1/2");
    c.histogram = Some(HistogramRequest { bins: 15, range: None });
    let reference = run_trials(&c, 1).unwrap();
    for workers in [2, 8] {
        let run = run_trials(&c, workers).unwrap();
        assert_eq!(bits(&run.mean), bits(&reference.mean));
        assert_eq!(bits(&run.std_err.clone().unwrap()), bits(&reference.std_err.clone().unwrap()));
        for (a, b) in run.correlators.as_ref().unwrap().iter().zip(reference.correlators.as_ref().unwrap()) {
            assert_eq!(bits(a), bits(b));
        }
        assert_eq!(run, reference);
    }
}

#[test]
fn different_seeds_differ() {
    let a = run_trials(&config(40, 8, "sign"), 2).unwrap();
    let b = run_trials(&SimConfig { seed: 8, ..config(40, 8, "sign") }, 2).unwrap();
    assert_ne!(a.per_trial, b.per_trial);
}

#[test]
fn sampled_matrices_are_symmetric_with_zero_diagonal() {
    for seed in 0..20 {
        let mut rng = trial_rng(seed, 0);
        let h = sample_hypergraph(40, 4, &ratio(30, 1), &"twopoint:2,-1,0.5".parse().unwrap(), EdgeSampler::Auto, &mut rng)
            .unwrap();
        let a = assemble_adjacency(&h).to_dense();
        assert_eq!(a, a.transpose());
        assert!(a.diagonal().iter().all(|&d| d == 0.0));
    }
}

#[test]
fn sparse_and_dense_trace_powers_agree() {
    for seed in 0..10 {
        let mut rng = trial_rng(seed, 3);
        let h = sample_hypergraph(50, 3, &ratio(4, 1), &"gauss:1".parse().unwrap(), EdgeSampler::Auto, &mut rng).unwrap();
        let a = assemble_adjacency(&h);
        let sparse = empirical_moments(&a, 12);
        let dense = dense_trace_moments(&a.to_dense(), 12);
        for k in 0..=12 {
            let scale = sparse[k].abs().max(dense[k].abs()).max(1e-300);
            assert!((sparse[k] - dense[k]).abs() <= 1e-9 * scale.max(sparse[2].powf(k as f64 / 2.0)), "k={k}");
        }
    }
}

#[test]
fn means_track_limiting_moments() {
    // loose statistical check at modest size; the acceptance suite runs the
    // full-size version
    let c = SimConfig { k_max: 4, ..config(200, 400, "sign") };
    let run = run_trials(&c, 0).unwrap();
    let m = limiting_moments(4, &ExactParams::new(ratio(2, 1), 3).unwrap(), &WeightDistribution::Sign.moment_seq(4))
        .unwrap();
    let se = run.std_err.unwrap();
    for k in [2usize, 4] {
        let z = (run.mean[k] - m.0[k].to_f64()) / se[k];
        // finite-N bias is O(1/N), so allow a little beyond 3 standard errors
        assert!(z.abs() < 4.0, "k={k}: mean {} limit {} se {}", run.mean[k], m.0[k].to_f64(), se[k]);
    }
}
