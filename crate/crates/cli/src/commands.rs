//! The five subcommands. Every input is validated before any computation.

use std::fs::File;
use std::io::{BufWriter, Write};

use hypermoment::walks::{for_each_class, oracle_moment, DEFAULT_ENUMERATION_CAP};
use hypermoment::{
    carleman_diagnostic, limiting_moments, parse_rational, rational_to_string, BigRational, ExactMoments, ExactParams,
    ExactWeights, Scalar,
};
use hypermoment_sim::{
    correlator_decay_study, run_trials, HistogramRequest, SimConfig, SimRun, WeightDistribution,
};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::report::{
    CarlemanRow, CompareReport, CompareRow, CorrelatorsReport, Header, MomentRow, MomentsReport, OracleReport,
    OracleRow, Rat, SimulateReport, SimulateRow, SCHEMA_VERSION,
};
use crate::{CapArgs, CompareArgs, CorrelatorArgs, ExactArgs, MonteCarloArgs, OracleArgs, Rendered, SimulateArgs};

/// `|z|` above this fails a comparison row.
pub const Z_LIMIT: f64 = 3.0;

struct Resolved {
    params: ExactParams,
    x: ExactWeights,
    dist: WeightDistribution,
    header: Header,
}

fn parse_p(s: &str) -> Result<BigRational> {
    parse_rational(s).ok_or_else(|| CliError::Config(format!("--p: `{s}` is not a number")))
}

fn resolve(a: &ExactArgs) -> Result<Resolved> {
    let dist: WeightDistribution = a.dist.parse()?;
    let params = ExactParams::new(parse_p(&a.p)?, a.q)?;
    let x = match &a.x {
        Some(list) => {
            let values = list
                .split(',')
                .map(|t| parse_rational(t).ok_or_else(|| CliError::Config(format!("--x: `{t}` is not a number"))))
                .collect::<Result<Vec<_>>>()?;
            let x = ExactWeights::new(values)?;
            x.require(a.kmax)?;
            x
        }
        None => dist.moment_seq(a.kmax),
    };
    let header = Header {
        q: a.q,
        p: Rat(params.p().clone()),
        dist: dist.to_string(),
        x: x.as_slice()[1..=a.kmax].iter().cloned().map(Rat).collect(),
    };
    Ok(Resolved { params, x, dist, header })
}

/// Sampling uses `--dist`, so explicit moments must describe the same law.
fn require_consistent(r: &Resolved, k_max: usize) -> Result<()> {
    let from_dist = r.dist.moment_seq(k_max);
    if from_dist.as_slice()[..=k_max] != r.x.as_slice()[..=k_max] {
        return Err(CliError::Config(format!(
            "--x disagrees with the moments of --dist {}; Monte Carlo samples from --dist",
            r.dist
        )));
    }
    Ok(())
}

fn cap(c: &CapArgs, k_max: usize) -> Result<usize> {
    let cap = c.unsafe_cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    if k_max > cap {
        return Err(CliError::Cap { k: k_max, cap });
    }
    Ok(cap)
}

fn sim_config(r: &Resolved, a: &ExactArgs, n: usize, mc: &MonteCarloArgs) -> SimConfig {
    SimConfig {
        n,
        q: a.q,
        p: r.params.p().clone(),
        dist: r.dist.clone(),
        trials: mc.trials,
        k_max: a.kmax,
        seed: mc.seed,
        sampler: mc.sampler.into(),
        histogram: None,
    }
}

fn moment_rows(m: &ExactMoments) -> Vec<MomentRow> {
    m.iter().enumerate().map(|(k, v)| MomentRow { k, exact: Rat(v.clone()), decimal: v.to_f64() }).collect()
}

pub fn cmd_moments(a: &ExactArgs) -> Result<MomentsReport> {
    let r = resolve(a)?;
    let m = limiting_moments(a.kmax, &r.params, &r.x)?;
    let carleman = carleman_diagnostic(&m)
        .map(|roots| {
            roots.into_iter().map(|(k, root)| CarlemanRow { k, root, ratio: root / (2 * k) as f64 }).collect()
        })
        .unwrap_or_default();
    Ok(MomentsReport {
        schema: SCHEMA_VERSION,
        command: "moments".into(),
        header: r.header,
        moments: moment_rows(&m),
        carleman,
    })
}

#[derive(Serialize)]
struct ClassRecord<'a> {
    k: usize,
    class: &'a hypermoment::walks::MinimalWalkClass,
    contribution: String,
}

pub fn cmd_oracle(a: &OracleArgs) -> Result<OracleReport> {
    let e = &a.exact;
    let cap = cap(&a.cap, e.kmax)?;
    let r = resolve(e)?;
    let recurrence = limiting_moments(e.kmax, &r.params, &r.x)?;
    let mut dump = match &a.dump_classes {
        Some(path) => Some(BufWriter::new(File::create(path)?)),
        None => None,
    };
    let mut rows = Vec::with_capacity(e.kmax + 1);
    for k in 0..=e.kmax {
        let oracle = oracle_moment(k, &r.params, &r.x)?;
        let mut classes = 0usize;
        let mut failure = None;
        for_each_class(k, e.q, true, |c| {
            classes += 1;
            if let Some(w) = dump.as_mut() {
                let line = c.limit_contribution(&r.params, &r.x).map_err(CliError::from).and_then(|v| {
                    let record = ClassRecord { k, class: &c, contribution: rational_to_string(&v.value) };
                    Ok(serde_json::to_string(&record)?)
                });
                match line.and_then(|l| writeln!(w, "{l}").map_err(CliError::from)) {
                    Ok(()) => {}
                    Err(err) => failure = Some(err),
                }
            }
        });
        if let Some(err) = failure {
            return Err(err);
        }
        let rec = recurrence.0[k].clone();
        rows.push(OracleRow {
            k,
            mismatch: rec != oracle,
            decimal: rec.to_f64(),
            recurrence: Rat(rec),
            oracle: Rat(oracle),
            classes,
        });
    }
    if let Some(mut w) = dump {
        w.flush()?;
    }
    let mismatches = rows.iter().filter(|r| r.mismatch).map(|r| r.k).collect();
    Ok(OracleReport { schema: SCHEMA_VERSION, command: "oracle".into(), header: r.header, cap, rows, mismatches })
}

fn parse_range(s: &str) -> Result<(f64, f64)> {
    let bad = || CliError::Config(format!("--hist-range: expected lo:hi, got `{s}`"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn simulate_rows(run: &SimRun, limit: &ExactMoments) -> Vec<SimulateRow> {
    (0..=run.config.k_max)
        .map(|k| {
            let se = run.std_err.as_ref().map(|s| s[k]);
            let target = limit.0[k].to_f64();
            SimulateRow {
                k,
                mean: run.mean[k],
                std_err: se,
                limit: Rat(limit.0[k].clone()),
                limit_decimal: target,
                z: z_score(run.mean[k], target, se),
            }
        })
        .collect()
}

/// `(mean - target) / se`; a zero spread counts as `z = 0` only when the
/// mean hits the target exactly.
fn z_score(mean: f64, target: f64, se: Option<f64>) -> Option<f64> {
    let se = se?;
    if se > 0.0 {
        Some((mean - target) / se)
    } else if mean == target {
        Some(0.0)
    } else {
        None
    }
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<(SimulateReport, Option<String>)> {
    let r = resolve(&a.exact)?;
    require_consistent(&r, a.exact.kmax)?;
    let mut config = sim_config(&r, &a.exact, a.n, &a.mc);
    if a.histogram.is_some() {
        let range = a.hist_range.as_deref().map(parse_range).transpose()?;
        config.histogram = Some(HistogramRequest { bins: a.bins, range });
    }
    config.validate()?;
    let limit = limiting_moments(a.exact.kmax, &r.params, &r.x)?;
    let run = run_trials(&config, a.mc.workers)?;
    let histogram = run.histogram.as_ref().map(|h| h.to_text());
    let report = SimulateReport {
        schema: SCHEMA_VERSION,
        command: "simulate".into(),
        rows: simulate_rows(&run, &limit),
        config: run.config,
        correlators: run.correlators,
        edge_counts: run.edge_counts,
        per_trial: run.per_trial,
    };
    Ok((report, histogram))
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let bad = || CliError::Config(format!("--pairs: expected k:m, got `{s}`"));
    let (k, m) = s.split_once(':').ok_or_else(bad)?;
    Ok((k.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?))
}

pub fn cmd_correlators(a: &CorrelatorArgs) -> Result<CorrelatorsReport> {
    let pairs = a.pairs.iter().map(|s| parse_pair(s)).collect::<Result<Vec<_>>>()?;
    if a.n_grid.len() < 4 {
        return Err(CliError::Config(format!("--n-grid needs at least 4 sizes, got {}", a.n_grid.len())));
    }
    if a.mc.trials < 2 {
        return Err(CliError::Config("correlators need --trials of at least 2".into()));
    }
    let k_max = pairs.iter().map(|&(k, m)| k.max(m)).max().unwrap_or(0);
    let exact = ExactArgs { kmax: k_max, ..a.exact.clone() };
    let r = resolve(&exact)?;
    require_consistent(&r, k_max)?;
    let base = sim_config(&r, &exact, a.n_grid[0], &a.mc);
    for &n in &a.n_grid {
        SimConfig { n, ..base.clone() }.validate()?;
    }
    let studies = correlator_decay_study(&base, &a.n_grid, &pairs, a.mc.workers)?;
    for s in &studies {
        if let Some(why) = &s.degenerate {
            eprintln!("warning: degenerate fit: {why}");
        }
    }
    Ok(CorrelatorsReport {
        schema: SCHEMA_VERSION,
        command: "correlators".into(),
        config: base,
        n_grid: a.n_grid.clone(),
        studies,
    })
}

pub fn cmd_compare(a: &CompareArgs) -> Result<CompareReport> {
    let e = &a.exact;
    cap(&a.cap, e.kmax)?;
    let r = resolve(e)?;
    require_consistent(&r, e.kmax)?;
    let config = sim_config(&r, e, a.n, &a.mc);
    config.validate()?;

    let recurrence = limiting_moments(e.kmax, &r.params, &r.x)?;
    let oracle = (0..=e.kmax).map(|k| oracle_moment(k, &r.params, &r.x)).collect::<hypermoment::Result<Vec<_>>>()?;
    let run = run_trials(&config, a.mc.workers)?;

    let rows: Vec<CompareRow> = (0..=e.kmax)
        .map(|k| {
            let rec = recurrence.0[k].clone();
            let decimal = rec.to_f64();
            let mismatch = rec != oracle[k];
            let se = run.std_err.as_ref().map(|s| s[k]);
            let z = z_score(run.mean[k], decimal, se);
            CompareRow {
                k,
                recurrence: Rat(rec),
                decimal,
                oracle: Rat(oracle[k].clone()),
                mismatch,
                mc_mean: run.mean[k],
                mc_std_err: se,
                z,
                pass: !mismatch && z.is_some_and(|z| z.abs() <= Z_LIMIT),
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    Ok(CompareReport {
        schema: SCHEMA_VERSION,
        command: "compare".into(),
        header: r.header,
        n: a.n,
        trials: a.mc.trials,
        seed: a.mc.seed,
        z_limit: Z_LIMIT,
        rows,
        pass,
    })
}

pub(crate) fn render_oracle(a: &OracleArgs) -> Result<Rendered> {
    cmd_oracle(a)?.render(a.exact.format)
}

pub(crate) fn render_simulate(a: &SimulateArgs) -> Result<Rendered> {
    let (report, histogram) = cmd_simulate(a)?;
    if let (Some(path), Some(text)) = (&a.histogram, histogram) {
        std::fs::write(path, text)?;
    }
    report.render(a.exact.format)
}

pub(crate) fn render_correlators(a: &CorrelatorArgs) -> Result<Rendered> {
    cmd_correlators(a)?.render(a.exact.format)
}

pub(crate) fn render_compare(a: &CompareArgs) -> Result<Rendered> {
    cmd_compare(a)?.render(a.exact.format)
}
