//! Binned eigenvalue mass.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// `bins` equal-width bins covering `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinSpec {
    pub lo: f64,
    pub hi: f64,
    pub bins: usize,
}

impl BinSpec {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if bins == 0 || lo >= hi || !lo.is_finite() || !hi.is_finite() {
            return Err(SimError::InvalidParameter(format!("bad histogram range [{lo}, {hi}] with {bins} bins")));
        }
        Ok(Self { lo, hi, bins })
    }

    /// Symmetric range around 0 wide enough for `extent`, with 0 at a bin
    /// center when `bins` is odd.
    pub fn symmetric(extent: f64, bins: usize) -> Result<Self> {
        let half = if extent > 0.0 { extent * (1.0 + 1e-9) } else { 1.0 };
        Self::new(-half, half, bins)
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.bins as f64
    }

    pub fn center(&self, b: usize) -> f64 {
        self.lo + (b as f64 + 0.5) * self.width()
    }

    fn locate(&self, x: f64) -> Option<usize> {
        if x < self.lo || x > self.hi {
            return None;
        }
        Some((((x - self.lo) / self.width()) as usize).min(self.bins - 1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub spec: BinSpec,
    /// Fraction of eigenvalues per bin.
    pub mass: Vec<f64>,
    /// Fraction that fell outside the range.
    pub outside: f64,
}

impl Histogram {
    pub fn centers(&self) -> Vec<f64> {
        (0..self.spec.bins).map(|b| self.spec.center(b)).collect()
    }

    /// Two whitespace-separated columns: bin center and mass.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (c, m) in self.centers().iter().zip(&self.mass) {
            writeln!(s, "{c:.12e} {m:.12e}").unwrap();
        }
        s
    }

    /// Mean of several histograms over the same bins.
    pub fn average(parts: &[Histogram]) -> Option<Histogram> {
        let first = parts.first()?;
        let k = parts.len() as f64;
        let mut mass = vec![0.0; first.spec.bins];
        let mut outside = 0.0;
        for h in parts {
            for (acc, m) in mass.iter_mut().zip(&h.mass) {
                *acc += m;
            }
            outside += h.outside;
        }
        Some(Histogram { spec: first.spec, mass: mass.iter().map(|m| m / k).collect(), outside: outside / k })
    }
}

/// Bins a spectrum; each eigenvalue carries mass `1/N`.
pub fn eigen_histogram(eigs: &[f64], spec: BinSpec) -> Histogram {
    let mut mass = vec![0.0; spec.bins];
    let mut outside = 0.0;
    let w = 1.0 / eigs.len().max(1) as f64;
    for &l in eigs {
        match spec.locate(l) {
            Some(b) => mass[b] += w,
            None => outside += w,
        }
    }
    Histogram { spec, mass, outside }
}
