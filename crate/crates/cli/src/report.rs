//! Output schemas. JSON carries `"schema": 1`; rationals are `"num/den"`
//! strings with a decimal alongside; CSV has a header row.

use std::fmt;

use hypermoment::{parse_rational, rational_to_string, BigRational, Scalar};
use hypermoment_sim::{CorrelatorStudy, SimConfig};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, EXIT_COMPARISON, EXIT_OK};
use crate::{Format, Rendered};

pub const SCHEMA_VERSION: u32 = 1;

/// Exact rational that serializes as `"num/den"`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn decimal(&self) -> f64 {
        self.0.to_f64()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational_to_string(&self.0))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Rat).ok_or_else(|| D::Error::custom(format!("`{s}` is not a rational")))
    }
}

/// Parameters shared by every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub q: usize,
    pub p: Rat,
    pub dist: String,
    /// `X_1..X_kmax` actually used.
    pub x: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub k: usize,
    pub exact: Rat,
    pub decimal: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlemanRow {
    pub k: usize,
    /// `m_{2k}^{1/(2k)}`.
    pub root: f64,
    /// `m_{2k}^{1/(2k)} / (2k)`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentsReport {
    pub schema: u32,
    pub command: String,
    #[serde(flatten)]
    pub header: Header,
    pub moments: Vec<MomentRow>,
    pub carleman: Vec<CarlemanRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub k: usize,
    pub recurrence: Rat,
    pub oracle: Rat,
    pub decimal: f64,
    pub mismatch: bool,
    /// Essential classes of length `k`.
    pub classes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema: u32,
    pub command: String,
    #[serde(flatten)]
    pub header: Header,
    pub cap: usize,
    pub rows: Vec<OracleRow>,
    pub mismatches: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateRow {
    pub k: usize,
    pub mean: f64,
    pub std_err: Option<f64>,
    pub limit: Rat,
    pub limit_decimal: f64,
    /// `(mean - limit) / std_err`.
    pub z: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub schema: u32,
    pub command: String,
    pub config: SimConfig,
    pub rows: Vec<SimulateRow>,
    pub correlators: Option<Vec<Vec<f64>>>,
    pub edge_counts: Vec<usize>,
    pub per_trial: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorsReport {
    pub schema: u32,
    pub command: String,
    pub config: SimConfig,
    pub n_grid: Vec<usize>,
    pub studies: Vec<CorrelatorStudy>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub k: usize,
    pub recurrence: Rat,
    pub decimal: f64,
    pub oracle: Rat,
    pub mismatch: bool,
    pub mc_mean: f64,
    pub mc_std_err: Option<f64>,
    pub z: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub schema: u32,
    pub command: String,
    #[serde(flatten)]
    pub header: Header,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub z_limit: f64,
    pub rows: Vec<CompareRow>,
    pub pass: bool,
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::CliError::Encode(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv writes utf-8"))
}

fn rendered(body: String, ok: bool) -> Rendered {
    Rendered { body, code: if ok { EXIT_OK } else { EXIT_COMPARISON } }
}

impl MomentsReport {
    pub fn render(&self, format: Format) -> Result<Rendered> {
        let body = match format {
            Format::Json => json(self)?,
            Format::Csv => csv(&self.moments)?,
        };
        Ok(rendered(body, true))
    }
}

impl OracleReport {
    pub fn render(&self, format: Format) -> Result<Rendered> {
        let body = match format {
            Format::Json => json(self)?,
            Format::Csv => csv(&self.rows)?,
        };
        Ok(rendered(body, self.mismatches.is_empty()))
    }
}

impl SimulateReport {
    pub fn render(&self, format: Format) -> Result<Rendered> {
        let body = match format {
            Format::Json => json(self)?,
            Format::Csv => csv(&self.rows)?,
        };
        Ok(rendered(body, true))
    }
}

#[derive(Serialize)]
struct CorrelatorCsvRow {
    k: usize,
    m: usize,
    n: usize,
    value: f64,
    std_err: f64,
    slope: Option<f64>,
    ci_lo: Option<f64>,
    ci_hi: Option<f64>,
}

impl CorrelatorsReport {
    pub fn render(&self, format: Format) -> Result<Rendered> {
        let body = match format {
            Format::Json => json(self)?,
            Format::Csv => csv(self.studies.iter().flat_map(|s| {
                s.points.iter().map(move |p| CorrelatorCsvRow {
                    k: s.k,
                    m: s.m,
                    n: p.n,
                    value: p.value,
                    std_err: p.std_err,
                    slope: s.fit.as_ref().map(|f| f.slope),
                    ci_lo: s.fit.as_ref().and_then(|f| f.ci).map(|c| c.0),
                    ci_hi: s.fit.as_ref().and_then(|f| f.ci).map(|c| c.1),
                })
            }))?,
        };
        Ok(rendered(body, true))
    }
}

impl CompareReport {
    pub fn render(&self, format: Format) -> Result<Rendered> {
        let body = match format {
            Format::Json => json(self)?,
            Format::Csv => csv(&self.rows)?,
        };
        Ok(rendered(body, self.pass))
    }
}
