//! Reference data sets, text ingestion and descriptive statistics.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Survival times of 72 guinea pigs infected with virulent tubercle
/// bacilli (Bjerkedal, 1960), in hundreds of days.
const GUINEA_PIGS: [f64; 72] = [
    0.1, 0.33, 0.44, 0.56, 0.59, 0.72, 0.74, 0.77, 0.92, 0.93, 0.96, 1.0, 1.0, 1.02, 1.05, 1.07, 7.0, 1.08, 1.08,
    1.08, 1.09, 1.12, 1.13, 1.15, 1.16, 1.2, 1.21, 1.22, 1.22, 1.24, 1.3, 1.34, 1.36, 1.39, 1.44, 1.46, 1.53, 1.59,
    1.6, 1.63, 1.63, 1.68, 1.71, 1.72, 1.76, 1.83, 1.95, 1.96, 1.97, 2.02, 2.13, 2.15, 2.16, 2.22, 2.3, 2.31, 2.4,
    2.45, 2.51, 2.53, 2.54, 2.54, 2.78, 2.93, 3.27, 3.42, 3.47, 3.61, 4.02, 4.32, 4.58, 5.55,
];

/// Relief times in minutes of 20 patients given an analgesic (Gross and Clark, 1975).
const RELIEF_TIMES: [f64; 20] = [
    1.1, 1.4, 1.3, 1.7, 1.9, 1.8, 1.6, 2.2, 1.7, 2.7, 4.1, 1.8, 1.5, 1.2, 1.4, 3.0, 1.7, 2.3, 1.6, 2.0,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetId {
    GuineaPigsI,
    ReliefTimesII,
    User,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    pub id: DatasetId,
    pub values: Vec<f64>,
    pub source: String,
}

impl Dataset {
    /// Wraps user-supplied observations after checking they are positive.
    pub fn from_values(values: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyData);
        }
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::NonPositive { line: i + 1, value: v });
        }
        Ok(Dataset {
            id: DatasetId::User,
            values,
            source: source.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn embedded_dataset(id: DatasetId) -> Result<Dataset> {
    let (values, source): (&[f64], &str) = match id {
        DatasetId::GuineaPigsI => (
            &GUINEA_PIGS,
            "Bjerkedal (1960), survival times of 72 guinea pigs, days/100",
        ),
        DatasetId::ReliefTimesII => (&RELIEF_TIMES, "Gross and Clark (1975), relief times of 20 patients, minutes"),
        DatasetId::User => return Err(domain("no embedded data for a user dataset")),
    };
    Ok(Dataset {
        id,
        values: values.to_vec(),
        source: source.to_string(),
    })
}

/// Checks an embedded data set against its published summary statistics.
pub fn validate_embedded(id: DatasetId) -> Result<()> {
    let r = crate::published::summary(id).ok_or_else(|| domain("user data has no reference summary"))?;
    let s = describe(&embedded_dataset(id)?)?;
    let mut failures = String::new();
    if s.n != r.n {
        let _ = write!(failures, " n={} (expected {})", s.n, r.n);
    }
    for (name, got, want) in [
        ("min", s.min, r.min),
        ("max", s.max, r.max),
        ("mean", s.mean, r.mean),
        ("median", s.median, r.median),
        ("sd", s.sd, r.sd),
        ("q1", s.q1, r.q1),
        ("q3", s.q3, r.q3),
    ] {
        if (got - want).abs() > 1e-3 {
            let _ = write!(failures, " {name}={got:.4} (expected {want})");
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(format!("{id:?}:{failures}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TextFormat {
    /// One value per line; anything after the first comma is ignored.
    CsvSingleColumn,
    /// Any number of whitespace-separated values per line.
    Whitespace,
}

fn parse_token(token: &str, line: usize) -> Result<f64> {
    let normalized = token.replace('\u{2212}', "-");
    let v: f64 = normalized.parse().map_err(|_| Error::Parse {
        line,
        token: token.to_string(),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse { line, token: token.to_string() });
    }
    if v <= 0.0 {
        return Err(Error::NonPositive { line, value: v });
    }
    Ok(v)
}

/// Parses observations from text. Blank lines and `#` comments are skipped.
pub fn parse_observations(text: &str, format: TextFormat) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match format {
            TextFormat::CsvSingleColumn => {
                let field = content.split(',').next().unwrap_or("").trim();
                values.push(parse_token(field, line)?);
            }
            TextFormat::Whitespace => {
                for token in content.split_whitespace() {
                    values.push(parse_token(token, line)?);
                }
            }
        }
    }
    if values.is_empty() {
        return Err(Error::EmptyData);
    }
    Ok(values)
}

pub fn load_observations(path: impl AsRef<Path>, format: TextFormat) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Dataset {
        id: DatasetId::User,
        values: parse_observations(&text, format)?,
        source: path.display().to_string(),
    })
}

/// Writes one value per line using the shortest representation that reads back exactly.
pub fn save_observations(path: impl AsRef<Path>, values: &[f64]) -> Result<()> {
    let path = path.as_ref();
    let mut text = String::with_capacity(values.len() * 8);
    for v in values {
        let _ = writeln!(text, "{v}");
    }
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DescriptiveStats {
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub q3: f64,
    pub max: f64,
    pub sd: f64,
    /// `m3 / s³` with `s` the sample standard deviation; `None` for constant data.
    pub skewness: Option<f64>,
    /// Excess kurtosis `m4 / s⁴ - 3`; `None` for constant data.
    pub kurtosis: Option<f64>,
}

/// The common skewness and kurtosis estimators side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeVariants {
    /// `g1 = m3 / m2^{3/2}`
    pub g1: f64,
    /// Adjusted `G1 = g1 √(n(n-1)) / (n-2)`
    pub adjusted_g1: f64,
    /// `b1 = m3 / s³`
    pub b1: f64,
    /// Excess `g2 = m4 / m2² - 3`
    pub g2: f64,
    /// Non-excess `m4 / m2²`
    pub raw_kurtosis: f64,
    /// Excess `b2 = m4 / s⁴ - 3`
    pub b2: f64,
}

/// Sample quantile with linear interpolation between order statistics (type 7).
pub fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn central_moments(values: &[f64]) -> (f64, f64, f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in values {
        let d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    (mean, m2 / n, m3 / n, m4 / n)
}

pub fn shape_variants(values: &[f64]) -> Option<ShapeVariants> {
    let n = values.len() as f64;
    if values.len() < 3 {
        return None;
    }
    let (_, m2, m3, m4) = central_moments(values);
    if !(m2 > 0.0) {
        return None;
    }
    let s2 = m2 * n / (n - 1.0);
    let g1 = m3 / m2.powf(1.5);
    Some(ShapeVariants {
        g1,
        adjusted_g1: g1 * (n * (n - 1.0)).sqrt() / (n - 2.0),
        b1: m3 / s2.powf(1.5),
        g2: m4 / (m2 * m2) - 3.0,
        raw_kurtosis: m4 / (m2 * m2),
        b2: m4 / (s2 * s2) - 3.0,
    })
}

pub fn describe(d: &Dataset) -> Result<DescriptiveStats> {
    describe_values(&d.values)
}

pub fn describe_values(values: &[f64]) -> Result<DescriptiveStats> {
    if values.len() < 2 {
        return Err(domain("descriptive statistics need at least two observations"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = values.len();
    let (mean, m2, _, _) = central_moments(values);
    let shape = shape_variants(values);
    Ok(DescriptiveStats {
        n,
        min: sorted[0],
        q1: quantile_type7(&sorted, 0.25),
        median: quantile_type7(&sorted, 0.5),
        mean,
        q3: quantile_type7(&sorted, 0.75),
        max: sorted[n - 1],
        sd: (m2 * n as f64 / (n - 1) as f64).sqrt(),
        skewness: shape.map(|s| s.b1),
        kurtosis: shape.map(|s| s.b2),
    })
}
