//! The `ptgfit` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::data::{embedded_dataset, load_observations, Dataset, DatasetId, TextFormat};
use crate::distributions::{sample, ContinuousDistribution, PtgParams};
use crate::error::{domain, Error, Result};
use crate::expansions::{
    mean_deviation, raw_moment, renyi_entropy, residual_moment, reversed_residual_moment, shannon_entropy,
    stress_strength, DeviationAbout,
};
use crate::gof::ttt_points;
use crate::mle::FitOptions;
use crate::models::{fit_model, FittedModel, ModelDistribution, ModelKind};
use crate::reproduce::{reproduce, Reproduction, Rule};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_GATE_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ptgfit", version, about = "Fit and explore Poisson transmuted-G distributions")]
pub struct Cli {
    /// Output format; defaults to a table on a terminal and JSON otherwise.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum-likelihood fit with standard errors and Wald intervals.
    Fit(FitArgs),
    /// Information criteria and EDF statistics of a fitted model.
    Gof(FitArgs),
    /// Seeded random draws from a model.
    Sample(SampleArgs),
    /// Moments, entropies, mean deviations and residual life of a PT-G model.
    Props(PropsArgs),
    /// pdf, cdf and hazard over a grid, with histogram and ogive of the data.
    Curves(CurvesArgs),
    /// Scaled total-time-on-test transform of a data set.
    Ttt(TttArgs),
    /// Refit the reference data sets and compare with the published tables.
    Reproduce(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, env = "PTGFIT_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Number of optimizer restarts.
    #[arg(long, default_value_t = 20)]
    pub starts: usize,
}

impl RunArgs {
    fn fit_options(&self) -> FitOptions {
        FitOptions {
            n_starts: self.starts.max(1),
            seed: self.seed,
            ..FitOptions::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[arg(long, default_value = "pte")]
    pub model: ModelKind,

    /// `embedded:I`, `embedded:II` or a path to a text file of observations.
    #[arg(long)]
    pub data: DataSource,

    #[command(flatten)]
    pub run: RunArgs,
}

/// A model given either by explicit parameters or by a fit to data.
#[derive(Debug, Clone, Args)]
pub struct ModelSpec {
    #[arg(long, default_value = "pte")]
    pub model: ModelKind,

    /// Comma-separated parameters in the model's order, e.g. `0.81,-6.59,0.84`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Option<Vec<f64>>,

    /// Data to fit when `--params` is absent.
    #[arg(long)]
    pub data: Option<DataSource>,

    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub spec: ModelSpec,

    #[arg(long, default_value_t = 1000)]
    pub n: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PropsArgs {
    #[command(flatten)]
    pub spec: ModelSpec,

    /// Rényi entropy orders.
    #[arg(long, value_delimiter = ',', default_value = "0.5,2")]
    pub delta: Vec<f64>,

    /// Ages for the mean residual life and mean inactivity time; defaults to the model quartiles.
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,

    /// Second parameter set for the reliability `∫ f₁F₂ = P(X₂ < X₁)`, with the model as X₁; same family.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub params2: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct CurvesArgs {
    #[command(flatten)]
    pub spec: ModelSpec,

    #[arg(long, default_value_t = 512)]
    pub grid: usize,

    /// Histogram bins; defaults to Sturges' rule.
    #[arg(long)]
    pub bins: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct TttArgs {
    #[arg(long)]
    pub data: DataSource,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Embedded(DatasetId),
    File(PathBuf),
}

impl FromStr for DataSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.strip_prefix("embedded:") {
            Some(name) => match name.to_ascii_uppercase().as_str() {
                "I" | "1" => Ok(DataSource::Embedded(DatasetId::GuineaPigsI)),
                "II" | "2" => Ok(DataSource::Embedded(DatasetId::ReliefTimesII)),
                _ => Err(domain(format!("unknown embedded data set {name:?}; expected I or II"))),
            },
            None => Ok(DataSource::File(PathBuf::from(s))),
        }
    }
}

impl DataSource {
    pub fn load(&self) -> Result<Dataset> {
        match self {
            DataSource::Embedded(id) => embedded_dataset(*id),
            DataSource::File(path) => {
                let csv = path
                    .extension()
                    .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
                let format = if csv { TextFormat::CsvSingleColumn } else { TextFormat::Whitespace };
                load_observations(path, format)
            }
        }
    }
}

/// A rendered command result.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub tables: Vec<Table>,
    pub exit_code: i32,
    /// Messages for stderr.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Rounds to six significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

/// Six significant digits, switching to exponent form for very small or large magnitudes.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r != 0.0 && (r.abs() < 1e-4 || r.abs() >= 1e12) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *v = json!(round_sig(x));
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_json),
        Value::Object(o) => o.values_mut().for_each(round_json),
        _ => {}
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut v = self.json.clone();
                round_json(&mut v);
                let mut s = serde_json::to_string_pretty(&v).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => {
                let blocks: Vec<String> = self
                    .tables
                    .iter()
                    .map(|t| {
                        let mut s = String::new();
                        for line in std::iter::once(&t.headers).chain(&t.rows) {
                            let fields: Vec<String> = line.iter().map(|f| csv_field(f)).collect();
                            s.push_str(&fields.join(","));
                            s.push_str("\r\n");
                        }
                        s
                    })
                    .collect();
                blocks.join("\r\n")
            }
            Format::Table => {
                let mut s = String::new();
                for t in &self.tables {
                    if !t.title.is_empty() {
                        s.push_str(&t.title);
                        s.push('\n');
                    }
                    let mut width: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
                    for r in &t.rows {
                        for (w, c) in width.iter_mut().zip(r) {
                            *w = (*w).max(c.chars().count());
                        }
                    }
                    for line in std::iter::once(&t.headers).chain(&t.rows) {
                        let cells: Vec<String> = line
                            .iter()
                            .zip(&width)
                            .map(|(c, w)| format!("{c:>w$}", w = *w))
                            .collect();
                        s.push_str(cells.join("  ").trim_end());
                        s.push('\n');
                    }
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn num(x: f64) -> String {
    fmt_num(x)
}

fn resolve_model(spec: &ModelSpec) -> Result<(ModelDistribution, Option<FittedModel>, Option<Dataset>)> {
    let data = spec.data.as_ref().map(DataSource::load).transpose()?;
    match (&spec.params, &data) {
        (Some(p), _) => Ok((spec.model.distribution(p)?, None, data)),
        (None, Some(d)) => {
            let fit = fit_model(spec.model, &d.values, &spec.run.fit_options())?;
            Ok((fit.distribution, Some(fit), data))
        }
        (None, None) => Err(Error::Validation("give --params or --data".into())),
    }
}

fn params_json(kind: ModelKind, d: &ModelDistribution) -> Value {
    let values = match d {
        ModelDistribution::Ptg(p) => p.to_vector(),
        ModelDistribution::Competitor(c) => c.params(),
    };
    let map: serde_json::Map<String, Value> = kind
        .param_names()
        .iter()
        .zip(values)
        .map(|(n, v)| (n.to_string(), json!(v)))
        .collect();
    Value::Object(map)
}

fn fit_exit(fit: Option<&FittedModel>, notes: &mut Vec<String>) -> i32 {
    match fit {
        Some(f) if !f.converged => {
            notes.push(format!("warning: the {} fit did not converge", f.kind));
            EXIT_NOT_CONVERGED
        }
        _ => EXIT_OK,
    }
}

fn fit_json(fit: &FittedModel) -> Value {
    let params: Vec<Value> = (0..fit.n_params())
        .map(|i| {
            json!({
                "name": fit.param_names[i],
                "estimate": fit.estimates[i],
                "se": fit.std_errors[i],
                "ci_low": fit.ci_low[i],
                "ci_high": fit.ci_high[i],
            })
        })
        .collect();
    let mut v = json!({
        "model": fit.kind,
        "n": fit.n_obs,
        "loglik": fit.loglik,
        "converged": fit.converged,
        "degenerate_hessian": fit.degenerate_hessian,
        "parameters": params,
    });
    if let Some(r) = &fit.ptg_fit {
        v["restarts"] = json!(r.n_restarts_used);
        v["max_gradient"] = json!(r.max_gradient);
    }
    v
}

fn cmd_fit(args: &FitArgs) -> Result<Report> {
    let data = args.data.load()?;
    let fit = fit_model(args.model, &data.values, &args.run.fit_options())?;
    let mut notes = Vec::new();
    if fit.degenerate_hessian {
        notes.push("warning: the observed information is singular; standard errors are NaN".into());
    }
    let exit_code = fit_exit(Some(&fit), &mut notes);
    let mut json = fit_json(&fit);
    json["command"] = json!("fit");
    json["data"] = json!(data.source);

    let mut params = Table::new(
        format!("{} fit to {} (n = {})", fit.kind, data.source, fit.n_obs),
        &["parameter", "estimate", "se", "ci_low", "ci_high"],
    );
    for i in 0..fit.n_params() {
        params.push(vec![
            fit.param_names[i].to_string(),
            num(fit.estimates[i]),
            num(fit.std_errors[i]),
            num(fit.ci_low[i]),
            num(fit.ci_high[i]),
        ]);
    }
    let mut summary = Table::new("", &["loglik", "converged", "degenerate_hessian"]);
    summary.push(vec![
        num(fit.loglik),
        fit.converged.to_string(),
        fit.degenerate_hessian.to_string(),
    ]);
    Ok(Report {
        json,
        tables: vec![params, summary],
        exit_code,
        notes,
    })
}

fn cmd_gof(args: &FitArgs) -> Result<Report> {
    let data = args.data.load()?;
    let fit = fit_model(args.model, &data.values, &args.run.fit_options())?;
    let g = fit.gof(&data.values)?;
    let mut notes = Vec::new();
    let exit_code = fit_exit(Some(&fit), &mut notes);
    let mut json = to_json(&g);
    json["command"] = json!("gof");
    json["model"] = json!(fit.kind);
    json["data"] = json!(data.source);
    json["converged"] = json!(fit.converged);

    let mut t = Table::new(
        format!("{} goodness of fit on {}", fit.kind, data.source),
        &["loglik", "AIC", "BIC", "CAIC", "HQIC", "A", "W", "KS", "KS_p"],
    );
    t.push(
        [g.loglik, g.aic, g.bic, g.caic, g.hqic, g.ad, g.cvm, g.ks, g.ks_pvalue]
            .iter()
            .map(|&x| num(x))
            .collect(),
    );
    Ok(Report {
        json,
        tables: vec![t],
        exit_code,
        notes,
    })
}

fn cmd_sample(args: &SampleArgs) -> Result<Report> {
    if args.n == 0 {
        return Err(Error::Validation("--n must be positive".into()));
    }
    let (dist, fit, _) = resolve_model(&args.spec)?;
    let mut notes = Vec::new();
    let exit_code = fit_exit(fit.as_ref(), &mut notes);
    let values = sample(&dist, args.n, args.spec.run.seed);
    let json = json!({
        "command": "sample",
        "model": args.spec.model,
        "params": params_json(args.spec.model, &dist),
        "seed": args.spec.run.seed,
        "n": args.n,
        "values": values,
    });
    let mut t = Table::new("", &["x"]);
    for v in &values {
        t.push(vec![num(*v)]);
    }
    Ok(Report {
        json,
        tables: vec![t],
        exit_code,
        notes,
    })
}

fn require_ptg(kind: ModelKind, d: &ModelDistribution) -> Result<PtgParams> {
    d.as_ptg()
        .copied()
        .ok_or_else(|| Error::Validation(format!("props needs a PT-G model (pte or ptw), got {kind}")))
}

fn cmd_props(args: &PropsArgs) -> Result<Report> {
    let (dist, fit, _) = resolve_model(&args.spec)?;
    let p = require_ptg(args.spec.model, &dist)?;
    let mut notes = Vec::new();
    let exit_code = fit_exit(fit.as_ref(), &mut notes);

    let moments = (1..=4).map(|s| raw_moment(s, &p)).collect::<Result<Vec<f64>>>()?;
    let mean = moments[0];
    let var = moments[1] - mean * mean;
    let m3 = moments[2] - 3.0 * mean * moments[1] + 2.0 * mean.powi(3);
    let m4 = moments[3] - 4.0 * mean * moments[2] + 6.0 * mean * mean * moments[1] - 3.0 * mean.powi(4);
    let skewness = m3 / var.powf(1.5);
    let kurtosis = m4 / (var * var);

    let renyi = args
        .delta
        .iter()
        .map(|&d| renyi_entropy(d, &p).map(|h| (d, h)))
        .collect::<Result<Vec<_>>>()?;
    let shannon = shannon_entropy(&p)?;
    let md_mean = mean_deviation(DeviationAbout::Mean, &p)?;
    let md_median = mean_deviation(DeviationAbout::Median, &p)?;

    let ts = args
        .t
        .clone()
        .unwrap_or_else(|| [0.25, 0.5, 0.75].iter().map(|&u| p.quantile(u)).collect());
    let residual = ts
        .iter()
        .map(|&t| Ok((t, residual_moment(1, t, &p)?, reversed_residual_moment(1, t, &p)?)))
        .collect::<Result<Vec<_>>>()?;

    let strength = match &args.params2 {
        Some(v) => {
            let p2 = require_ptg(args.spec.model, &args.spec.model.distribution(v)?)?;
            Some((p2, stress_strength(&p, &p2)?))
        }
        None => None,
    };

    let json = json!({
        "command": "props",
        "model": args.spec.model,
        "params": params_json(args.spec.model, &dist),
        "moments": moments.iter().enumerate().map(|(i, m)| json!({"order": i + 1, "value": m})).collect::<Vec<_>>(),
        "mean": mean,
        "variance": var,
        "skewness": skewness,
        "kurtosis": kurtosis,
        "renyi": renyi.iter().map(|(d, h)| json!({"delta": d, "value": h})).collect::<Vec<_>>(),
        "shannon": shannon,
        "mean_deviation": {"mean": md_mean, "median": md_median},
        "residual_life": residual
            .iter()
            .map(|(t, m, r)| json!({"t": t, "mean_residual_life": m, "mean_inactivity_time": r}))
            .collect::<Vec<_>>(),
        "stress_strength": strength.map(|(p2, r)| json!({"params2": p2.to_vector(), "reliability": r})),
    });

    let mut t = Table::new("", &["quantity", "argument", "value"]);
    for (i, m) in moments.iter().enumerate() {
        t.push(vec!["raw_moment".into(), (i + 1).to_string(), num(*m)]);
    }
    for (name, v) in [("variance", var), ("skewness", skewness), ("kurtosis", kurtosis)] {
        t.push(vec![name.into(), String::new(), num(v)]);
    }
    for (d, h) in &renyi {
        t.push(vec!["renyi_entropy".into(), num(*d), num(*h)]);
    }
    t.push(vec!["shannon_entropy".into(), String::new(), num(shannon)]);
    t.push(vec!["mean_deviation".into(), "mean".into(), num(md_mean)]);
    t.push(vec!["mean_deviation".into(), "median".into(), num(md_median)]);
    for (ti, m, r) in &residual {
        t.push(vec!["mean_residual_life".into(), num(*ti), num(*m)]);
        t.push(vec!["mean_inactivity_time".into(), num(*ti), num(*r)]);
    }
    if let Some((_, r)) = strength {
        t.push(vec!["stress_strength".into(), String::new(), num(r)]);
    }
    Ok(Report {
        json,
        tables: vec![t],
        exit_code,
        notes,
    })
}

struct Bin {
    lower: f64,
    upper: f64,
    count: usize,
    density: f64,
}

fn histogram(values: &[f64], bins: Option<usize>) -> Vec<Bin> {
    let n = values.len();
    let k = bins.unwrap_or_else(|| ((n as f64).log2().ceil() as usize + 1).max(1)).max(1);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = if hi > lo { (hi - lo) / k as f64 } else { 1.0 };
    let mut counts = vec![0usize; k];
    for &x in values {
        let i = (((x - lo) / width) as usize).min(k - 1);
        counts[i] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| Bin {
            lower: lo + i as f64 * width,
            upper: lo + (i + 1) as f64 * width,
            count,
            density: count as f64 / (n as f64 * width),
        })
        .collect()
}

fn cmd_curves(args: &CurvesArgs) -> Result<Report> {
    if args.grid < 2 {
        return Err(Error::Validation("--grid must be at least 2".into()));
    }
    let (dist, fit, data) = resolve_model(&args.spec)?;
    let mut notes = Vec::new();
    let exit_code = fit_exit(fit.as_ref(), &mut notes);
    let (a, b) = (dist.quantile(0.001), dist.quantile(0.999));
    let step = (b - a) / (args.grid - 1) as f64;
    let grid: Vec<[f64; 4]> = (0..args.grid)
        .map(|i| {
            let x = if i + 1 == args.grid { b } else { a + i as f64 * step };
            [x, dist.pdf(x), dist.cdf(x), dist.hazard(x)]
        })
        .collect();

    let mut json = json!({
        "command": "curves",
        "model": args.spec.model,
        "params": params_json(args.spec.model, &dist),
        "grid": grid.iter().map(|g| json!({"x": g[0], "pdf": g[1], "cdf": g[2], "hrf": g[3]})).collect::<Vec<_>>(),
        "histogram": Value::Null,
        "ogive": Value::Null,
    });
    let mut t = Table::new("", &["x", "pdf", "cdf", "hrf"]);
    for g in &grid {
        t.push(g.iter().map(|&v| num(v)).collect());
    }
    let mut tables = vec![t];

    if let Some(d) = data {
        let bins = histogram(&d.values, args.bins);
        let mut sorted = d.values.clone();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len() as f64;
        json["histogram"] = bins
            .iter()
            .map(|b| json!({"lower": b.lower, "upper": b.upper, "count": b.count, "density": b.density}))
            .collect();
        json["ogive"] = sorted
            .iter()
            .enumerate()
            .map(|(i, x)| json!({"x": x, "ecdf": (i + 1) as f64 / n}))
            .collect();
        let mut h = Table::new("histogram", &["lower", "upper", "count", "density"]);
        for b in &bins {
            h.push(vec![num(b.lower), num(b.upper), b.count.to_string(), num(b.density)]);
        }
        tables.push(h);
    }
    Ok(Report {
        json,
        tables,
        exit_code,
        notes,
    })
}

fn cmd_ttt(args: &TttArgs) -> Result<Report> {
    let data = args.data.load()?;
    let points = ttt_points(&data.values)?;
    let json = json!({
        "command": "ttt",
        "data": data.source,
        "n": data.len(),
        "points": points.iter().map(|(u, t)| json!({"u": u, "t": t})).collect::<Vec<_>>(),
    });
    let mut t = Table::new("", &["u", "t"]);
    for (u, v) in &points {
        t.push(vec![num(*u), num(*v)]);
    }
    Ok(Report {
        json,
        tables: vec![t],
        exit_code: EXIT_OK,
        notes: Vec::new(),
    })
}

fn reproduce_tables(r: &Reproduction) -> Vec<Table> {
    let mut summary = Table::new(
        "Descriptive statistics (observed / published)",
        &["data", "n", "min", "mean", "median", "sd", "skewness", "kurtosis", "q1", "q3", "max"],
    );
    for s in &r.summaries {
        let (o, p) = (&s.observed, &s.published);
        for (tag, row) in [
            (
                "observed",
                [
                    o.min,
                    o.mean,
                    o.median,
                    o.sd,
                    o.skewness.unwrap_or(f64::NAN),
                    o.kurtosis.unwrap_or(f64::NAN),
                    o.q1,
                    o.q3,
                    o.max,
                ],
            ),
            ("published", [p.min, p.mean, p.median, p.sd, p.skewness, p.kurtosis, p.q1, p.q3, p.max]),
        ] {
            let mut cells = vec![format!("{} {tag}", s.dataset), o.n.to_string()];
            cells.extend(row.iter().map(|&x| num(x)));
            summary.push(cells);
        }
    }

    let mut fits = Table::new(
        "Model comparison (published value in brackets)",
        &["data", "model", "estimates", "loglik", "AIC", "BIC", "CAIC", "HQIC", "A", "W", "KS", "KS_p"],
    );
    for m in &r.models {
        let est: Vec<String> = m.fit.estimates.iter().map(|&x| num(x)).collect();
        let cell = |x: f64, p: Option<f64>| match p {
            Some(p) => format!("{} [{}]", num(x), num(p)),
            None => num(x),
        };
        let p = m.published;
        let g = &m.gof;
        fits.push(vec![
            m.dataset.into(),
            m.model.into(),
            est.join(" "),
            num(g.loglik),
            cell(g.aic, p.map(|p| p.aic)),
            cell(g.bic, p.map(|p| p.bic)),
            cell(g.caic, p.map(|p| p.caic)),
            cell(g.hqic, p.map(|p| p.hqic)),
            cell(g.ad, p.map(|p| p.ad)),
            cell(g.cvm, p.map(|p| p.cvm)),
            cell(g.ks, p.map(|p| p.ks)),
            cell(g.ks_pvalue, p.map(|p| p.ks_pvalue)),
        ]);
    }

    let mut gates = Table::new(
        "Gates",
        &["status", "criterion", "data", "item", "observed", "expected", "tolerance"],
    );
    for g in &r.gates {
        let tol = match g.rule {
            Rule::Absolute => format!("±{}", g.tolerance),
            Rule::Relative => format!("±{}%", g.tolerance * 100.0),
            Rule::Below => "below".into(),
        };
        gates.push(vec![
            if g.pass { "PASS" } else { "FAIL" }.into(),
            g.criterion.to_string(),
            g.dataset.into(),
            g.item.clone(),
            num(g.observed),
            num(g.expected),
            tol,
        ]);
    }

    let mut reference = Table::new(
        "Published reference values for models not fitted here",
        &["data", "model", "AIC", "BIC", "CAIC", "HQIC", "A", "W", "KS", "KS_p"],
    );
    for row in &r.reference {
        let c = &row.criteria;
        let mut cells = vec![row.dataset.to_string(), c.model.to_string()];
        cells.extend([c.aic, c.bic, c.caic, c.hqic, c.ad, c.cvm, c.ks, c.ks_pvalue].iter().map(|&x| num(x)));
        reference.push(cells);
    }
    vec![summary, fits, gates, reference]
}

fn cmd_reproduce(args: &RunArgs) -> Result<Report> {
    let r = reproduce(&args.fit_options())?;
    let mut notes: Vec<String> = r.failures().map(|g| g.to_string()).collect();
    notes.extend(r.summaries.iter().filter_map(|s| s.source_check.clone()));
    let exit_code = if r.all_pass { EXIT_OK } else { EXIT_GATE_FAILED };
    if !r.all_pass {
        notes.push(format!(
            "reproduce: {} of {} gates failed",
            r.failures().count(),
            r.gates.len()
        ));
    }
    let mut json = to_json(&r);
    json["command"] = json!("reproduce");
    Ok(Report {
        tables: reproduce_tables(&r),
        json,
        exit_code,
        notes,
    })
}

/// Runs a parsed command without touching stdout.
pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Fit(a) => cmd_fit(a),
        Command::Gof(a) => cmd_gof(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Props(a) => cmd_props(a),
        Command::Curves(a) => cmd_curves(a),
        Command::Ttt(a) => cmd_ttt(a),
        Command::Reproduce(a) => cmd_reproduce(a),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Parses arguments, runs the command, writes the output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let format = cli.format.unwrap_or(if cli.out.is_none() && std::io::stdout().is_terminal() {
        Format::Table
    } else {
        Format::Json
    });
    if let Err(e) = write_output(cli.out.as_deref(), &report.render(format)) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    for note in &report.notes {
        eprintln!("{note}");
    }
    report.exit_code
}
