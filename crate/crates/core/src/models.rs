//! One interface over the PT-G families and the reference competitors.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::competitors::{fit_exponential, fit_mo_exponential, fit_moment_exponential, CompetitorFit, CompetitorModel};
use crate::distributions::{BaselineFamily, ContinuousDistribution, PtgParams};
use crate::error::{domain, Error, Result};
use crate::gof::{gof_report, GofReport};
use crate::mle::{fit, FitOptions, FitResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Pte,
    Ptw,
    Exp,
    Me,
    Moe,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [ModelKind::Pte, ModelKind::Ptw, ModelKind::Exp, ModelKind::Me, ModelKind::Moe];

    pub fn label(self) -> &'static str {
        match self {
            ModelKind::Pte => "PT-E",
            ModelKind::Ptw => "PT-W",
            ModelKind::Exp => "Exp",
            ModelKind::Me => "ME",
            ModelKind::Moe => "MO-E",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ModelKind::Pte => &["alpha", "beta", "lambda"],
            ModelKind::Ptw => &["alpha", "beta", "lambda", "theta"],
            ModelKind::Exp => &["lambda"],
            ModelKind::Me => &["sigma"],
            ModelKind::Moe => &["alpha", "lambda"],
        }
    }

    pub fn is_ptg(self) -> bool {
        matches!(self, ModelKind::Pte | ModelKind::Ptw)
    }

    /// Builds a distribution from a flat parameter vector in `param_names` order.
    pub fn distribution(self, params: &[f64]) -> Result<ModelDistribution> {
        let names = self.param_names();
        if params.len() != names.len() {
            return Err(domain(format!(
                "{} takes {} parameters ({}), got {}",
                self.label(),
                names.len(),
                names.join(", "),
                params.len()
            )));
        }
        Ok(match self {
            ModelKind::Pte => ModelDistribution::Ptg(PtgParams::from_vector(BaselineFamily::Exponential, params)?),
            ModelKind::Ptw => ModelDistribution::Ptg(PtgParams::from_vector(BaselineFamily::Weibull, params)?),
            ModelKind::Exp => ModelDistribution::Competitor(CompetitorModel::exp(params[0])?),
            ModelKind::Me => ModelDistribution::Competitor(CompetitorModel::me(params[0])?),
            ModelKind::Moe => ModelDistribution::Competitor(CompetitorModel::moe(params[0], params[1])?),
        })
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "").as_str() {
            "pte" => Ok(ModelKind::Pte),
            "ptw" => Ok(ModelKind::Ptw),
            "exp" => Ok(ModelKind::Exp),
            "me" => Ok(ModelKind::Me),
            "moe" => Ok(ModelKind::Moe),
            _ => Err(domain(format!("unknown model {s:?}; expected pte, ptw, exp, me or moe"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ModelDistribution {
    Ptg(PtgParams),
    Competitor(CompetitorModel),
}

impl ModelDistribution {
    pub fn as_ptg(&self) -> Option<&PtgParams> {
        match self {
            ModelDistribution::Ptg(p) => Some(p),
            ModelDistribution::Competitor(_) => None,
        }
    }

    pub fn log_likelihood(&self, data: &[f64]) -> Result<f64> {
        match self {
            ModelDistribution::Ptg(p) => crate::mle::log_likelihood(data, p),
            ModelDistribution::Competitor(c) => c.log_likelihood(data),
        }
    }
}

impl ContinuousDistribution for ModelDistribution {
    fn pdf(&self, x: f64) -> f64 {
        match self {
            ModelDistribution::Ptg(p) => p.pdf(x),
            ModelDistribution::Competitor(c) => c.pdf(x),
        }
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        match self {
            ModelDistribution::Ptg(p) => p.ln_pdf(x),
            ModelDistribution::Competitor(c) => c.ln_pdf(x),
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        match self {
            ModelDistribution::Ptg(p) => p.cdf(x),
            ModelDistribution::Competitor(c) => c.cdf(x),
        }
    }

    fn sf(&self, x: f64) -> f64 {
        match self {
            ModelDistribution::Ptg(p) => p.sf(x),
            ModelDistribution::Competitor(c) => c.sf(x),
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        match self {
            ModelDistribution::Ptg(p) => p.quantile(u),
            ModelDistribution::Competitor(c) => c.quantile(u),
        }
    }

    fn hazard(&self, x: f64) -> f64 {
        match self {
            ModelDistribution::Ptg(p) => p.hazard(x),
            ModelDistribution::Competitor(c) => c.hazard(x),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FittedModel {
    pub kind: ModelKind,
    pub param_names: Vec<&'static str>,
    pub estimates: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub ci_low: Vec<f64>,
    pub ci_high: Vec<f64>,
    pub loglik: f64,
    pub converged: bool,
    pub degenerate_hessian: bool,
    pub n_obs: usize,
    #[serde(skip)]
    pub distribution: ModelDistribution,
    /// Full PT-G fit details; `None` for the competitors.
    #[serde(skip)]
    pub ptg_fit: Option<FitResult>,
}

impl FittedModel {
    pub fn n_params(&self) -> usize {
        self.estimates.len()
    }

    pub fn gof(&self, data: &[f64]) -> Result<GofReport> {
        let d = self.distribution;
        gof_report(data, self.loglik, self.n_params(), |x| d.cdf(x))
    }
}

fn from_ptg(kind: ModelKind, r: FitResult) -> FittedModel {
    FittedModel {
        kind,
        param_names: kind.param_names().to_vec(),
        estimates: r.estimates.to_vector(),
        std_errors: r.std_errors.clone(),
        ci_low: r.ci_low.clone(),
        ci_high: r.ci_high.clone(),
        loglik: r.loglik,
        converged: r.converged,
        degenerate_hessian: r.degenerate_hessian,
        n_obs: r.n_obs,
        distribution: ModelDistribution::Ptg(r.estimates),
        ptg_fit: Some(r),
    }
}

fn from_competitor(kind: ModelKind, r: CompetitorFit) -> FittedModel {
    let z = Normal::standard().inverse_cdf(0.975);
    let estimates = r.model.params();
    let ci_low = estimates
        .iter()
        .zip(&r.std_errors)
        .map(|(e, s)| if s.is_nan() { f64::NAN } else { (e - z * s).max(0.0) })
        .collect();
    let ci_high = estimates.iter().zip(&r.std_errors).map(|(e, s)| e + z * s).collect();
    FittedModel {
        kind,
        param_names: kind.param_names().to_vec(),
        estimates,
        std_errors: r.std_errors,
        ci_low,
        ci_high,
        loglik: r.loglik,
        converged: r.converged,
        degenerate_hessian: r.degenerate_hessian,
        n_obs: r.n_obs,
        distribution: ModelDistribution::Competitor(r.model),
        ptg_fit: None,
    }
}

/// Fits any supported model by maximum likelihood.
pub fn fit_model(kind: ModelKind, data: &[f64], opts: &FitOptions) -> Result<FittedModel> {
    Ok(match kind {
        ModelKind::Pte => from_ptg(kind, fit(data, BaselineFamily::Exponential, opts)?),
        ModelKind::Ptw => from_ptg(kind, fit(data, BaselineFamily::Weibull, opts)?),
        ModelKind::Exp => from_competitor(kind, fit_exponential(data)?),
        ModelKind::Me => from_competitor(kind, fit_moment_exponential(data)?),
        ModelKind::Moe => from_competitor(kind, fit_mo_exponential(data, opts)?),
    })
}
