//! Exponential, moment exponential and Marshall-Olkin exponential models.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::ContinuousDistribution;
use crate::error::{domain, Error, Result};
use crate::mle::{check_data, covariance, FitOptions};
use crate::optimize::{hessian, latin_hypercube, NelderMead};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum CompetitorModel {
    /// `f(x) = λ e^{-λx}`
    Exp { rate: f64 },
    /// Length-biased exponential `f(x) = x e^{-x/σ} / σ²`.
    Me { sigma: f64 },
    /// Marshall-Olkin exponential with survival `α e^{-λx} / (1 - (1-α) e^{-λx})`.
    Moe { alpha: f64, rate: f64 },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

impl CompetitorModel {
    pub fn exp(rate: f64) -> Result<Self> {
        positive("rate", rate)?;
        Ok(CompetitorModel::Exp { rate })
    }

    pub fn me(sigma: f64) -> Result<Self> {
        positive("sigma", sigma)?;
        Ok(CompetitorModel::Me { sigma })
    }

    pub fn moe(alpha: f64, rate: f64) -> Result<Self> {
        positive("alpha", alpha)?;
        positive("rate", rate)?;
        Ok(CompetitorModel::Moe { alpha, rate })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            CompetitorModel::Exp { .. } => "exp",
            CompetitorModel::Me { .. } => "me",
            CompetitorModel::Moe { .. } => "moe",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            CompetitorModel::Exp { rate } => vec![rate],
            CompetitorModel::Me { sigma } => vec![sigma],
            CompetitorModel::Moe { alpha, rate } => vec![alpha, rate],
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            CompetitorModel::Exp { .. } => &["lambda"],
            CompetitorModel::Me { .. } => &["sigma"],
            CompetitorModel::Moe { .. } => &["alpha", "lambda"],
        }
    }

    pub fn log_likelihood(&self, data: &[f64]) -> Result<f64> {
        check_data(data)?;
        Ok(data.iter().map(|&x| self.ln_pdf(x)).sum())
    }
}

impl ContinuousDistribution for CompetitorModel {
    fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return f64::NEG_INFINITY;
        }
        match *self {
            CompetitorModel::Exp { rate } => rate.ln() - rate * x,
            CompetitorModel::Me { sigma } => x.ln() - x / sigma - 2.0 * sigma.ln(),
            CompetitorModel::Moe { alpha, rate } => {
                let w = (-rate * x).exp();
                alpha.ln() + rate.ln() - rate * x - 2.0 * (-(1.0 - alpha) * w).ln_1p()
            }
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            CompetitorModel::Exp { rate } => -(-rate * x).exp_m1(),
            CompetitorModel::Me { .. } => 1.0 - self.sf(x),
            CompetitorModel::Moe { alpha, rate } => {
                let w = (-rate * x).exp();
                -(-rate * x).exp_m1() / (1.0 - (1.0 - alpha) * w)
            }
        }
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        match *self {
            CompetitorModel::Exp { rate } => (-rate * x).exp(),
            CompetitorModel::Me { sigma } => {
                let y = x / sigma;
                (1.0 + y) * (-y).exp()
            }
            CompetitorModel::Moe { alpha, rate } => {
                let w = (-rate * x).exp();
                alpha * w / (1.0 - (1.0 - alpha) * w)
            }
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        match *self {
            CompetitorModel::Exp { rate } => -(-u).ln_1p() / rate,
            CompetitorModel::Me { sigma } => sigma * gamma2_quantile(u),
            CompetitorModel::Moe { alpha, rate } => ((-u * (1.0 - alpha)).ln_1p() - (-u).ln_1p()) / rate,
        }
    }
}

/// Quantile of the unit-scale Gamma(2) law: the `y` with `(1 + y) e^{-y} = 1 - u`.
fn gamma2_quantile(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return f64::INFINITY;
    }
    // h(y) = ln(1 + y) - y - ln(1 - u) is decreasing on y > 0
    let target = (-u).ln_1p();
    let h = |y: f64| y.ln_1p() - y - target;
    let (mut lo, mut hi) = (0.0, 1.0);
    while h(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    let mut y = 0.5 * (lo + hi);
    for _ in 0..200 {
        let v = h(y);
        if v > 0.0 {
            lo = y;
        } else {
            hi = y;
        }
        let step = v / (-y / (1.0 + y));
        if step.abs() <= 4.0 * f64::EPSILON * y {
            break;
        }
        let next = y - step;
        y = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        if hi - lo <= 4.0 * f64::EPSILON * y {
            break;
        }
    }
    y
}

#[derive(Debug, Clone, Serialize)]
pub struct CompetitorFit {
    pub model: CompetitorModel,
    pub loglik: f64,
    pub std_errors: Vec<f64>,
    pub converged: bool,
    pub degenerate_hessian: bool,
    pub n_obs: usize,
}

fn mean(data: &[f64]) -> f64 {
    data.iter().sum::<f64>() / data.len() as f64
}

/// Closed form `λ̂ = 1/x̄`, `ℓ = n(ln λ̂ - 1)`, `SE = λ̂/√n`.
pub fn fit_exponential(data: &[f64]) -> Result<CompetitorFit> {
    check_data(data)?;
    let n = data.len() as f64;
    let rate = 1.0 / mean(data);
    Ok(CompetitorFit {
        model: CompetitorModel::exp(rate)?,
        loglik: n * (rate.ln() - 1.0),
        std_errors: vec![rate / n.sqrt()],
        converged: true,
        degenerate_hessian: false,
        n_obs: data.len(),
    })
}

/// Closed form `σ̂ = x̄/2`, `SE = σ̂/√(2n)`.
pub fn fit_moment_exponential(data: &[f64]) -> Result<CompetitorFit> {
    check_data(data)?;
    let n = data.len() as f64;
    let sigma = mean(data) / 2.0;
    let model = CompetitorModel::me(sigma)?;
    Ok(CompetitorFit {
        model,
        loglik: model.log_likelihood(data)?,
        std_errors: vec![sigma / (2.0 * n).sqrt()],
        converged: true,
        degenerate_hessian: false,
        n_obs: data.len(),
    })
}

/// Numerical MLE of the Marshall-Olkin exponential by multi-start Nelder-Mead
/// on `(ln α, ln λ)`.
pub fn fit_mo_exponential(data: &[f64], opts: &FitOptions) -> Result<CompetitorFit> {
    check_data(data)?;
    if data.len() < 3 {
        return Err(domain("the Marshall-Olkin fit needs at least three observations"));
    }
    let xbar = mean(data);
    let objective = |z: &[f64]| {
        let (alpha, rate) = (z[0].exp(), z[1].exp());
        if !(alpha.is_finite() && rate.is_finite() && alpha > 0.0 && rate > 0.0) {
            return f64::INFINITY;
        }
        let m = CompetitorModel::Moe { alpha, rate };
        let ll: f64 = data.iter().map(|&x| m.ln_pdf(x)).sum();
        if ll.is_nan() {
            f64::INFINITY
        } else {
            -ll
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let starts: Vec<Vec<f64>> = latin_hypercube(opts.n_starts, 2, &mut rng)
        .into_iter()
        .map(|u| vec![(0.01f64).ln() + u[0] * (1e4f64).ln(), (0.1 / xbar).ln() + u[1] * (100f64).ln()])
        .collect();
    let nm = NelderMead {
        max_iter: opts.max_iter,
        ftol: opts.tol,
        xtol: 1e-8,
    };
    let best = starts
        .par_iter()
        .map(|z0| nm.minimize_polished(&objective, z0, 0.5))
        .filter(|m| m.fx.is_finite())
        .min_by(|a, b| a.fx.total_cmp(&b.fx))
        .ok_or_else(|| Error::Numerical("no Marshall-Olkin restart reached a finite log-likelihood".into()))?;

    let est = [best.x[0].exp(), best.x[1].exp()];
    let h: Vec<f64> = est.iter().map(|v| (opts.fd_step * v.max(1.0)).min(0.5 * v)).collect();
    let neg_ll = |v: &[f64]| match CompetitorModel::moe(v[0], v[1]) {
        Ok(m) => -data.iter().map(|&x| m.ln_pdf(x)).sum::<f64>(),
        Err(_) => f64::NAN,
    };
    let info = hessian(&neg_ll, &est, &h);
    let (std_errors, degenerate_hessian) = match covariance(&info) {
        Some(c) => (vec![c[0][0].sqrt(), c[1][1].sqrt()], false),
        None => (vec![f64::NAN; 2], true),
    };
    Ok(CompetitorFit {
        model: CompetitorModel::moe(est[0], est[1])?,
        loglik: -best.fx,
        std_errors,
        converged: best.converged,
        degenerate_hessian,
        n_obs: data.len(),
    })
}
