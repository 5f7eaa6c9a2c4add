//! Maximum-likelihood fitting of PT-G models.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::distributions::{BaselineFamily, PtgParams, TgParts};
use crate::error::{domain, Error, Result};
use crate::optimize::{gradient, hessian, latin_hypercube, NelderMead};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitOptions {
    pub n_starts: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
    pub fd_step: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            n_starts: 20,
            max_iter: 2000,
            tol: 1e-10,
            seed: 0,
            fd_step: 1e-4,
        }
    }
}

impl FitOptions {
    fn validate(&self) -> Result<()> {
        if self.n_starts == 0 || self.max_iter == 0 || !(self.tol > 0.0) || !(self.fd_step > 0.0) {
            return Err(domain("fit options must all be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    pub estimates: PtgParams,
    pub loglik: f64,
    pub std_errors: Vec<f64>,
    pub ci_low: Vec<f64>,
    pub ci_high: Vec<f64>,
    pub info_matrix: Vec<Vec<f64>>,
    pub converged: bool,
    pub degenerate_hessian: bool,
    pub n_restarts_used: usize,
    pub n_obs: usize,
    /// Maximized log-likelihood of every restart, in start order.
    pub restart_logliks: Vec<f64>,
    /// Largest absolute gradient component at the optimum, in the
    /// unconstrained coordinates the optimizer works in.
    pub max_gradient: f64,
}

impl FitResult {
    pub fn family(&self) -> BaselineFamily {
        self.estimates.baseline().family()
    }

    pub fn n_params(&self) -> usize {
        self.std_errors.len()
    }
}

pub(crate) fn check_data(data: &[f64]) -> Result<()> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    if let Some(x) = data.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(domain(format!("observations must be positive and finite, got {x}")));
    }
    Ok(())
}

/// Log-likelihood in the closed form
/// `n ln|β| - n ln|1 - e^{-β}| + Σ ln g + Σ ln(1 + α - 2αG) - β Σ T`.
///
/// Returns `-∞` if any observation has zero density.
pub fn log_likelihood(data: &[f64], p: &PtgParams) -> Result<f64> {
    check_data(data)?;
    Ok(loglik_unchecked(data, p))
}

fn loglik_unchecked(data: &[f64], p: &PtgParams) -> f64 {
    let n = data.len() as f64;
    let mut sum = 0.0;
    for &x in data {
        let parts = TgParts::at(x, p.alpha(), p.baseline());
        if !(parts.tilt > 0.0) || parts.ln_g == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        sum += parts.ln_g + parts.tilt.ln() - p.beta() * parts.t;
    }
    n * p.ln_norm() + sum
}

/// Map from unconstrained coordinates: `α = tanh a`, `β = b`, baseline parameters `e^c`.
fn from_free(family: BaselineFamily, z: &[f64]) -> Option<PtgParams> {
    let mut v = vec![z[0].tanh(), z[1]];
    v.extend(z[2..].iter().map(|c| c.exp()));
    PtgParams::from_vector(family, &v).ok()
}

fn to_free(p: &PtgParams) -> Vec<f64> {
    let v = p.to_vector();
    let mut z = vec![v[0].clamp(-1.0 + 1e-12, 1.0 - 1e-12).atanh(), v[1]];
    z.extend(v[2..].iter().map(|c| c.ln()));
    z
}

fn start_points(data: &[f64], family: BaselineFamily, opts: &FitOptions) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let dim = 2 + family.n_params();
    let n = data.len() as f64;
    let mean = data.iter().sum::<f64>() / n;
    latin_hypercube(opts.n_starts, dim, &mut rng)
        .into_iter()
        .map(|u| {
            let alpha = -0.9 + 1.8 * u[0];
            let w = 2.0 * u[1] - 1.0;
            let beta = w.signum() * (0.1 + 9.9 * w.abs());
            let log_uniform = |u: f64, lo: f64, hi: f64| (lo.ln() + u * (hi / lo).ln()).exp();
            let mut v = vec![alpha, beta];
            match family {
                BaselineFamily::Exponential => v.push(log_uniform(u[2], 0.1 / mean, 10.0 / mean)),
                BaselineFamily::Weibull => {
                    let theta = log_uniform(u[3], 0.3, 3.0);
                    let scale = data.iter().map(|x| x.powf(theta)).sum::<f64>() / n;
                    v.push(log_uniform(u[2], 0.1 / scale, 10.0 / scale));
                    v.push(theta);
                }
            }
            let p = PtgParams::from_vector(family, &v).expect("start box lies inside the domain");
            to_free(&p)
        })
        .collect()
}

/// Fits a PT-G model by multi-start Nelder-Mead on the unconstrained scale.
///
/// Restarts run in parallel from Latin-hypercube starting points and the
/// best local optimum is kept. Standard errors come from the observed
/// information in the original coordinates.
pub fn fit(data: &[f64], family: BaselineFamily, opts: &FitOptions) -> Result<FitResult> {
    check_data(data)?;
    opts.validate()?;
    let k = 2 + family.n_params();
    if data.len() < k + 1 {
        return Err(domain(format!("need at least {} observations to fit {k} parameters", k + 1)));
    }

    let objective = |z: &[f64]| match from_free(family, z) {
        Some(p) => {
            let ll = loglik_unchecked(data, &p);
            if ll.is_nan() {
                f64::INFINITY
            } else {
                -ll
            }
        }
        None => f64::INFINITY,
    };
    let nm = NelderMead {
        max_iter: opts.max_iter,
        ftol: opts.tol,
        xtol: 1e-8,
    };

    let starts = start_points(data, family, opts);
    let runs: Vec<_> = starts
        .par_iter()
        .map(|z0| nm.minimize_polished(&objective, z0, 0.5))
        .collect();
    let restart_logliks: Vec<f64> = runs.iter().map(|m| -m.fx).collect();
    let best = runs
        .iter()
        .filter(|m| m.fx.is_finite())
        .min_by(|a, b| a.fx.total_cmp(&b.fx))
        .ok_or_else(|| Error::Numerical("no restart reached a finite log-likelihood".into()))?;

    let estimates = from_free(family, &best.x).ok_or_else(|| Error::Numerical("optimum left the parameter domain".into()))?;
    let loglik = -best.fx;

    let hz: Vec<f64> = best.x.iter().map(|z| opts.fd_step * z.abs().max(1.0)).collect();
    let max_gradient = gradient(&objective, &best.x, &hz)
        .into_iter()
        .fold(0.0f64, |m, g| m.max(g.abs()));

    let info_matrix = observed_information(data, &estimates, opts.fd_step)?;
    let (std_errors, degenerate_hessian) = match covariance(&info_matrix) {
        Some(cov) => ((0..k).map(|i| cov[i][i].max(0.0).sqrt()).collect(), false),
        None => (vec![f64::NAN; k], true),
    };
    let mut result = FitResult {
        estimates,
        loglik,
        std_errors,
        ci_low: Vec::new(),
        ci_high: Vec::new(),
        info_matrix,
        converged: best.converged,
        degenerate_hessian,
        n_restarts_used: runs.len(),
        n_obs: data.len(),
        restart_logliks,
        max_gradient,
    };
    if !result.converged {
        log::warn!("best restart did not meet the convergence tolerance");
    }
    let (lo, hi) = truncated_wald(&result.estimates.to_vector(), &result.std_errors, 0.95);
    result.ci_low = lo;
    result.ci_high = hi;
    Ok(result)
}

/// Observed information `-∂²ℓ/∂ρ_i∂ρ_j` by central differences in the
/// original coordinates.
pub fn observed_information(data: &[f64], p_hat: &PtgParams, fd_step: f64) -> Result<Vec<Vec<f64>>> {
    check_data(data)?;
    if !(fd_step > 0.0) {
        return Err(domain("fd_step must be positive"));
    }
    let family = p_hat.baseline().family();
    let rho = p_hat.to_vector();
    let mut h: Vec<f64> = rho.iter().map(|r| fd_step * r.abs().max(1.0)).collect();

    let edge = 1.0 - rho[0].abs();
    if edge < 10.0 * fd_step {
        log::warn!("alpha = {} is within 10 fd steps of the domain edge", rho[0]);
    }
    h[0] = h[0].min(0.5 * edge).max(f64::EPSILON);
    for j in 2..rho.len() {
        if rho[j] < 10.0 * h[j] {
            log::warn!("{} = {} is within 10 fd steps of zero", p_hat.param_names()[j], rho[j]);
            h[j] = h[j].min(0.5 * rho[j]);
        }
    }

    let neg_ll = |v: &[f64]| match PtgParams::from_vector(family, v) {
        Ok(p) => -loglik_unchecked(data, &p),
        Err(_) => f64::NAN,
    };
    Ok(hessian(&neg_ll, &rho, &h))
}

/// Inverse of a positive definite matrix, or `None` if it is singular
/// within `1e-10` relative.
pub(crate) fn covariance(info: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let k = info.len();
    let m = DMatrix::from_fn(k, k, |i, j| info[i][j]);
    if m.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let eig = m.clone().symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let min = eig.eigenvalues.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    if !(min > 1e-10 * max) {
        return None;
    }
    let inv = m.cholesky()?.inverse();
    Some((0..k).map(|i| (0..k).map(|j| inv[(i, j)]).collect()).collect())
}

fn normal_quantile(level: f64) -> f64 {
    Normal::standard().inverse_cdf(0.5 + level / 2.0)
}

fn truncated_wald(est: &[f64], se: &[f64], level: f64) -> (Vec<f64>, Vec<f64>) {
    let z = normal_quantile(level);
    let mut lo = Vec::with_capacity(est.len());
    let mut hi = Vec::with_capacity(est.len());
    for (j, (&e, &s)) in est.iter().zip(se).enumerate() {
        let (mut l, mut h) = (e - z * s, e + z * s);
        if s.is_nan() {
            lo.push(f64::NAN);
            hi.push(f64::NAN);
            continue;
        }
        match j {
            0 => {
                l = l.max(-1.0);
                h = h.min(1.0);
            }
            1 if e < 0.0 => h = h.min(0.0),
            1 => l = l.max(0.0),
            _ => l = l.max(0.0),
        }
        lo.push(l);
        hi.push(h);
    }
    (lo, hi)
}

/// Wald intervals `ρ̂ ± z·SE`, clipped to the parameter domain; β keeps its sign.
pub fn wald_ci(fit: &FitResult, level: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(level > 0.0 && level < 1.0) {
        return Err(domain(format!("confidence level must lie in (0, 1), got {level}")));
    }
    if fit.degenerate_hessian {
        return Err(Error::Numerical("information matrix is singular; no Wald interval".into()));
    }
    Ok(truncated_wald(&fit.estimates.to_vector(), &fit.std_errors, level))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{ptg_log_pdf, ptg_sample};

    #[test]
    fn closed_form_matches_log_pdf_sum() {
        let p = PtgParams::weibull(-0.4, -3.0, 0.7, 1.6).unwrap();
        let data = [0.2, 0.9, 1.4, 3.3];
        let direct: f64 = data.iter().map(|&x| ptg_log_pdf(x, &p).unwrap()).sum();
        assert!((log_likelihood(&data, &p).unwrap() - direct).abs() < 1e-10);
    }

    #[test]
    fn single_observation_alpha_zero() {
        let p = PtgParams::exponential(0.0, 1.5, 2.0).unwrap();
        let x: f64 = 0.4;
        let g = 1.0 - (-2.0 * x).exp();
        let expected = 1.5f64.ln() - (1.0 - (-1.5f64).exp()).ln() + (2.0f64.ln() - 2.0 * x) - 1.5 * g;
        assert!((log_likelihood(&[x], &p).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn empty_data_rejected() {
        let p = PtgParams::exponential(0.0, 1.5, 2.0).unwrap();
        assert!(matches!(log_likelihood(&[], &p), Err(Error::EmptyData)));
        assert!(log_likelihood(&[1.0, -1.0], &p).is_err());
    }

    #[test]
    fn fit_is_deterministic_and_monotone() {
        let truth = PtgParams::exponential(0.3, 1.5, 1.2).unwrap();
        let data = ptg_sample(300, &truth, 11).unwrap();
        let opts = FitOptions { n_starts: 8, seed: 5, ..Default::default() };
        let a = fit(&data, BaselineFamily::Exponential, &opts).unwrap();
        let b = fit(&data, BaselineFamily::Exponential, &opts).unwrap();
        assert_eq!(a.estimates, b.estimates);
        for ll in &a.restart_logliks {
            assert!(a.loglik >= *ll);
        }
        for i in 0..3 {
            assert!(a.ci_low[i] <= a.estimates.to_vector()[i] && a.estimates.to_vector()[i] <= a.ci_high[i]);
        }
    }

    #[test]
    fn zero_se_gives_point_interval() {
        let (lo, hi) = truncated_wald(&[0.5, -2.0, 1.0], &[0.0, 0.0, 0.0], 0.95);
        assert_eq!(lo, vec![0.5, -2.0, 1.0]);
        assert_eq!(hi, vec![0.5, -2.0, 1.0]);
    }

    #[test]
    fn interval_truncation() {
        let (lo, hi) = truncated_wald(&[0.9, -1.0, 0.1], &[0.2, 1.0, 0.1], 0.95);
        assert_eq!(hi[0], 1.0);
        assert_eq!(hi[1], 0.0);
        assert_eq!(lo[2], 0.0);
    }

    #[test]
    fn singular_information_detected() {
        assert!(covariance(&[vec![1.0, 1.0], vec![1.0, 1.0]]).is_none());
        let c = covariance(&[vec![4.0, 0.0], vec![0.0, 0.25]]).unwrap();
        assert!((c[0][0] - 0.25).abs() < 1e-15 && (c[1][1] - 4.0).abs() < 1e-15);
    }
}
