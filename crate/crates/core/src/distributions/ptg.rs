use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::baseline::{BaselineFamily, BaselineModel};
use super::transmuted::{check_alpha, check_unit_open, check_x, invert_transmuted, TgParts, Transmuted};
use super::ContinuousDistribution;
use crate::error::{domain, Error, Result};

pub const DEFAULT_BETA_FLOOR: f64 = 1e-8;

/// Full PT-G parameter vector: transmutation α, Poisson tilt β and the
/// baseline. Negative β is admitted; only β = 0 is excluded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PtgParams {
    alpha: f64,
    beta: f64,
    baseline: BaselineModel,
}

impl PtgParams {
    pub fn new(alpha: f64, beta: f64, baseline: BaselineModel) -> Result<Self> {
        Self::with_beta_floor(alpha, beta, baseline, DEFAULT_BETA_FLOOR)
    }

    pub fn with_beta_floor(alpha: f64, beta: f64, baseline: BaselineModel, beta_floor: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !beta.is_finite() || beta.abs() < beta_floor {
            return Err(domain(format!("|beta| must be at least {beta_floor:e}, got {beta}")));
        }
        Ok(PtgParams { alpha, beta, baseline })
    }

    /// PT-E convenience constructor.
    pub fn exponential(alpha: f64, beta: f64, rate: f64) -> Result<Self> {
        Self::new(alpha, beta, BaselineModel::exponential(rate)?)
    }

    /// PT-W convenience constructor.
    pub fn weibull(alpha: f64, beta: f64, rate: f64, shape: f64) -> Result<Self> {
        Self::new(alpha, beta, BaselineModel::weibull(rate, shape)?)
    }

    /// Builds from the flat vector `[α, β, baseline...]`.
    pub fn from_vector(family: BaselineFamily, v: &[f64]) -> Result<Self> {
        if v.len() != 2 + family.n_params() {
            return Err(domain(format!("expected {} parameters, got {}", 2 + family.n_params(), v.len())));
        }
        Self::new(v[0], v[1], BaselineModel::from_params(family, &v[2..])?)
    }

    pub fn to_vector(&self) -> Vec<f64> {
        let mut v = vec![self.alpha, self.beta];
        v.extend(self.baseline.params());
        v
    }

    pub fn param_names(&self) -> Vec<&'static str> {
        let mut names = vec!["alpha", "beta"];
        names.extend(self.baseline.family().param_names());
        names
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn baseline(&self) -> &BaselineModel {
        &self.baseline
    }

    pub fn transmuted(&self) -> Transmuted {
        Transmuted::new(self.alpha, self.baseline).expect("alpha validated at construction")
    }

    fn parts(&self, x: f64) -> TgParts {
        TgParts::at(x, self.alpha, &self.baseline)
    }

    /// `ln |β / (1 - e^{-β})|`, the log normalizing constant.
    pub(crate) fn ln_norm(&self) -> f64 {
        self.beta.abs().ln() - ln_abs_one_minus_exp_neg(self.beta)
    }

    /// Hazard rate in the closed form `β g k e^{-βT} / (e^{-βT} - e^{-β})`.
    pub fn hazard_closed_form(&self, x: f64) -> f64 {
        let p = self.parts(x);
        let num = self.beta * p.ln_g.exp() * p.tilt * (-self.beta * p.t).exp();
        num / ((-self.beta * p.t).exp() - (-self.beta).exp())
    }
}

/// `ln |1 - e^{-β}|`, stable for either sign of β.
pub(crate) fn ln_abs_one_minus_exp_neg(beta: f64) -> f64 {
    if beta > 0.0 {
        (-(-beta).exp_m1()).ln()
    } else {
        let b = -beta;
        b + (-(-b).exp_m1()).ln()
    }
}

/// `ln(e^c - 1)` for `c > 0`.
fn ln_expm1(c: f64) -> f64 {
    if c < 30.0 {
        c.exp_m1().ln()
    } else {
        c + (-(-c).exp_m1()).ln()
    }
}

/// `ln(1 + p (e^c - 1)) / c` for `c > 0`, `p ∈ [0, 1]`, without overflow.
fn log_mix_up(p: f64, c: f64) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    let lq = p.ln() + ln_expm1(c);
    let l = if lq < 30.0 { lq.exp().ln_1p() } else { lq + (-lq).exp().ln_1p() };
    (l / c).min(1.0)
}

/// `-ln(1 - p (1 - e^{-c})) / c` for `c > 0`, `p ∈ [0, 1]`.
fn log_mix_down(p: f64, c: f64) -> f64 {
    (-(p * (-c).exp_m1()).ln_1p() / c).min(1.0)
}

/// Poisson-G transform `(1 - e^{-βt}) / (1 - e^{-β})` and its complement,
/// given `t` and `1 - t` separately.
pub(crate) fn poisson_transform(beta: f64, t: f64, t_sf: f64) -> (f64, f64) {
    let (cdf, sf) = if beta > 0.0 {
        let den = (-beta).exp_m1();
        let cdf = (-beta * t).exp_m1() / den;
        let sf = (-beta * t).exp() * (-beta * t_sf).exp_m1() / den;
        (cdf, sf)
    } else {
        let b = -beta;
        let den = (-b).exp_m1();
        let cdf = (-b * t_sf).exp() * (-b * t).exp_m1() / den;
        let sf = (-b * t_sf).exp_m1() / den;
        (cdf, sf)
    };
    // the larger side as a complement keeps both monotone
    if cdf <= sf {
        (cdf, 1.0 - cdf)
    } else {
        (1.0 - sf, sf)
    }
}

/// Inverse of [`poisson_transform`]: returns `(t, 1 - t)` from `(u, 1 - u)`.
pub(crate) fn poisson_transform_inverse(beta: f64, u: f64, v: f64) -> (f64, f64) {
    if beta > 0.0 {
        (log_mix_down(u, beta), log_mix_up(v, beta))
    } else {
        let b = -beta;
        (log_mix_up(u, b), log_mix_down(v, b))
    }
}

impl ContinuousDistribution for PtgParams {
    fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x == f64::INFINITY {
            return 1.0;
        }
        let p = self.parts(x);
        poisson_transform(self.beta, p.t, p.t_sf).0.clamp(0.0, 1.0)
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        if x == f64::INFINITY {
            return 0.0;
        }
        let p = self.parts(x);
        poisson_transform(self.beta, p.t, p.t_sf).1.clamp(0.0, 1.0)
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        if x < 0.0 || x == f64::INFINITY {
            return f64::NEG_INFINITY;
        }
        let p = self.parts(x);
        if p.tilt <= 0.0 {
            return f64::NEG_INFINITY;
        }
        self.ln_norm() + p.ln_g + p.tilt.ln() - self.beta * p.t
    }

    fn quantile(&self, u: f64) -> f64 {
        let (t, t_sf) = poisson_transform_inverse(self.beta, u, 1.0 - u);
        invert_transmuted(t, t_sf, self.alpha, &self.baseline)
    }

    fn hazard(&self, x: f64) -> f64 {
        let sf = self.sf(x);
        if sf <= 0.0 {
            return f64::NAN;
        }
        self.pdf(x) / sf
    }
}

pub fn ptg_cdf(x: f64, p: &PtgParams) -> Result<f64> {
    check_x(x)?;
    Ok(p.cdf(x))
}

pub fn ptg_pdf(x: f64, p: &PtgParams) -> Result<f64> {
    check_x(x)?;
    Ok(p.pdf(x))
}

/// Log density evaluated in log space; `-∞` where the density vanishes.
pub fn ptg_log_pdf(x: f64, p: &PtgParams) -> Result<f64> {
    check_x(x)?;
    Ok(p.ln_pdf(x))
}

pub fn ptg_hrf(x: f64, p: &PtgParams) -> Result<f64> {
    check_x(x)?;
    if p.cdf(x) >= 1.0 - 1e-15 {
        return Err(domain(format!("hazard undefined: cdf({x}) is 1 to working precision")));
    }
    Ok(p.hazard(x))
}

pub fn ptg_quantile(u: f64, p: &PtgParams) -> Result<f64> {
    check_unit_open(u)?;
    let x = p.quantile(u);
    if x.is_nan() {
        return Err(Error::Numerical(format!("quantile inversion failed at u = {u}")));
    }
    Ok(x)
}

/// Draws `n` observations by inverse transform from a seeded ChaCha stream.
pub fn ptg_sample(n: usize, p: &PtgParams, seed: u64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    Ok(sample(p, n, seed))
}

/// Inverse-transform sampling from any distribution with a quantile function.
pub fn sample<D: ContinuousDistribution + ?Sized>(dist: &D, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u = loop {
                let u: f64 = rng.random();
                if u > 0.0 {
                    break u;
                }
            };
            dist.quantile(u)
        })
        .collect()
}
