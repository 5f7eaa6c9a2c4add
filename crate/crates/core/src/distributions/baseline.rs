use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineFamily {
    Exponential,
    Weibull,
}

impl BaselineFamily {
    pub fn n_params(self) -> usize {
        match self {
            BaselineFamily::Exponential => 1,
            BaselineFamily::Weibull => 2,
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            BaselineFamily::Exponential => &["lambda"],
            BaselineFamily::Weibull => &["lambda", "theta"],
        }
    }
}

/// Baseline distribution G on (0, ∞).
///
/// Both families share the cumulative hazard form `H(x) = λ x^θ` with
/// `G(x) = 1 - e^{-H(x)}`; the exponential is the `θ = 1` case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum BaselineModel {
    Exponential { rate: f64 },
    Weibull { rate: f64, shape: f64 },
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

impl BaselineModel {
    pub fn exponential(rate: f64) -> Result<Self> {
        check_positive("exponential rate", rate)?;
        Ok(BaselineModel::Exponential { rate })
    }

    pub fn weibull(rate: f64, shape: f64) -> Result<Self> {
        check_positive("weibull rate", rate)?;
        check_positive("weibull shape", shape)?;
        Ok(BaselineModel::Weibull { rate, shape })
    }

    pub fn from_params(family: BaselineFamily, params: &[f64]) -> Result<Self> {
        if params.len() != family.n_params() {
            return Err(domain(format!(
                "{family:?} baseline takes {} parameter(s), got {}",
                family.n_params(),
                params.len()
            )));
        }
        match family {
            BaselineFamily::Exponential => Self::exponential(params[0]),
            BaselineFamily::Weibull => Self::weibull(params[0], params[1]),
        }
    }

    pub fn family(&self) -> BaselineFamily {
        match self {
            BaselineModel::Exponential { .. } => BaselineFamily::Exponential,
            BaselineModel::Weibull { .. } => BaselineFamily::Weibull,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            BaselineModel::Exponential { rate } => vec![rate],
            BaselineModel::Weibull { rate, shape } => vec![rate, shape],
        }
    }

    /// Support of the baseline, `(lower, upper)`.
    pub fn support(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }

    fn rate_shape(&self) -> (f64, f64) {
        match *self {
            BaselineModel::Exponential { rate } => (rate, 1.0),
            BaselineModel::Weibull { rate, shape } => (rate, shape),
        }
    }

    pub fn cumulative_hazard(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let (rate, shape) = self.rate_shape();
        if shape == 1.0 {
            rate * x
        } else {
            rate * x.powf(shape)
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        -(-self.cumulative_hazard(x)).exp_m1()
    }

    pub fn sf(&self, x: f64) -> f64 {
        (-self.cumulative_hazard(x)).exp()
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return f64::NEG_INFINITY;
        }
        let (rate, shape) = self.rate_shape();
        let h = self.cumulative_hazard(x);
        if shape == 1.0 {
            rate.ln() - h
        } else if x == 0.0 {
            if shape < 1.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        } else {
            rate.ln() + shape.ln() + (shape - 1.0) * x.ln() - h
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    /// Inverse of the cdf: the x with `G(x) = p`.
    pub fn quantile(&self, p: f64) -> f64 {
        self.at_cumulative_hazard(-(-p).ln_1p())
    }

    /// Inverse of the survival function: the x with `1 - G(x) = s`.
    pub fn quantile_sf(&self, s: f64) -> f64 {
        self.at_cumulative_hazard(-s.ln())
    }

    fn at_cumulative_hazard(&self, h: f64) -> f64 {
        let (rate, shape) = self.rate_shape();
        if shape == 1.0 {
            h / rate
        } else {
            (h / rate).powf(1.0 / shape)
        }
    }

    /// Supremum of `s` for which `E[e^{sX}]` is finite.
    pub fn exponential_moment_bound(&self) -> f64 {
        let (rate, shape) = self.rate_shape();
        if shape > 1.0 {
            f64::INFINITY
        } else if shape == 1.0 {
            rate
        } else {
            0.0
        }
    }
}
