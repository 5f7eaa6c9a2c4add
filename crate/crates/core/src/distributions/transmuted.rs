use serde::Serialize;

use super::baseline::BaselineModel;
use super::ContinuousDistribution;
use crate::error::{domain, Result};

/// Quadratic rank transmutation of a baseline: `T(x) = G(x)[1 + α - αG(x)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Transmuted {
    alpha: f64,
    baseline: BaselineModel,
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha.abs() <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("transmutation parameter must satisfy |alpha| <= 1, got {alpha}")))
    }
}

pub(crate) fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("x must be nonnegative, got {x}")))
    }
}

pub(crate) fn check_unit_open(u: f64) -> Result<()> {
    if u > 0.0 && u < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("probability must lie in (0, 1), got {u}")))
    }
}

/// Quantities of the transmuted layer at a point, each computed in the
/// form that keeps its own tail accurate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TgParts {
    /// T-G cdf, `G(1 + α - αG)`.
    pub t: f64,
    /// T-G survival, `(1 - G)(1 - αG)`.
    pub t_sf: f64,
    /// `ln g(x)`.
    pub ln_g: f64,
    /// `1 + α - 2αG`, written as `1 - α + 2α(1 - G)`.
    pub tilt: f64,
}

impl TgParts {
    pub fn at(x: f64, alpha: f64, baseline: &BaselineModel) -> Self {
        let h = baseline.cumulative_hazard(x);
        let g_cdf = -(-h).exp_m1();
        let g_sf = (-h).exp();
        TgParts {
            t: g_cdf * (1.0 + alpha - alpha * g_cdf),
            t_sf: g_sf * (1.0 - alpha * g_cdf),
            ln_g: baseline.ln_pdf(x),
            tilt: 1.0 - alpha + 2.0 * alpha * g_sf,
        }
    }

    pub fn pdf(&self) -> f64 {
        if self.tilt <= 0.0 {
            return 0.0;
        }
        self.ln_g.exp() * self.tilt
    }

    pub fn ln_pdf(&self) -> f64 {
        if self.tilt <= 0.0 {
            return f64::NEG_INFINITY;
        }
        self.ln_g + self.tilt.ln()
    }
}

/// Inverts `T = G(1 + α - αG)` for the baseline argument, given both `T` and
/// `1 - T`, and returns the baseline quantile. The rationalized quadratic
/// roots are free of cancellation for every α, including α = 0.
pub(crate) fn invert_transmuted(t: f64, t_sf: f64, alpha: f64, baseline: &BaselineModel) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t_sf <= 0.0 {
        return f64::INFINITY;
    }
    if t <= 0.5 {
        let b = 1.0 + alpha;
        let disc = b * b - 4.0 * alpha * t;
        debug_assert!(disc > -1e-12, "negative discriminant {disc}");
        let g = 2.0 * t / (b + disc.max(0.0).sqrt());
        baseline.quantile(g)
    } else {
        let b = 1.0 - alpha;
        let disc = b * b + 4.0 * alpha * t_sf;
        debug_assert!(disc > -1e-12, "negative discriminant {disc}");
        let s = 2.0 * t_sf / (b + disc.max(0.0).sqrt());
        baseline.quantile_sf(s)
    }
}

impl Transmuted {
    pub fn new(alpha: f64, baseline: BaselineModel) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Transmuted { alpha, baseline })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn baseline(&self) -> &BaselineModel {
        &self.baseline
    }

    pub(crate) fn parts(&self, x: f64) -> TgParts {
        TgParts::at(x, self.alpha, &self.baseline)
    }
}

impl ContinuousDistribution for Transmuted {
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 || x == f64::INFINITY {
            return 0.0;
        }
        self.parts(x).pdf()
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x == f64::INFINITY {
            return 1.0;
        }
        self.parts(x).t
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        if x == f64::INFINITY {
            return 0.0;
        }
        self.parts(x).t_sf
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        if x < 0.0 || x == f64::INFINITY {
            return f64::NEG_INFINITY;
        }
        self.parts(x).ln_pdf()
    }

    fn quantile(&self, u: f64) -> f64 {
        invert_transmuted(u, 1.0 - u, self.alpha, &self.baseline)
    }
}

/// Transmuted-G cdf `G(x)[1 + α - αG(x)]`.
pub fn tg_cdf(x: f64, alpha: f64, baseline: &BaselineModel) -> Result<f64> {
    check_x(x)?;
    Ok(Transmuted::new(alpha, *baseline)?.cdf(x))
}

/// Transmuted-G density `g(x)[1 + α - 2αG(x)]`.
pub fn tg_pdf(x: f64, alpha: f64, baseline: &BaselineModel) -> Result<f64> {
    check_x(x)?;
    Ok(Transmuted::new(alpha, *baseline)?.pdf(x))
}

pub fn tg_quantile(u: f64, alpha: f64, baseline: &BaselineModel) -> Result<f64> {
    check_unit_open(u)?;
    Ok(Transmuted::new(alpha, *baseline)?.quantile(u))
}
