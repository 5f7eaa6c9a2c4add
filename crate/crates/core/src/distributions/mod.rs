//! Baseline, transmuted-G and Poisson transmuted-G distributions.
//!
//! The PT-G cdf is `F(x) = (1 - e^{-βT(x)}) / (1 - e^{-β})` where
//! `T(x) = G(x)[1 + α - αG(x)]` is the transmuted baseline. Every function
//! is evaluated together with its complement so both tails stay accurate,
//! and β of either sign is supported.

mod baseline;
mod ptg;
mod transmuted;

pub use baseline::{BaselineFamily, BaselineModel};
pub use ptg::{
    ptg_cdf, ptg_hrf, ptg_log_pdf, ptg_pdf, ptg_quantile, ptg_sample, sample, PtgParams, DEFAULT_BETA_FLOOR,
};
pub use transmuted::{tg_cdf, tg_pdf, tg_quantile, Transmuted};

pub(crate) use ptg::ln_abs_one_minus_exp_neg;
pub(crate) use transmuted::TgParts;

/// A univariate continuous distribution on (0, ∞).
pub trait ContinuousDistribution {
    fn pdf(&self, x: f64) -> f64;

    fn cdf(&self, x: f64) -> f64;

    fn sf(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        self.pdf(x).ln()
    }

    /// Inverse cdf for `u ∈ (0, 1)`.
    fn quantile(&self, u: f64) -> f64;

    fn hazard(&self, x: f64) -> f64 {
        self.pdf(x) / self.sf(x)
    }
}

impl ContinuousDistribution for BaselineModel {
    fn pdf(&self, x: f64) -> f64 {
        BaselineModel::pdf(self, x)
    }

    fn cdf(&self, x: f64) -> f64 {
        BaselineModel::cdf(self, x)
    }

    fn sf(&self, x: f64) -> f64 {
        BaselineModel::sf(self, x)
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        BaselineModel::ln_pdf(self, x)
    }

    fn quantile(&self, u: f64) -> f64 {
        BaselineModel::quantile(self, u)
    }
}
