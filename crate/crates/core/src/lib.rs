//! Poisson transmuted-G (PT-G) distributions.
//!
//! The family compounds a zero-truncated Poisson tilt with a quadratic rank
//! transmutation of a baseline cdf `G`:
//!
//! ```text
//! F(x) = (1 - exp(-β G(x)[1 + α - αG(x)])) / (1 - e^{-β}),   |α| ≤ 1, β ≠ 0
//! ```
//!
//! Exact evaluation and sampling live in [`distributions`], the series form
//! and the quantities built on it in [`expansions`], maximum likelihood in
//! [`mle`], model comparison in [`gof`], [`competitors`] and [`models`], and
//! the two reference data sets in [`data`]. [`reproduce`] refits those data
//! sets against the values in [`published`]; [`cli`] backs the `ptgfit` binary.
//!
//! ```
//! use ptgfit::{ContinuousDistribution, PtgParams};
//!
//! let p = PtgParams::exponential(0.5, 2.0, 1.0).unwrap();
//! let x = p.quantile(0.9);
//! assert!((p.cdf(x) - 0.9).abs() < 1e-12);
//! ```

pub mod cli;
pub mod competitors;
pub mod data;
pub mod distributions;
pub mod error;
pub mod expansions;
pub mod gof;
pub mod mle;
pub mod models;
mod optimize;
pub mod published;
pub mod quadrature;
pub mod reproduce;
pub use distributions::{BaselineFamily, BaselineModel, ContinuousDistribution, PtgParams};
pub use error::{Error, Result};
