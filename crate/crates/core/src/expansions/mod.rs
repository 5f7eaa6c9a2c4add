//! Series representations of the PT-G density and cdf, and the
//! distributional properties derived from them.
//!
//! Every series quantity has a direct quadrature counterpart; the
//! quadrature forms are the reference and the series forms are checked
//! against them.

mod coeffs;
mod power;
mod properties;

pub use coeffs::{
    adaptive_order, cdf_remainder_bound, delta_coeffs, mu_coeffs, series_cdf, series_cdf_eval, series_pdf,
    series_pdf_eval, truncation_tolerance, xi_coeffs, SeriesCoeffs, SeriesEval, SeriesKind, MAX_TERMS,
};
pub use power::{raise_series, PowerSeries};
pub use properties::{
    incomplete_moment, mean_deviation, mean_deviation_direct, mgf, mgf_series, order_stat_pdf, order_stat_psi, pwm,
    raw_moment, raw_moment_quadrature, raw_moment_series, renyi_entropy, renyi_entropy_series, residual_moment,
    residual_moment_series, reversed_residual_moment, shannon_entropy, stress_strength, stress_strength_series,
    DeviationAbout, OrderStatMode,
};
