use serde::Serialize;

use crate::distributions::{ln_abs_one_minus_exp_neg, PtgParams, TgParts};
use crate::error::{domain, Result};

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 200;

/// Which expansion a coefficient vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SeriesKind {
    /// Density: `f = g^TG Σ δ_i T^i`.
    Delta,
    /// Distribution function: `F = Σ ξ_j T^j`, with `ξ_0 = 0`.
    Xi,
    /// Powered density: `f^δ = (g^TG)^δ Σ μ_i T^i`.
    Mu { delta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCoeffs {
    pub kind: SeriesKind,
    pub beta: f64,
    pub values: Vec<f64>,
    pub truncation_n: usize,
}

impl SeriesCoeffs {
    /// Horner evaluation at `t`.
    pub fn evaluate(&self, t: f64) -> f64 {
        self.values.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// `Σ |c_i t^i|`, the scale that bounds rounding error in [`evaluate`](Self::evaluate).
    pub fn abs_sum(&self, t: f64) -> f64 {
        let t = t.abs();
        self.values.iter().rev().fold(0.0, |acc, &c| acc * t + c.abs())
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta == 0.0 || !beta.is_finite() {
        Err(domain(format!("series coefficients need a finite nonzero beta, got {beta}")))
    } else {
        Ok(())
    }
}

/// `β / (1 - e^{-β})`, positive for either sign of β.
fn leading(beta: f64) -> f64 {
    (beta.abs().ln() - ln_abs_one_minus_exp_neg(beta)).exp()
}

/// `v_i = first · ratio^i / i!`, built by recursion.
fn recurse(first: f64, ratio: f64, len: usize) -> Vec<f64> {
    let mut values = Vec::with_capacity(len);
    let mut v = first;
    for i in 0..len {
        if i > 0 {
            v *= ratio / i as f64;
        }
        values.push(v);
    }
    values
}

/// `δ_i = (-1)^i β^{i+1} / ((1 - e^{-β}) i!)`, for `i = 0..=n_max`.
pub fn delta_coeffs(beta: f64, n_max: usize) -> Result<SeriesCoeffs> {
    check_beta(beta)?;
    Ok(SeriesCoeffs {
        kind: SeriesKind::Delta,
        beta,
        values: recurse(leading(beta), -beta, n_max + 1),
        truncation_n: n_max,
    })
}

/// `ξ_j = (-1)^{j+1} β^j / ((1 - e^{-β}) j!)` for `j ≥ 1`, and `ξ_0 = 0`.
pub fn xi_coeffs(beta: f64, n_max: usize) -> Result<SeriesCoeffs> {
    check_beta(beta)?;
    // ξ_j = δ_{j-1} / j
    let mut values = vec![0.0];
    values.extend(
        recurse(leading(beta), -beta, n_max)
            .into_iter()
            .enumerate()
            .map(|(i, d)| d / (i + 1) as f64),
    );
    Ok(SeriesCoeffs {
        kind: SeriesKind::Xi,
        beta,
        values,
        truncation_n: n_max,
    })
}

/// `μ_i = (β / (1 - e^{-β}))^δ (-δβ)^i / i!`: the coefficients of
/// `f^δ / (g^TG)^δ` as a power series in `T`.
pub fn mu_coeffs(beta: f64, delta: f64, n_max: usize) -> Result<SeriesCoeffs> {
    check_beta(beta)?;
    if !(delta > 0.0) || delta == 1.0 {
        return Err(domain(format!("Renyi order must be positive and != 1, got {delta}")));
    }
    Ok(SeriesCoeffs {
        kind: SeriesKind::Mu { delta },
        beta,
        values: recurse(leading(beta).powf(delta), -delta * beta, n_max + 1),
        truncation_n: n_max,
    })
}

/// `|z|^{N+1}/(N+1)!` times a tail factor: a bound on the remainder of the
/// exponential series `Σ_{i>N} z^i / i!`, returned as a logarithm.
fn ln_exp_series_remainder(z: f64, n: usize) -> f64 {
    if z == 0.0 {
        return f64::NEG_INFINITY;
    }
    let k = (n + 1) as f64;
    let ln_first = k * z.abs().ln() - ln_factorial(n + 1);
    if z < 0.0 {
        // alternating with decreasing terms once N + 1 > |z|; Lagrange otherwise
        ln_first
    } else if z < k + 1.0 {
        ln_first - (1.0 - z / (k + 1.0)).ln()
    } else {
        ln_first + z
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Truncation tolerance `|β|^{N+1} / (N+1)! / |1 - e^{-β}|` used for warnings.
pub fn truncation_tolerance(beta: f64, n_max: usize) -> f64 {
    let k = (n_max + 1) as f64;
    (k * beta.abs().ln() - ln_factorial(n_max + 1) - ln_abs_one_minus_exp_neg(beta)).exp()
}

/// Bound on `|F - Σ_{j≤N} ξ_j T^j|` uniformly over `T ∈ [0, 1]`.
pub fn cdf_remainder_bound(beta: f64, n_max: usize) -> f64 {
    (ln_exp_series_remainder(-beta, n_max) - ln_abs_one_minus_exp_neg(beta)).exp()
}

/// Smallest truncation order whose uniform cdf remainder is below `1e-15`,
/// capped at [`MAX_TERMS`].
pub fn adaptive_order(beta: f64) -> usize {
    (1..MAX_TERMS)
        .find(|&n| cdf_remainder_bound(beta, n) < 1e-15)
        .unwrap_or(MAX_TERMS)
}

fn warn_truncation(beta: f64, n_max: usize) {
    let tol = truncation_tolerance(beta, n_max);
    if tol > 1e-8 {
        log::warn!("series truncated at n_max = {n_max} for beta = {beta}: tail bound {tol:.3e}");
    }
}

/// Truncated series value with an error bound covering truncation and rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesEval {
    pub value: f64,
    pub bound: f64,
}

const ROUNDING: f64 = 8.0 * f64::EPSILON;

pub fn series_pdf_eval(x: f64, p: &PtgParams, n_max: usize) -> Result<SeriesEval> {
    if x < 0.0 {
        return Err(domain(format!("x must be nonnegative, got {x}")));
    }
    warn_truncation(p.beta(), n_max);
    let parts = TgParts::at(x, p.alpha(), p.baseline());
    let g_tg = parts.pdf();
    let coeffs = delta_coeffs(p.beta(), n_max)?;
    let value = g_tg * coeffs.evaluate(parts.t);
    let tail = leading(p.beta()) * g_tg * ln_exp_series_remainder(-p.beta() * parts.t, n_max).exp();
    let rounding = ROUNDING * (n_max + 1) as f64 * g_tg * coeffs.abs_sum(parts.t);
    Ok(SeriesEval { value, bound: tail + rounding })
}

pub fn series_cdf_eval(x: f64, p: &PtgParams, n_max: usize) -> Result<SeriesEval> {
    if x < 0.0 {
        return Err(domain(format!("x must be nonnegative, got {x}")));
    }
    warn_truncation(p.beta(), n_max);
    let parts = TgParts::at(x, p.alpha(), p.baseline());
    let coeffs = xi_coeffs(p.beta(), n_max)?;
    let value = coeffs.evaluate(parts.t);
    let tail = (ln_exp_series_remainder(-p.beta() * parts.t, n_max) - ln_abs_one_minus_exp_neg(p.beta())).exp();
    let rounding = ROUNDING * (n_max + 1) as f64 * coeffs.abs_sum(parts.t);
    Ok(SeriesEval { value, bound: tail + rounding })
}

/// Density from the truncated linear representation `g^TG Σ δ_i T^i`.
pub fn series_pdf(x: f64, p: &PtgParams, n_max: usize) -> Result<f64> {
    Ok(series_pdf_eval(x, p, n_max)?.value)
}

/// Distribution function from the truncated series `Σ ξ_j T^j`.
pub fn series_cdf(x: f64, p: &PtgParams, n_max: usize) -> Result<f64> {
    Ok(series_cdf_eval(x, p, n_max)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::ContinuousDistribution;

    #[test]
    fn delta_leading_term() {
        let c = delta_coeffs(1.0, 5).unwrap();
        let expected = 1.0 / (1.0 - (-1f64).exp());
        assert!((c.values[0] - expected).abs() < 1e-15);
        assert!((c.values[0] - 1.5820).abs() < 1e-4);
        assert_eq!(c.values.len(), 6);
    }

    #[test]
    fn delta_matches_closed_form_terms() {
        let beta: f64 = -2.5;
        let c = delta_coeffs(beta, 10).unwrap();
        let mut fact = 1.0;
        for (i, v) in c.values.iter().enumerate() {
            if i > 0 {
                fact *= i as f64;
            }
            let expected = (-1f64).powi(i as i32) * beta.powi(i as i32 + 1) / ((1.0 - (-beta).exp()) * fact);
            assert!((v - expected).abs() <= 1e-14 * expected.abs());
        }
    }

    #[test]
    fn normalization_identities() {
        for &beta in &[-10.0, -6.6, -2.0, -0.5, 1e-3, 0.5, 1.0, 2.0, 6.6, 10.0] {
            let d = delta_coeffs(beta, 200).unwrap();
            let s: f64 = d.values.iter().enumerate().map(|(i, v)| v / (i + 1) as f64).sum();
            assert!((s - 1.0).abs() < 1e-12, "delta beta={beta} sum={s}");
            let x = xi_coeffs(beta, 200).unwrap();
            let s: f64 = x.values.iter().sum();
            assert!((s - 1.0).abs() < 1e-12, "xi beta={beta} sum={s}");
        }
    }

    #[test]
    fn xi_first_coefficient_and_zero() {
        let x = xi_coeffs(1.0, 4).unwrap();
        assert_eq!(x.values[0], 0.0);
        assert!((x.values[1] - 1.0 / (1.0 - (-1f64).exp())).abs() < 1e-15);
        assert_eq!(x.evaluate(0.0), 0.0);
    }

    #[test]
    fn zero_beta_rejected() {
        assert!(delta_coeffs(0.0, 3).is_err());
        assert!(xi_coeffs(0.0, 3).is_err());
        assert!(mu_coeffs(1.0, 1.0, 3).is_err());
    }

    #[test]
    fn terms_eventually_decay() {
        let c = delta_coeffs(6.6, 60).unwrap();
        for i in 10..60 {
            let r = (c.values[i + 1] / c.values[i]).abs();
            assert!((r - 6.6 / (i + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn single_term_truncation() {
        let p = PtgParams::exponential(0.0, 1.5, 1.0).unwrap();
        let x = 0.7;
        let expected = 1.5 * p.baseline().pdf(x) / (1.0 - (-1.5f64).exp());
        assert!((series_pdf(x, &p, 0).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn series_matches_closed_form() {
        let p = PtgParams::exponential(0.5, 2.0, 1.0).unwrap();
        assert!((series_pdf(1.0, &p, 60).unwrap() - p.pdf(1.0)).abs() < 1e-12);
        let p = PtgParams::exponential(0.813, -6.587, 0.841).unwrap();
        assert!((series_pdf(1.56, &p, 100).unwrap() - p.pdf(1.56)).abs() < 1e-10);
        assert!((series_cdf(1.56, &p, 100).unwrap() - p.cdf(1.56)).abs() < 1e-10);
    }

    #[test]
    fn bound_covers_error_at_low_order() {
        let p = PtgParams::exponential(-0.3, 2.0, 1.0).unwrap();
        for n in [2, 5, 10] {
            for &x in &[0.2, 1.0, 3.0] {
                let e = series_pdf_eval(x, &p, n).unwrap();
                assert!((e.value - p.pdf(x)).abs() <= e.bound, "n={n} x={x}");
                let e = series_cdf_eval(x, &p, n).unwrap();
                assert!((e.value - p.cdf(x)).abs() <= e.bound, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn adaptive_order_grows_with_beta() {
        assert!(adaptive_order(0.5) < adaptive_order(6.6));
        assert!(cdf_remainder_bound(6.6, adaptive_order(6.6)) < 1e-15);
        assert_eq!(adaptive_order(1e4), MAX_TERMS);
    }
}
