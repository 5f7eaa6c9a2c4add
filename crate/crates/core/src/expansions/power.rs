use serde::Serialize;

use crate::error::{domain, Result};

/// Coefficients `a_0, a_1, ...` of a formal power series `Σ a_i u^i`,
/// truncated to the stored length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn evaluate(&self, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
    }

    pub fn raise(&self, n: u32) -> Result<PowerSeries> {
        raise_series(self, n)
    }
}

/// Coefficients `c_{n,i}` of `(Σ a_i u^i)^n`, up to the input's length.
///
/// Uses `c_{n,0} = a_0^n` and
/// `c_{n,i} = (i a_0)^{-1} Σ_{m=1}^{i} [m(n+1) - i] a_m c_{n,i-m}`.
pub fn raise_series(series: &PowerSeries, n: u32) -> Result<PowerSeries> {
    if n == 0 {
        return Err(domain("power must be at least 1"));
    }
    let a = series.coeffs();
    let Some(&a0) = a.first() else {
        return Ok(PowerSeries::new(Vec::new()));
    };
    if a0 == 0.0 {
        return Err(domain("leading coefficient a_0 must be nonzero"));
    }
    let n = n as f64;
    let mut c = Vec::with_capacity(a.len());
    c.push(a0.powf(n));
    for i in 1..a.len() {
        let s: f64 = (1..=i)
            .map(|m| (m as f64 * (n + 1.0) - i as f64) * a[m] * c[i - m])
            .sum();
        c.push(s / (i as f64 * a0));
    }
    Ok(PowerSeries::new(c))
}
