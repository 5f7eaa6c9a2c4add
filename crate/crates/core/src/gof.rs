//! Information criteria, EDF goodness-of-fit statistics and the TTT transform.

use serde::Serialize;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InformationCriteria {
    pub aic: f64,
    pub bic: f64,
    /// Second-order (small-sample corrected) AIC.
    pub caic: f64,
    pub hqic: f64,
}

pub fn information_criteria(loglik: f64, k: usize, n: usize) -> Result<InformationCriteria> {
    if n <= k + 1 {
        return Err(domain(format!("criteria need n > k + 1, got n = {n}, k = {k}")));
    }
    let (kf, nf) = (k as f64, n as f64);
    let aic = -2.0 * loglik + 2.0 * kf;
    Ok(InformationCriteria {
        aic,
        bic: -2.0 * loglik + kf * nf.ln(),
        caic: aic + 2.0 * kf * (kf + 1.0) / (nf - kf - 1.0),
        hqic: -2.0 * loglik + 2.0 * kf * nf.ln().ln(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

fn sorted_copy(data: &[f64]) -> Result<Vec<f64>> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut v = data.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Asymptotic Kolmogorov tail `P(K > t) = 2 Σ (-1)^{m-1} e^{-2m²t²}`.
pub fn kolmogorov_sf(t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    for m in 1..=100 {
        let m = m as f64;
        let term = (-2.0 * m * m * t * t).exp();
        sum += if m as u32 % 2 == 1 { term } else { -term };
        if term < 1e-300 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// One-sample Kolmogorov-Smirnov test with the asymptotic p-value of `√n D_n`.
pub fn ks_test<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> Result<KsResult> {
    let x = sorted_copy(data)?;
    let n = x.len() as f64;
    let statistic = x
        .iter()
        .enumerate()
        .map(|(i, &xi)| {
            let u = cdf(xi);
            let i = i as f64;
            ((i + 1.0) / n - u).max(u - i / n)
        })
        .fold(0.0, f64::max);
    Ok(KsResult {
        statistic,
        p_value: kolmogorov_sf(n.sqrt() * statistic),
    })
}

fn pit<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> Result<Vec<f64>> {
    let x = sorted_copy(data)?;
    let lo = 1e-12;
    let mut clipped = 0;
    let u = x
        .iter()
        .map(|&xi| {
            let u = cdf(xi);
            if u < lo || u > 1.0 - lo {
                clipped += 1;
            }
            u.clamp(lo, 1.0 - lo)
        })
        .collect();
    if clipped > 0 {
        log::warn!("{clipped} probability integral transform value(s) clipped to [1e-12, 1 - 1e-12]");
    }
    Ok(u)
}

/// Anderson-Darling `A² = -n - (1/n) Σ (2i-1)[ln u_i + ln(1 - u_{n+1-i})]`.
pub fn anderson_darling<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> Result<f64> {
    let u = pit(data, cdf)?;
    let n = u.len();
    let s: f64 = (0..n)
        .map(|i| (2 * i + 1) as f64 * (u[i].ln() + (-u[n - 1 - i]).ln_1p()))
        .sum();
    Ok(-(n as f64) - s / n as f64)
}

/// Cramér-von Mises `W² = Σ (u_i - (2i-1)/(2n))² + 1/(12n)`.
pub fn cramer_von_mises<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> Result<f64> {
    let u = pit(data, cdf)?;
    let n = u.len() as f64;
    let s: f64 = u
        .iter()
        .enumerate()
        .map(|(i, ui)| (ui - (2 * i + 1) as f64 / (2.0 * n)).powi(2))
        .sum();
    Ok(s + 1.0 / (12.0 * n))
}

/// Scaled total time on test: `(i/n, [Σ_{j≤i} x_(j) + (n-i) x_(i)] / Σ x)` for `i = 1..=n`.
pub fn ttt_points(data: &[f64]) -> Result<Vec<(f64, f64)>> {
    if data.len() < 2 {
        return Err(domain("the TTT transform needs at least two observations"));
    }
    let x = sorted_copy(data)?;
    let n = x.len();
    let total: f64 = x.iter().sum();
    let mut partial = 0.0;
    let mut points = Vec::with_capacity(n);
    for (i, &xi) in x.iter().enumerate() {
        partial += xi;
        let k = i + 1;
        let t = if k == n { 1.0 } else { (partial + (n - k) as f64 * xi) / total };
        points.push((k as f64 / n as f64, t));
    }
    Ok(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GofReport {
    pub k: usize,
    pub n: usize,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub caic: f64,
    pub hqic: f64,
    pub ks: f64,
    pub ks_pvalue: f64,
    pub ad: f64,
    pub cvm: f64,
}

pub fn gof_report<F: Fn(f64) -> f64>(data: &[f64], loglik: f64, k: usize, cdf: F) -> Result<GofReport> {
    let ic = information_criteria(loglik, k, data.len())?;
    let ks = ks_test(data, &cdf)?;
    Ok(GofReport {
        k,
        n: data.len(),
        loglik,
        aic: ic.aic,
        bic: ic.bic,
        caic: ic.caic,
        hqic: ic.hqic,
        ks: ks.statistic,
        ks_pvalue: ks.p_value,
        ad: anderson_darling(data, &cdf)?,
        cvm: cramer_von_mises(data, &cdf)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_criteria() {
        let ic = information_criteria(-98.045, 3, 72).unwrap();
        assert!((ic.aic - 202.09).abs() < 0.01);
        assert!((ic.bic - 208.92).abs() < 0.01);
        assert!((ic.caic - 202.44).abs() < 0.01);
        assert!((ic.hqic - 204.81).abs() < 0.01);
        let ic = information_criteria(-15.42, 3, 20).unwrap();
        assert!((ic.aic - 36.84).abs() < 0.02);
        assert!((ic.bic - 39.81).abs() < 0.02);
        assert!((ic.caic - 38.34).abs() < 0.02);
        assert!((ic.hqic - 37.38).abs() < 0.05);
    }

    #[test]
    fn degenerate_criteria() {
        let ic = information_criteria(0.0, 0, 5).unwrap();
        assert_eq!((ic.aic, ic.bic, ic.caic, ic.hqic), (0.0, 0.0, 0.0, 0.0));
        assert!(information_criteria(-1.0, 3, 4).is_err());
    }

    #[test]
    fn cvm_of_uniform_midpoints() {
        let n = 25;
        let data: Vec<f64> = (0..n).map(|i| (2 * i + 1) as f64 / (2 * n) as f64).collect();
        let w = cramer_von_mises(&data, |x| x).unwrap();
        assert!((w - 1.0 / (12.0 * n as f64)).abs() < 1e-15);
    }

    #[test]
    fn ks_at_plotting_positions() {
        let n = 9;
        let data: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
        let r = ks_test(&data, |x| x).unwrap();
        assert!((r.statistic - 1.0 / (n + 1) as f64).abs() < 1e-15);
    }

    #[test]
    fn kolmogorov_tail_values() {
        assert!((kolmogorov_sf(1.36) - 0.0494).abs() < 1e-3);
        assert_eq!(kolmogorov_sf(0.0), 1.0);
        assert!(kolmogorov_sf(5.0) < 1e-20);
    }

    #[test]
    fn ttt_shapes() {
        let t = ttt_points(&[2.0; 6]).unwrap();
        assert!(t.iter().all(|&(_, v)| (v - 1.0).abs() < 1e-15));
        let t = ttt_points(&[0.3, 1.7, 0.2, 4.0]).unwrap();
        assert_eq!(t.last().copied(), Some((1.0, 1.0)));
        assert!(t.windows(2).all(|w| w[1].1 >= w[0].1));
        assert!(ttt_points(&[1.0]).is_err());
    }
}
