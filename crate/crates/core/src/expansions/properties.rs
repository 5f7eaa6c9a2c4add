use serde::{Deserialize, Serialize};

use super::coeffs::{adaptive_order, delta_coeffs, mu_coeffs, xi_coeffs};
use super::power::{raise_series, PowerSeries};
use crate::distributions::{ContinuousDistribution, PtgParams, TgParts, Transmuted};
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_to_infinity, integrate_with_breaks, Tolerance};

const BREAK_PROBS: [f64; 11] = [1e-4, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 0.999_999, 0.999_999_999];

// Above this the alternating δ series loses more than six digits to cancellation.
const MAX_CANCELLATION: f64 = 1e6;

fn breaks_of<D: ContinuousDistribution + ?Sized>(d: &D) -> Vec<f64> {
    BREAK_PROBS
        .iter()
        .map(|&u| d.quantile(u))
        .filter(|x| x.is_finite() && *x > 0.0)
        .collect()
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn over_support<F: Fn(f64) -> f64>(f: F, breaks: &[f64]) -> Result<f64> {
    Ok(integrate_to_infinity(f, 0.0, breaks, tol())?.value)
}

fn over_range<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64]) -> Result<f64> {
    Ok(integrate_with_breaks(f, a, b, breaks, tol())?.value)
}

/// `x^s` that is 1 at `s = 0` even for `x = 0`.
fn pow_u(x: f64, s: u32) -> f64 {
    if s == 0 {
        1.0
    } else {
        x.powi(s as i32)
    }
}

/// `Σ|δ_i|/(i+1)`, the magnification of rounding error in the δ series.
fn cancellation(beta: f64) -> f64 {
    if beta > 0.0 {
        beta.exp()
    } else {
        1.0
    }
}

/// Probability weighted moment `Γ_{p,q,r} = ∫ x^p F^q (1-F)^r f dx` of the
/// transmuted baseline underlying `dist`.
pub fn pwm(p_exp: u32, q_exp: u32, r_exp: u32, dist: &PtgParams) -> Result<f64> {
    tg_pwm(p_exp, q_exp, r_exp, &dist.transmuted())
}

pub(crate) fn tg_pwm(p_exp: u32, q_exp: u32, r_exp: u32, tg: &Transmuted) -> Result<f64> {
    let alpha = tg.alpha();
    let base = *tg.baseline();
    let f = move |x: f64| {
        let parts = TgParts::at(x, alpha, &base);
        let w = pow_u(parts.t, q_exp) * pow_u(parts.t_sf, r_exp);
        if w == 0.0 {
            return 0.0;
        }
        pow_u(x, p_exp) * w * parts.pdf()
    };
    over_support(f, &breaks_of(tg))
}

/// `E[X^s]` by direct quadrature of `x^s f(x)`.
pub fn raw_moment_quadrature(s: u32, p: &PtgParams) -> Result<f64> {
    let p = *p;
    over_support(move |x| pow_u(x, s) * p.pdf(x), &breaks_of(&p))
}

/// `E[X^s]` from the linear representation `Σ δ_i Γ_{s,i,0}`, each `Γ` by quadrature.
pub fn raw_moment_series(s: u32, p: &PtgParams, n_max: usize) -> Result<f64> {
    let d = delta_coeffs(p.beta(), n_max)?;
    let tg = p.transmuted();
    let mut total = 0.0;
    for (i, c) in d.values.iter().enumerate() {
        if *c == 0.0 {
            continue;
        }
        total += c * tg_pwm(s, i as u32, 0, &tg)?;
    }
    Ok(total)
}

/// `E[X^s]`.
///
/// Evaluated through the δ series when that is well conditioned, otherwise
/// by direct quadrature.
pub fn raw_moment(s: u32, p: &PtgParams) -> Result<f64> {
    if s == 0 {
        return Err(domain("moment order must be positive"));
    }
    if cancellation(p.beta()) > MAX_CANCELLATION {
        log::warn!("beta = {} makes the moment series ill-conditioned; using quadrature", p.beta());
        return raw_moment_quadrature(s, p);
    }
    raw_moment_series(s, p, adaptive_order(p.beta()))
}

fn check_mgf_argument(s: f64, p: &PtgParams) -> Result<()> {
    let bound = p.baseline().exponential_moment_bound();
    if !s.is_finite() || (s > 0.0 && s >= bound) {
        return Err(Error::Divergent(format!(
            "E[exp(sX)] diverges for s = {s}; need s < {bound}"
        )));
    }
    Ok(())
}

/// Moment generating function `E[e^{sX}]`.
pub fn mgf(s: f64, p: &PtgParams) -> Result<f64> {
    check_mgf_argument(s, p)?;
    if s == 0.0 {
        return Ok(1.0);
    }
    let p = *p;
    over_support(move |x| (s * x + p.ln_pdf(x)).exp(), &breaks_of(&p))
}

/// MGF as `Σ δ'_i M_{i+1}(s)`, where `M_{k}` is the MGF of the exponentiated
/// transmuted baseline with power `k`.
pub fn mgf_series(s: f64, p: &PtgParams, n_max: usize) -> Result<f64> {
    check_mgf_argument(s, p)?;
    let d = delta_coeffs(p.beta(), n_max)?;
    let (alpha, base) = (p.alpha(), *p.baseline());
    let breaks = breaks_of(&p.transmuted());
    let mut total = 0.0;
    for (i, c) in d.values.iter().enumerate() {
        let k = (i + 1) as f64;
        let exp_tg_mgf = over_support(
            move |x| {
                let parts = TgParts::at(x, alpha, &base);
                if parts.t == 0.0 || parts.tilt <= 0.0 {
                    return 0.0;
                }
                (s * x + k.ln() + (k - 1.0) * parts.t.ln() + parts.ln_pdf()).exp()
            },
            &breaks,
        )?;
        total += c / k * exp_tg_mgf;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderStatMode {
    Direct,
    Series,
}

fn check_order(r: u32, n: u32) -> Result<()> {
    if r == 0 || r > n {
        return Err(domain(format!("order statistic needs 1 <= r <= n, got r = {r}, n = {n}")));
    }
    Ok(())
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `n! / ((r-1)! (n-r)!)`.
fn order_constant(r: u32, n: u32) -> f64 {
    n as f64 * binomial(n - 1, r - 1)
}

/// Coefficients `ψ_k` with `f_{r:n}(x) = g^TG(x) Σ_k ψ_k T(x)^k`.
///
/// Built by expanding `(1-F)^{n-r}` binomially and raising the cdf series
/// `F = T Σ_j ξ_{j+1} T^j` to each power.
pub fn order_stat_psi(r: u32, n: u32, beta: f64, n_max: usize) -> Result<PowerSeries> {
    check_order(r, n)?;
    let delta = delta_coeffs(beta, n_max)?.values;
    let xi = xi_coeffs(beta, n_max + 1)?.values;
    let shifted = PowerSeries::new(xi[1..].to_vec());
    let c = order_constant(r, n);
    let mut psi = vec![0.0; n_max + 1];
    for k in 0..=(n - r) {
        let m = (r - 1 + k) as usize;
        let weight = if k % 2 == 0 { c } else { -c } * binomial(n - r, k);
        let mut fpow = vec![0.0; n_max + 1];
        if m == 0 {
            fpow[0] = 1.0;
        } else if m <= n_max {
            let raised = raise_series(&shifted, m as u32)?;
            fpow[m..].copy_from_slice(&raised.coeffs()[..=n_max - m]);
        }
        for (i, di) in delta.iter().enumerate() {
            for (j, fj) in fpow[..=n_max - i].iter().enumerate() {
                psi[i + j] += weight * di * fj;
            }
        }
    }
    Ok(PowerSeries::new(psi))
}

/// Density of the r-th order statistic in a sample of size n.
pub fn order_stat_pdf(x: f64, r: u32, n: u32, p: &PtgParams, mode: OrderStatMode) -> Result<f64> {
    check_order(r, n)?;
    if x < 0.0 {
        return Err(domain(format!("x must be nonnegative, got {x}")));
    }
    match mode {
        OrderStatMode::Direct => {
            let f = p.pdf(x);
            if r == 1 && n == 1 {
                return Ok(f);
            }
            Ok(order_constant(r, n) * f * p.cdf(x).powi(r as i32 - 1) * p.sf(x).powi((n - r) as i32))
        }
        OrderStatMode::Series => {
            let n_max = adaptive_order(p.beta() * n as f64);
            let psi = order_stat_psi(r, n, p.beta(), n_max)?;
            let parts = TgParts::at(x, p.alpha(), p.baseline());
            Ok(parts.pdf() * psi.evaluate(parts.t))
        }
    }
}

fn check_same_family(p1: &PtgParams, p2: &PtgParams) -> Result<()> {
    if p1.baseline().family() != p2.baseline().family() {
        return Err(domain("stress-strength needs both models on the same baseline family"));
    }
    Ok(())
}

fn joint_breaks(p1: &PtgParams, p2: &PtgParams) -> Vec<f64> {
    let mut b = breaks_of(p1);
    b.extend(breaks_of(p2));
    b
}

/// Reliability `R = P(X₂ < X₁) = ∫ f₁ F₂ dx`.
pub fn stress_strength(p1: &PtgParams, p2: &PtgParams) -> Result<f64> {
    check_same_family(p1, p2)?;
    let (a, b) = (*p1, *p2);
    let r = over_support(move |x| a.pdf(x) * b.cdf(x), &joint_breaks(p1, p2))?;
    Ok(r.clamp(0.0, 1.0))
}

/// `R` from the double series `Σ_i Σ_j δ_i⁽¹⁾ ξ_j⁽²⁾ ∫ g₁^TG T₁^i T₂^j dx`.
pub fn stress_strength_series(p1: &PtgParams, p2: &PtgParams, n_max: usize) -> Result<f64> {
    check_same_family(p1, p2)?;
    let d = delta_coeffs(p1.beta(), n_max)?.values;
    let xi = xi_coeffs(p2.beta(), n_max)?.values;
    let breaks = joint_breaks(p1, p2);
    let (a1, b1, a2, b2) = (p1.alpha(), *p1.baseline(), p2.alpha(), *p2.baseline());
    let mut total = 0.0;
    for (i, di) in d.iter().enumerate() {
        for (j, xj) in xi.iter().enumerate().skip(1) {
            let (i, j) = (i as i32, j as i32);
            let integral = over_support(
                move |x| {
                    let t1 = TgParts::at(x, a1, &b1);
                    let t2 = TgParts::at(x, a2, &b2);
                    t1.pdf() * t1.t.powi(i) * t2.t.powi(j)
                },
                &breaks,
            )?;
            total += di * xj * integral;
        }
    }
    Ok(total)
}

/// n-th moment of the residual life, `E[(X - t)^n | X > t]`.
pub fn residual_moment(n: u32, t: f64, p: &PtgParams) -> Result<f64> {
    if n == 0 {
        return Err(domain("residual moment order must be positive"));
    }
    if !(t >= 0.0) {
        return Err(domain(format!("t must be nonnegative, got {t}")));
    }
    if p.cdf(t) >= 1.0 - 1e-15 {
        return Err(domain(format!("residual life undefined: cdf({t}) is 1 to working precision")));
    }
    let q = *p;
    let integral = integrate_to_infinity(move |x| pow_u(x - t, n) * q.pdf(x), t, &breaks_of(p), tol())?.value;
    Ok(integral / p.sf(t))
}

/// Residual moment through the binomial expansion of `(x - t)^n` and the δ series.
pub fn residual_moment_series(n: u32, t: f64, p: &PtgParams, n_max: usize) -> Result<f64> {
    if n == 0 {
        return Err(domain("residual moment order must be positive"));
    }
    if p.cdf(t) >= 1.0 - 1e-15 {
        return Err(domain(format!("residual life undefined: cdf({t}) is 1 to working precision")));
    }
    let d = delta_coeffs(p.beta(), n_max)?.values;
    let (alpha, base) = (p.alpha(), *p.baseline());
    let breaks = breaks_of(&p.transmuted());
    let mut total = 0.0;
    for r in 0..=n {
        let outer = binomial(n, r) * pow_u(-t, n - r);
        for (i, di) in d.iter().enumerate() {
            let i = i as i32;
            let tail = integrate_to_infinity(
                move |x| {
                    let parts = TgParts::at(x, alpha, &base);
                    pow_u(x, r) * parts.t.powi(i) * parts.pdf()
                },
                t,
                &breaks,
                tol(),
            )?
            .value;
            total += outer * di * tail;
        }
    }
    Ok(total / p.sf(t))
}

/// n-th moment of the reversed residual life, `E[(t - X)^n | X <= t]`.
pub fn reversed_residual_moment(n: u32, t: f64, p: &PtgParams) -> Result<f64> {
    if n == 0 {
        return Err(domain("reversed residual moment order must be positive"));
    }
    let ft = p.cdf(t);
    if !(ft > 1e-300) {
        return Err(domain(format!("reversed residual life undefined: cdf({t}) is 0")));
    }
    let q = *p;
    let integral = over_range(move |x| pow_u(t - x, n) * q.pdf(x), 0.0, t, &breaks_of(p))?;
    Ok(integral / ft)
}

fn check_renyi_order(delta: f64) -> Result<()> {
    if !(delta > 0.0) || delta == 1.0 || !delta.is_finite() {
        return Err(domain(format!("Renyi order must be positive and != 1, got {delta}")));
    }
    Ok(())
}

/// Rényi entropy `(1-δ)^{-1} log ∫ f^δ dx`.
pub fn renyi_entropy(delta: f64, p: &PtgParams) -> Result<f64> {
    check_renyi_order(delta)?;
    let q = *p;
    let integral = over_support(move |x| (delta * q.ln_pdf(x)).exp(), &breaks_of(p))?;
    Ok(integral.ln() / (1.0 - delta))
}

/// Rényi entropy with `f^δ = (g^TG)^δ Σ μ_i T^i`, each term integrated by quadrature.
pub fn renyi_entropy_series(delta: f64, p: &PtgParams, n_max: usize) -> Result<f64> {
    check_renyi_order(delta)?;
    let mu = mu_coeffs(p.beta(), delta, n_max)?.values;
    let (alpha, base) = (p.alpha(), *p.baseline());
    let breaks = breaks_of(&p.transmuted());
    let mut total = 0.0;
    for (i, m) in mu.iter().enumerate() {
        let i = i as f64;
        let term = over_support(
            move |x| {
                let parts = TgParts::at(x, alpha, &base);
                if parts.tilt <= 0.0 || (i > 0.0 && parts.t == 0.0) {
                    return 0.0;
                }
                let ln_t = if i > 0.0 { i * parts.t.ln() } else { 0.0 };
                (delta * parts.ln_pdf() + ln_t).exp()
            },
            &breaks,
        )?;
        total += m * term;
    }
    Ok(total.ln() / (1.0 - delta))
}

/// Shannon entropy `-∫ f log f dx`.
pub fn shannon_entropy(p: &PtgParams) -> Result<f64> {
    let q = *p;
    over_support(
        move |x| {
            let lf = q.ln_pdf(x);
            if lf == f64::NEG_INFINITY {
                0.0
            } else {
                -lf.exp() * lf
            }
        },
        &breaks_of(p),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeviationAbout {
    Mean,
    Median,
}

/// First incomplete moment `Φ(t) = ∫₀^t x f(x) dx`.
pub fn incomplete_moment(t: f64, p: &PtgParams) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(domain(format!("t must be nonnegative, got {t}")));
    }
    let q = *p;
    over_range(move |x| x * q.pdf(x), 0.0, t, &breaks_of(p))
}

/// Mean deviation about the mean, `2μF(μ) - 2Φ(μ)`, or about the median, `μ - 2Φ(M)`.
pub fn mean_deviation(about: DeviationAbout, p: &PtgParams) -> Result<f64> {
    let mu = raw_moment(1, p)?;
    let dev = match about {
        DeviationAbout::Mean => 2.0 * mu * p.cdf(mu) - 2.0 * incomplete_moment(mu, p)?,
        DeviationAbout::Median => mu - 2.0 * incomplete_moment(p.quantile(0.5), p)?,
    };
    Ok(dev.max(0.0))
}

/// `E|X - c|` for the mean or median by direct quadrature.
pub fn mean_deviation_direct(about: DeviationAbout, p: &PtgParams) -> Result<f64> {
    let c = match about {
        DeviationAbout::Mean => raw_moment_quadrature(1, p)?,
        DeviationAbout::Median => p.quantile(0.5),
    };
    let mut breaks = breaks_of(p);
    breaks.push(c);
    let q = *p;
    over_support(move |x| (x - c).abs() * q.pdf(x), &breaks)
}
