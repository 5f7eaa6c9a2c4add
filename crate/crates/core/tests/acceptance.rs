//! Acceptance checks. Each test prints one PASS/FAIL line and fails when any
//! of its items misses the pinned tolerance.

use ptgfit::data::{describe, embedded_dataset, validate_embedded, DatasetId};
use ptgfit::distributions::{ptg_sample, sample};
use ptgfit::expansions::{
    adaptive_order, delta_coeffs, order_stat_pdf, raise_series, raw_moment, renyi_entropy, residual_moment,
    series_cdf_eval, series_pdf_eval, stress_strength, xi_coeffs, OrderStatMode, PowerSeries,
};
use ptgfit::gof::ks_test;
use ptgfit::mle::{fit, log_likelihood, FitOptions};
use ptgfit::models::{fit_model, FittedModel, ModelKind};
use ptgfit::quadrature::{integrate_to_infinity, Tolerance};
use ptgfit::{BaselineFamily, BaselineModel, ContinuousDistribution, PtgParams};
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Checks {
    criterion: u32,
    title: &'static str,
    total: usize,
    failures: Vec<String>,
}

impl Checks {
    fn new(criterion: u32, title: &'static str) -> Self {
        Checks {
            criterion,
            title,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, item: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(item());
        }
    }

    fn near(&mut self, item: &str, got: f64, want: f64, tol: f64) {
        self.check((got - want).abs() <= tol, || format!("{item} = {got:.6} (want {want} ± {tol})"));
    }

    // written straight to the handle so the line survives output capture
    fn finish(self) {
        let mut err = std::io::stderr().lock();
        if self.failures.is_empty() {
            let _ = writeln!(err, "PASS criterion {:>2}: {} ({} checks)", self.criterion, self.title, self.total);
        } else {
            let _ = writeln!(
                err,
                "FAIL criterion {:>2}: {} ({} of {} checks failed: {})",
                self.criterion,
                self.title,
                self.failures.len(),
                self.total,
                self.failures.join("; ")
            );
            drop(err);
            panic!("criterion {} failed", self.criterion);
        }
    }
}

fn fitted(id: DatasetId, kind: ModelKind) -> (Vec<f64>, FittedModel) {
    let data = embedded_dataset(id).unwrap().values;
    let m = fit_model(kind, &data, &FitOptions::default()).unwrap();
    (data, m)
}

#[test]
fn criterion_01_descriptive_statistics() {
    let mut c = Checks::new(1, "descriptive statistics of both data sets");
    c.check(validate_embedded(DatasetId::GuineaPigsI).is_ok(), || "data set I source gate".into());

    let s = describe(&embedded_dataset(DatasetId::ReliefTimesII).unwrap()).unwrap();
    c.check(s.n == 20, || format!("II n = {}", s.n));
    for (name, got, printed) in [
        ("min", s.min, "1.100"),
        ("mean", s.mean, "1.900"),
        ("median", s.median, "1.700"),
        ("sd", s.sd, "0.704"),
        ("q1", s.q1, "1.475"),
        ("q3", s.q3, "2.050"),
        ("max", s.max, "4.100"),
    ] {
        let shown = format!("{got:.3}");
        c.check(shown == printed, || format!("II {name} prints as {shown}, table has {printed}"));
    }

    let s = describe(&embedded_dataset(DatasetId::GuineaPigsI).unwrap()).unwrap();
    c.check(s.n == 72, || format!("I n = {}", s.n));
    for (name, got, want) in [
        ("min", s.min, 0.100),
        ("mean", s.mean, 1.851),
        ("median", s.median, 1.560),
        ("sd", s.sd, 1.200),
        ("skewness", s.skewness.unwrap(), 1.788),
        ("kurtosis", s.kurtosis.unwrap(), 4.157),
        ("q1", s.q1, 1.080),
        ("q3", s.q3, 2.303),
        ("max", s.max, 7.000),
    ] {
        c.near(&format!("I {name}"), got, want, 1e-3);
    }
    c.finish();
}

#[test]
fn criterion_02_pte_fit_data_i() {
    let mut c = Checks::new(2, "PT-E fit to data set I");
    let (data, m) = fitted(DatasetId::GuineaPigsI, ModelKind::Pte);
    let g = m.gof(&data).unwrap();
    c.near("alpha", m.estimates[0], 0.813, 0.05);
    c.near("beta", m.estimates[1], -6.587, 0.3);
    c.near("lambda", m.estimates[2], 0.841, 0.05);
    c.near("AIC", g.aic, 202.09, 0.5);
    c.near("BIC", g.bic, 208.92, 0.5);
    c.near("CAIC", g.caic, 202.44, 0.5);
    c.near("HQIC", g.hqic, 204.81, 0.5);
    for (i, (name, want)) in [("alpha", 0.182), ("beta", 1.448), ("lambda", 0.192)].iter().enumerate() {
        let se = m.std_errors[i];
        c.check((se - want).abs() <= 0.25 * want, || format!("se({name}) = {se:.4} (want {want} ± 25%)"));
    }
    c.finish();
}

#[test]
fn criterion_03_pte_fit_data_ii() {
    let mut c = Checks::new(3, "PT-E fit to data set II");
    let (data, m) = fitted(DatasetId::ReliefTimesII, ModelKind::Pte);
    let g = m.gof(&data).unwrap();
    c.near("alpha", m.estimates[0], 0.301, 0.05);
    c.near("beta", m.estimates[1], -9.997, 0.5);
    c.near("lambda", m.estimates[2], 1.555, 0.08);
    c.near("AIC", g.aic, 36.84, 0.5);
    c.finish();
}

#[test]
fn criterion_04_goodness_of_fit() {
    let mut c = Checks::new(4, "PT-E goodness of fit on both data sets");
    let (data, m) = fitted(DatasetId::GuineaPigsI, ModelKind::Pte);
    let g = m.gof(&data).unwrap();
    c.near("I KS", g.ks, 0.07, 0.01);
    c.near("I KS p-value", g.ks_pvalue, 0.86, 0.05);
    c.near("I A", g.ad, 0.36, 0.03);
    c.near("I W", g.cvm, 0.05, 0.01);
    let (data, m) = fitted(DatasetId::ReliefTimesII, ModelKind::Pte);
    let g = m.gof(&data).unwrap();
    c.near("II KS", g.ks, 0.11, 0.01);
    c.near("II A", g.ad, 0.37, 0.03);
    c.near("II W", g.cvm, 0.04, 0.01);
    c.finish();
}

#[test]
fn criterion_05_competitors() {
    let mut c = Checks::new(5, "Exp, ME and MO-E fits");
    for (id, exp, me) in [(DatasetId::GuineaPigsI, 0.540, 0.925), (DatasetId::ReliefTimesII, 0.526, 0.950)] {
        c.near(&format!("{id:?} Exp lambda"), fitted(id, ModelKind::Exp).1.estimates[0], exp, 1e-3);
        c.near(&format!("{id:?} ME sigma"), fitted(id, ModelKind::Me).1.estimates[0], me, 1e-3);
    }
    let (data, m) = fitted(DatasetId::GuineaPigsI, ModelKind::Moe);
    c.near("I MO-E alpha", m.estimates[0], 8.778, 0.8);
    c.near("I MO-E lambda", m.estimates[1], 1.379, 0.1);
    c.near("I MO-E AIC", m.gof(&data).unwrap().aic, 210.36, 0.5);
    c.finish();
}

#[test]
fn criterion_06_ranking() {
    let mut c = Checks::new(6, "PT-E has the strictly lowest AIC");
    for id in [DatasetId::GuineaPigsI, DatasetId::ReliefTimesII] {
        let aic = |k| {
            let (data, m) = fitted(id, k);
            m.gof(&data).unwrap().aic
        };
        let pte = aic(ModelKind::Pte);
        for k in [ModelKind::Exp, ModelKind::Me, ModelKind::Moe] {
            let other = aic(k);
            c.check(pte < other, || format!("{id:?}: AIC(PT-E) {pte:.3} vs {k} {other:.3}"));
        }
    }
    c.finish();
}

const ALPHAS: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];
const BETAS: [f64; 6] = [-6.6, -2.0, -0.5, 0.5, 2.0, 6.6];

fn grid_members() -> Vec<PtgParams> {
    let mut out = Vec::new();
    for base in [BaselineModel::exponential(1.0).unwrap(), BaselineModel::weibull(1.0, 1.7).unwrap()] {
        for &a in &ALPHAS {
            for &b in &BETAS {
                out.push(PtgParams::new(a, b, base).unwrap());
            }
        }
    }
    out
}

fn quantile_breaks(p: &PtgParams) -> Vec<f64> {
    [1e-4, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 0.999999]
        .iter()
        .map(|&u| p.quantile(u))
        .collect()
}

#[test]
fn criterion_07_distribution_validity() {
    let mut c = Checks::new(7, "pdf, cdf, quantile and hazard over the parameter grid");
    for p in grid_members() {
        let total = integrate_to_infinity(|x| p.pdf(x), 0.0, &quantile_breaks(&p), Tolerance::default())
            .unwrap()
            .value;
        c.check((total - 1.0).abs() <= 1e-8, || format!("{p:?}: ∫pdf = {total}"));

        let xs: Vec<f64> = (0..=400).map(|i| p.quantile(1e-6) + i as f64 * 0.02).collect();
        let monotone = xs.windows(2).all(|w| p.cdf(w[1]) >= p.cdf(w[0]));
        c.check(monotone, || format!("{p:?}: cdf not monotone"));

        for i in 1..200 {
            let u = i as f64 / 200.0;
            let err = (p.cdf(p.quantile(u)) - u).abs();
            c.check(err <= 1e-9, || format!("{p:?}: quantile round trip at {u} off by {err:e}"));
        }

        for &x in &xs[1..] {
            let sf = p.sf(x);
            if sf < 1e-300 {
                continue;
            }
            let h = p.hazard(x);
            let direct = p.pdf(x) / sf;
            let rel = (h - direct).abs() / direct.abs().max(1e-300);
            c.check(rel <= 1e-10, || format!("{p:?}: hrf at {x} relative error {rel:e}"));
        }
    }
    c.finish();
}

#[test]
fn criterion_08_series_equivalence() {
    let mut c = Checks::new(8, "series forms agree with the closed forms");
    for p in grid_members() {
        let n = adaptive_order(p.beta());
        for i in 1..40 {
            let x = p.quantile(i as f64 / 40.0);
            let s = series_pdf_eval(x, &p, n).unwrap();
            let err = (s.value - p.pdf(x)).abs();
            c.check(err <= s.bound, || format!("{p:?}: pdf series at {x} error {err:e} > bound {:e}", s.bound));
            let s = series_cdf_eval(x, &p, n).unwrap();
            let err = (s.value - p.cdf(x)).abs();
            c.check(err <= s.bound, || format!("{p:?}: cdf series at {x} error {err:e} > bound {:e}", s.bound));
        }
    }
    for &b in &BETAS {
        let n = adaptive_order(b);
        let d = delta_coeffs(b, n).unwrap();
        let sum: f64 = d.values.iter().enumerate().map(|(i, v)| v / (i + 1) as f64).sum();
        c.check((sum - 1.0).abs() <= 1e-12, || format!("beta {b}: Σ δ_i/(i+1) = {sum}"));
        let xi: f64 = xi_coeffs(b, n).unwrap().values.iter().sum();
        c.check((xi - 1.0).abs() <= 1e-12, || format!("beta {b}: Σ ξ_j = {xi}"));
    }
    c.finish();
}

fn convolve(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    out
}

#[test]
fn criterion_09_power_series_and_order_statistics() {
    let mut c = Checks::new(9, "raise_series and order-statistic series");
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for len in 1..=12 {
        for n in 1..=6u32 {
            let a: Vec<f64> = (0..len)
                .map(|i| {
                    let v: f64 = rng.random_range(-2.0..2.0);
                    if i == 0 { v.signum() * (0.5 + v.abs()) } else { v }
                })
                .collect();
            let raised = raise_series(&PowerSeries::new(a.clone()), n).unwrap();
            let mut brute = vec![1.0];
            for _ in 0..n {
                brute = convolve(&brute, &a, len);
            }
            for (k, (r, b)) in raised.coeffs().iter().zip(&brute).enumerate() {
                let scale = brute.iter().map(|v| v.abs()).fold(0.0, f64::max);
                c.check((r - b).abs() <= 1e-12 * scale, || format!("len {len} n {n} coefficient {k}: {r} vs {b}"));
            }
        }
    }
    for p in [
        PtgParams::exponential(0.5, 2.0, 1.0).unwrap(),
        PtgParams::exponential(-0.6, -2.0, 1.5).unwrap(),
        PtgParams::weibull(0.8, 0.5, 1.0, 1.7).unwrap(),
    ] {
        for (r, n) in [(1, 1), (1, 5), (3, 5), (5, 5), (2, 8)] {
            for u in [0.1, 0.4, 0.8] {
                let x = p.quantile(u);
                let direct = order_stat_pdf(x, r, n, &p, OrderStatMode::Direct).unwrap();
                let series = order_stat_pdf(x, r, n, &p, OrderStatMode::Series).unwrap();
                c.check((direct - series).abs() <= 1e-6, || {
                    format!("{p:?} r {r} n {n} x {x}: {direct} vs {series}")
                });
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_10_stress_strength() {
    let mut c = Checks::new(10, "stress-strength reliability");
    let pairs = [
        (PtgParams::exponential(0.5, 1.0, 1.0).unwrap(), PtgParams::exponential(-0.3, 2.0, 0.5).unwrap()),
        (PtgParams::exponential(0.8, -6.6, 0.84).unwrap(), PtgParams::exponential(0.9, -2.0, 1.6).unwrap()),
        (PtgParams::weibull(0.2, 2.0, 1.0, 1.5).unwrap(), PtgParams::weibull(-0.7, -0.5, 0.8, 1.5).unwrap()),
    ];
    for (p1, p2) in &pairs {
        let same = stress_strength(p1, p1).unwrap();
        c.near("R(p, p)", same, 0.5, 1e-9);
        let r12 = stress_strength(p1, p2).unwrap();
        let r21 = stress_strength(p2, p1).unwrap();
        c.near("R12 + R21", r12 + r21, 1.0, 1e-9);
    }
    let (p1, p2) = &pairs[0];
    let n = 10_000_000;
    let x1 = sample(p1, n, 101);
    let x2 = sample(p2, n, 202);
    let hits = x1.iter().zip(&x2).filter(|(a, b)| b < a).count();
    let r = stress_strength(p1, p2).unwrap();
    let mc = hits as f64 / n as f64;
    let sigma = (r * (1.0 - r) / n as f64).sqrt();
    c.check((mc - r).abs() <= 3.0 * sigma, || format!("Monte Carlo {mc} vs {r} (3σ = {:e})", 3.0 * sigma));
    c.finish();
}

#[test]
fn criterion_11_sampling() {
    let mut c = Checks::new(11, "draws at the fitted PT-E parameters pass KS at 1%");
    for (seed, id) in [DatasetId::GuineaPigsI, DatasetId::ReliefTimesII].into_iter().enumerate() {
        let (_, m) = fitted(id, ModelKind::Pte);
        let p = *m.distribution.as_ptg().unwrap();
        let draws = ptg_sample(100_000, &p, seed as u64 + 31).unwrap();
        let ks = ks_test(&draws, |x| p.cdf(x)).unwrap();
        c.check(ks.p_value > 0.01, || format!("{id:?}: KS p-value {}", ks.p_value));
    }
    c.finish();
}

#[test]
fn criterion_12_mle_self_consistency() {
    let mut c = Checks::new(12, "MLE recovers synthetic PT-E(0.5, 2, 1)");
    let truth = PtgParams::exponential(0.5, 2.0, 1.0).unwrap();
    let data = ptg_sample(5000, &truth, 12).unwrap();
    let r = fit(&data, BaselineFamily::Exponential, &FitOptions::default()).unwrap();
    let est = r.estimates.to_vector();
    for (i, t) in truth.to_vector().iter().enumerate() {
        let z = (est[i] - t).abs() / r.std_errors[i];
        c.check(z <= 3.0, || format!("parameter {i}: estimate {} is {z:.2} SEs from {t}", est[i]));
    }

    let ll = |v: &[f64]| match PtgParams::exponential(v[0], v[1], v[2]) {
        Ok(p) => log_likelihood(&data, &p).unwrap(),
        Err(_) => f64::NAN,
    };
    for i in 0..3 {
        let h = 1e-5 * est[i].abs().max(1.0);
        let (mut up, mut down) = (est.clone(), est.clone());
        up[i] += h;
        down[i] -= h;
        let g = (ll(&up) - ll(&down)) / (2.0 * h);
        c.check(g.abs() < 1e-3, || format!("gradient component {i} = {g:e}"));
    }

    let scale = 3.7f64;
    let scaled: Vec<f64> = data.iter().map(|x| x * scale).collect();
    let p = r.estimates;
    let q = PtgParams::exponential(p.alpha(), p.beta(), p.baseline().params()[0] / scale).unwrap();
    let shift = log_likelihood(&scaled, &q).unwrap() - log_likelihood(&data, &p).unwrap();
    let want = -(data.len() as f64) * scale.ln();
    c.check((shift - want).abs() <= 1e-8, || format!("scale shift {shift} vs {want}"));
    c.finish();
}

#[test]
fn criterion_13_residual_life_and_entropy_limits() {
    let mut c = Checks::new(13, "residual life and exponential limits");
    for p in [
        PtgParams::exponential(0.5, 1.0, 1.0).unwrap(),
        PtgParams::exponential(0.813, -6.587, 0.841).unwrap(),
        PtgParams::weibull(-0.4, 2.0, 1.0, 1.7).unwrap(),
    ] {
        let mean = raw_moment(1, &p).unwrap();
        c.near("m1(0) - mean", residual_moment(1, 0.0, &p).unwrap() - mean, 0.0, 1e-8);
    }
    let rate = 1.3f64;
    let near_exp = PtgParams::exponential(0.0, 1e-6, rate).unwrap();
    for t in [0.0, 0.5, 1.0, 2.5] {
        c.near(&format!("m1({t})"), residual_moment(1, t, &near_exp).unwrap(), 1.0 / rate, 1e-4);
    }
    for delta in [0.5f64, 2.0, 3.0] {
        let closed = -rate.ln() - delta.ln() / (1.0 - delta);
        c.near(&format!("Renyi({delta})"), renyi_entropy(delta, &near_exp).unwrap(), closed, 1e-3);
    }
    c.finish();
}
