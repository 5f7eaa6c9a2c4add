use proptest::prelude::*;
use ptgfit::distributions::{ptg_cdf, ptg_quantile, ptg_sample, tg_cdf};
use ptgfit::{BaselineModel, ContinuousDistribution, PtgParams};

fn beta_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![-8.0..-0.01f64, 0.01..8.0f64]
}

fn params() -> impl Strategy<Value = PtgParams> {
    (-1.0..=1.0f64, beta_strategy(), 0.2..5.0f64, prop::option::of(0.4..3.0f64)).prop_map(|(a, b, rate, shape)| {
        match shape {
            Some(k) => PtgParams::weibull(a, b, rate, k).unwrap(),
            None => PtgParams::exponential(a, b, rate).unwrap(),
        }
    })
}

proptest! {
    #[test]
    fn cdf_and_sf_are_complements(p in params(), u in 0.001..0.999f64) {
        let x = p.quantile(u);
        prop_assert!((p.cdf(x) + p.sf(x) - 1.0).abs() <= 2e-16);
        prop_assert!((p.cdf(x) - u).abs() <= 1e-9);
    }

    #[test]
    fn cdf_is_nondecreasing(p in params(), a in 0.0..10.0f64, d in 0.0..3.0f64) {
        prop_assert!(p.cdf(a + d) >= p.cdf(a));
        prop_assert!(p.sf(a + d) <= p.sf(a));
    }

    #[test]
    fn density_is_nonnegative_and_hazard_consistent(p in params(), u in 0.01..0.99f64) {
        let x = p.quantile(u);
        let f = p.pdf(x);
        prop_assert!(f >= 0.0);
        let h = p.hazard(x);
        prop_assert!((h - f / p.sf(x)).abs() <= 1e-10 * h.max(1.0));
    }

    #[test]
    fn density_matches_cdf_slope(p in params(), u in 0.05..0.95f64) {
        let x = p.quantile(u);
        let h = 1e-6 * x.max(1e-3);
        let slope = (p.cdf(x + h) - p.cdf(x - h)) / (2.0 * h);
        prop_assert!((slope - p.pdf(x)).abs() <= 1e-5 * p.pdf(x).max(1.0));
    }

    #[test]
    fn small_beta_approaches_transmuted(a in -1.0..=1.0f64, x in 0.01..6.0f64) {
        let base = BaselineModel::exponential(1.0).unwrap();
        let p = PtgParams::new(a, 1e-7, base).unwrap();
        prop_assert!((p.cdf(x) - tg_cdf(x, a, &base).unwrap()).abs() <= 1e-6);
    }
}

#[test]
fn weibull_with_unit_shape_is_exponential() {
    let e = PtgParams::exponential(0.4, -3.0, 1.7).unwrap();
    let w = PtgParams::weibull(0.4, -3.0, 1.7, 1.0).unwrap();
    for x in [0.01, 0.3, 1.0, 2.5, 9.0] {
        assert!((e.cdf(x) - w.cdf(x)).abs() < 1e-14);
        assert!((e.pdf(x) - w.pdf(x)).abs() < 1e-13 * e.pdf(x).max(1.0));
    }
}

#[test]
fn checked_functions_reject_bad_arguments() {
    let p = PtgParams::exponential(0.5, 2.0, 1.0).unwrap();
    assert!(ptg_quantile(1.5, &p).is_err());
    assert!(ptg_cdf(f64::NAN, &p).is_err());
    assert!(PtgParams::exponential(0.5, 2.0, -1.0).is_err());
}

#[test]
fn sampling_is_reproducible() {
    let p = PtgParams::weibull(-0.3, 1.2, 0.9, 2.0).unwrap();
    let a = ptg_sample(100, &p, 5).unwrap();
    assert_eq!(a, ptg_sample(100, &p, 5).unwrap());
    assert_ne!(a, ptg_sample(100, &p, 6).unwrap());
    assert!(a.iter().all(|&x| x > 0.0 && x.is_finite()));
}
