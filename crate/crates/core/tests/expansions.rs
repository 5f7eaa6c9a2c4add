use proptest::prelude::*;
use ptgfit::expansions::{
    mean_deviation, mean_deviation_direct, mgf, mgf_series, raise_series, raw_moment, raw_moment_quadrature,
    renyi_entropy, renyi_entropy_series, residual_moment, residual_moment_series, stress_strength,
    stress_strength_series, DeviationAbout, PowerSeries,
};
use ptgfit::PtgParams;

proptest! {
    #[test]
    fn raising_matches_repeated_products(
        a in prop::collection::vec(-2.0..2.0f64, 1..10),
        n in 1u32..6,
    ) {
        let mut a = a;
        a[0] = if a[0] >= 0.0 { a[0] + 0.5 } else { a[0] - 0.5 };
        let len = a.len();
        let raised = raise_series(&PowerSeries::new(a.clone()), n).unwrap();
        let mut brute = vec![1.0];
        for _ in 0..n {
            let mut next = vec![0.0; len];
            for (i, x) in brute.iter().enumerate() {
                for (j, y) in a.iter().enumerate() {
                    if i + j < len {
                        next[i + j] += x * y;
                    }
                }
            }
            brute = next;
        }
        let scale = brute.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (r, b) in raised.coeffs().iter().zip(&brute) {
            prop_assert!((r - b).abs() <= 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn reliability_is_antisymmetric(
        a1 in -1.0..=1.0f64, b1 in 0.1..4.0f64, a2 in -1.0..=1.0f64, b2 in -4.0..-0.1f64, rate in 0.3..3.0f64,
    ) {
        let p1 = PtgParams::exponential(a1, b1, 1.0).unwrap();
        let p2 = PtgParams::exponential(a2, b2, rate).unwrap();
        let r = stress_strength(&p1, &p2).unwrap() + stress_strength(&p2, &p1).unwrap();
        prop_assert!((r - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn moment_and_mgf_series_match_quadrature() {
    for p in [
        PtgParams::exponential(0.5, 1.0, 1.0).unwrap(),
        PtgParams::exponential(-0.7, -4.0, 2.0).unwrap(),
        PtgParams::weibull(0.3, 3.0, 1.0, 1.5).unwrap(),
    ] {
        for s in 1..=3 {
            let a = raw_moment(s, &p).unwrap();
            let b = raw_moment_quadrature(s, &p).unwrap();
            assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0), "{p:?} s={s}: {a} vs {b}");
        }
        let m = mgf(0.2, &p).unwrap();
        let ms = mgf_series(0.2, &p, 60).unwrap();
        assert!((m - ms).abs() <= 1e-8 * m, "{p:?}: {m} vs {ms}");
    }
}

#[test]
fn series_cross_checks() {
    let p = PtgParams::exponential(0.5, 1.0, 1.0).unwrap();
    let q = PtgParams::exponential(0.3, 1.0, 2.0).unwrap();
    let r = stress_strength(&p, &q).unwrap();
    assert!((r - stress_strength_series(&p, &q, 60).unwrap()).abs() < 1e-6);
    let m = residual_moment(2, 0.7, &p).unwrap();
    assert!((m - residual_moment_series(2, 0.7, &p, 60).unwrap()).abs() < 1e-6);
    let h = renyi_entropy(1.7, &p).unwrap();
    assert!((h - renyi_entropy_series(1.7, &p, 80).unwrap()).abs() < 1e-6);
    for about in [DeviationAbout::Mean, DeviationAbout::Median] {
        let a = mean_deviation(about, &p).unwrap();
        let b = mean_deviation_direct(about, &p).unwrap();
        assert!((a - b).abs() < 1e-8, "{about:?}: {a} vs {b}");
    }
}

#[test]
fn weibull_unit_shape_gives_identical_properties() {
    let e = PtgParams::exponential(0.2, -1.5, 0.8).unwrap();
    let w = PtgParams::weibull(0.2, -1.5, 0.8, 1.0).unwrap();
    for (a, b) in [
        (raw_moment(2, &e).unwrap(), raw_moment(2, &w).unwrap()),
        (renyi_entropy(2.0, &e).unwrap(), renyi_entropy(2.0, &w).unwrap()),
        (residual_moment(1, 1.0, &e).unwrap(), residual_moment(1, 1.0, &w).unwrap()),
    ] {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn mgf_beyond_the_abscissa_diverges() {
    let p = PtgParams::exponential(0.5, 1.0, 1.0).unwrap();
    assert!(mgf(1.5, &p).is_err());
}
