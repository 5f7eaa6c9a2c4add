use proptest::prelude::*;
use ptgfit::gof::{anderson_darling, cramer_von_mises, ks_test, ttt_points};

fn brute_ks(data: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = data.len() as f64;
    let mut d: f64 = 0.0;
    for &x in data {
        let below = data.iter().filter(|&&y| y < x).count() as f64 / n;
        let upto = data.iter().filter(|&&y| y <= x).count() as f64 / n;
        let f = cdf(x);
        d = d.max((f - below).abs()).max((upto - f).abs());
    }
    d
}

proptest! {
    #[test]
    fn ks_matches_brute_force(data in prop::collection::vec(0.01..5.0f64, 2..60)) {
        let cdf = |x: f64| 1.0 - (-0.7 * x).exp();
        let fast = ks_test(&data, cdf).unwrap().statistic;
        prop_assert!((fast - brute_ks(&data, cdf)).abs() < 1e-12);
    }

    #[test]
    fn statistics_depend_only_on_the_pit(data in prop::collection::vec(0.01..5.0f64, 2..60), c in 0.1..10.0f64) {
        let cdf = |x: f64| 1.0 - (-x).exp();
        let scaled: Vec<f64> = data.iter().map(|x| x * c).collect();
        let scaled_cdf = |y: f64| 1.0 - (-y / c).exp();
        let a = anderson_darling(&data, cdf).unwrap();
        let b = anderson_darling(&scaled, scaled_cdf).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        let a = cramer_von_mises(&data, cdf).unwrap();
        let b = cramer_von_mises(&scaled, scaled_cdf).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        let a = ks_test(&data, cdf).unwrap().statistic;
        let b = ks_test(&scaled, scaled_cdf).unwrap().statistic;
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn ttt_stays_in_the_unit_square(data in prop::collection::vec(0.01..5.0f64, 2..60)) {
        let t = ttt_points(&data).unwrap();
        prop_assert_eq!(t.last().unwrap().1, 1.0);
        prop_assert!(t.iter().all(|&(u, v)| (0.0..=1.0).contains(&u) && (0.0..=1.0 + 1e-12).contains(&v)));
        prop_assert!(t.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-12));
    }
}

#[test]
fn order_of_observations_does_not_matter() {
    let a = [0.3, 2.2, 1.1, 0.7, 4.0];
    let b = [4.0, 0.7, 1.1, 2.2, 0.3];
    let cdf = |x: f64| 1.0 - (-x).exp();
    assert_eq!(ks_test(&a, cdf).unwrap(), ks_test(&b, cdf).unwrap());
    assert_eq!(anderson_darling(&a, cdf).unwrap(), anderson_darling(&b, cdf).unwrap());
}
