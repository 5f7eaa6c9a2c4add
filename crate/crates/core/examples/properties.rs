//! Moments, generating function, entropies, reliability and order statistics.

use ptgfit::expansions::{
    mean_deviation, mgf, order_stat_pdf, pwm, raw_moment, renyi_entropy, residual_moment, reversed_residual_moment,
    shannon_entropy, stress_strength, DeviationAbout, OrderStatMode,
};
use ptgfit::PtgParams;

fn main() -> ptgfit::Result<()> {
    let p = PtgParams::exponential(0.5, 1.0, 1.0)?;

    for s in 1..=4 {
        println!("E[X^{s}] = {:.10}", raw_moment(s, &p)?);
    }
    println!("M(0.3) = {:.10}", mgf(0.3, &p)?);
    println!("PWM(1,1,0) = {:.10}", pwm(1, 1, 0, &p)?);
    println!("Renyi(2) = {:.10}", renyi_entropy(2.0, &p)?);
    println!("Shannon = {:.10}", shannon_entropy(&p)?);
    println!(
        "mean deviation about mean / median = {:.6} / {:.6}",
        mean_deviation(DeviationAbout::Mean, &p)?,
        mean_deviation(DeviationAbout::Median, &p)?
    );
    println!(
        "mean residual life at 1 = {:.6}, mean inactivity time at 1 = {:.6}",
        residual_moment(1, 1.0, &p)?,
        reversed_residual_moment(1, 1.0, &p)?
    );

    let strength = PtgParams::exponential(-0.3, 2.0, 0.5)?;
    println!("R = P(X2 < X1) = {:.10}", stress_strength(&p, &strength)?);

    let x = 0.7;
    let direct = order_stat_pdf(x, 2, 5, &p, OrderStatMode::Direct)?;
    let series = order_stat_pdf(x, 2, 5, &p, OrderStatMode::Series)?;
    println!("f_2:5({x}) direct {direct:.12}, series {series:.12}");
    Ok(())
}
