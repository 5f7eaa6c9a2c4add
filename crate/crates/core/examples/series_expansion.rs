//! The power-series form of the density next to the closed form, with the
//! truncation bound that goes with each order.

use ptgfit::expansions::{adaptive_order, delta_coeffs, series_cdf_eval, series_pdf_eval};
use ptgfit::{ContinuousDistribution, PtgParams};

fn main() -> ptgfit::Result<()> {
    let p = PtgParams::exponential(0.5, 4.0, 1.0)?;
    let x = 0.8;

    let d = delta_coeffs(p.beta(), 8)?;
    println!("first delta coefficients: {:?}", &d.values[..5]);
    println!("adaptive order for beta = {}: {}", p.beta(), adaptive_order(p.beta()));

    println!("\n{:>4} {:>18} {:>12} {:>12}", "N", "series pdf", "error", "bound");
    for n in [2, 4, 8, 16, 32] {
        let s = series_pdf_eval(x, &p, n)?;
        println!("{n:>4} {:>18.15} {:>12.3e} {:>12.3e}", s.value, (s.value - p.pdf(x)).abs(), s.bound);
    }
    let c = series_cdf_eval(x, &p, 32)?;
    println!("\ncdf: series {:.15}, closed form {:.15}", c.value, p.cdf(x));
    Ok(())
}
