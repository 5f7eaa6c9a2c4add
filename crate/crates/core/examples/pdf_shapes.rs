//! Density and hazard of a few PT-E and PT-W members on a common grid.

use ptgfit::{ContinuousDistribution, PtgParams};

fn main() -> ptgfit::Result<()> {
    let members = [
        ("PT-E(0.5, 2, 1)", PtgParams::exponential(0.5, 2.0, 1.0)?),
        ("PT-E(-0.9, -6, 1)", PtgParams::exponential(-0.9, -6.0, 1.0)?),
        ("PT-W(0.3, 1.5, 1, 0.7)", PtgParams::weibull(0.3, 1.5, 1.0, 0.7)?),
        ("PT-W(-0.5, -3, 1, 2.5)", PtgParams::weibull(-0.5, -3.0, 1.0, 2.5)?),
    ];

    print!("{:>6}", "x");
    for (name, _) in &members {
        print!("  {name:>24}");
    }
    println!();
    for i in 1..=12 {
        let x = 0.25 * i as f64;
        print!("{x:>6.2}");
        for (_, p) in &members {
            print!("  {:>11.5} /{:>11.5}", p.pdf(x), p.hazard(x));
        }
        println!();
    }
    println!("\ncolumns are pdf / hazard");
    Ok(())
}
