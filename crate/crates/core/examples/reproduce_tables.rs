//! Refits the reference data sets and lists every gate against the printed tables.

use ptgfit::mle::FitOptions;
use ptgfit::reproduce::reproduce;

fn main() -> ptgfit::Result<()> {
    let r = reproduce(&FitOptions::default())?;
    for m in &r.models {
        let printed = m.published.map(|p| p.aic).unwrap_or(f64::NAN);
        println!("{:>2} {:>5}  AIC {:>8.3}  printed {:>7.2}", m.dataset, m.model, m.gof.aic, printed);
    }
    println!();
    for g in &r.gates {
        println!("{g}");
    }
    println!("\n{} of {} gates pass", r.gates.iter().filter(|g| g.pass).count(), r.gates.len());
    Ok(())
}
