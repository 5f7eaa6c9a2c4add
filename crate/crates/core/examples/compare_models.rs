//! PT-E, PT-W and the exponential-type competitors on both reference data sets.

use ptgfit::data::{embedded_dataset, DatasetId};
use ptgfit::mle::FitOptions;
use ptgfit::models::{fit_model, ModelKind};

fn main() -> ptgfit::Result<()> {
    let opts = FitOptions::default();
    for id in [DatasetId::GuineaPigsI, DatasetId::ReliefTimesII] {
        let data = embedded_dataset(id)?;
        println!("{}", data.source);
        println!("{:>6} {:>10} {:>9} {:>9} {:>7} {:>7} {:>7}", "model", "loglik", "AIC", "BIC", "A", "W", "KS");
        let mut rows = Vec::new();
        for kind in ModelKind::ALL {
            let m = fit_model(kind, &data.values, &opts)?;
            let g = m.gof(&data.values)?;
            println!(
                "{:>6} {:>10.4} {:>9.3} {:>9.3} {:>7.3} {:>7.4} {:>7.4}",
                kind.label(),
                m.loglik,
                g.aic,
                g.bic,
                g.ad,
                g.cvm,
                g.ks
            );
            rows.push((kind, g.aic));
        }
        let best = rows.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        println!("lowest AIC: {}\n", best.0);
    }
    Ok(())
}
