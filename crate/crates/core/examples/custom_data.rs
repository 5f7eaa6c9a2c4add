//! Fitting observations read from a text file.

use ptgfit::data::{describe, load_observations, save_observations, TextFormat};
use ptgfit::mle::FitOptions;
use ptgfit::models::{fit_model, ModelKind};
use ptgfit::PtgParams;

fn main() -> ptgfit::Result<()> {
    let path = std::env::temp_dir().join("ptgfit_custom_data.txt");
    let truth = PtgParams::weibull(0.4, -2.0, 0.8, 1.6)?;
    save_observations(&path, &ptgfit::distributions::ptg_sample(300, &truth, 11)?)?;

    let data = load_observations(&path, TextFormat::Whitespace)?;
    let s = describe(&data)?;
    println!("{}: n {}, mean {:.4}, median {:.4}, sd {:.4}", data.source, s.n, s.mean, s.median, s.sd);

    for kind in [ModelKind::Ptw, ModelKind::Pte, ModelKind::Exp] {
        let m = fit_model(kind, &data.values, &FitOptions::default())?;
        println!("{:>5}: {:?}  loglik {:.3}  AIC {:.3}", kind.label(), m.estimates, m.loglik, m.gof(&data.values)?.aic);
    }
    println!("generating parameters: {:?}", truth.to_vector());
    let _ = std::fs::remove_file(&path);
    Ok(())
}
