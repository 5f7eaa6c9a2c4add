//! Maximum-likelihood PT-E fit to the guinea pig survival times.

use ptgfit::data::{embedded_dataset, DatasetId};
use ptgfit::gof::gof_report;
use ptgfit::mle::{fit, FitOptions};
use ptgfit::{BaselineFamily, ContinuousDistribution};

fn main() -> ptgfit::Result<()> {
    let data = embedded_dataset(DatasetId::GuineaPigsI)?;
    let r = fit(&data.values, BaselineFamily::Exponential, &FitOptions::default())?;

    println!("{} (n = {})", data.source, r.n_obs);
    for (i, name) in r.estimates.param_names().iter().enumerate() {
        println!(
            "{name:>7} = {:>9.5}  se {:>8.5}  95% CI ({:.4}, {:.4})",
            r.estimates.to_vector()[i],
            r.std_errors[i],
            r.ci_low[i],
            r.ci_high[i]
        );
    }
    println!("loglik {:.5}, converged {}, max |gradient| {:.2e}", r.loglik, r.converged, r.max_gradient);

    let p = r.estimates;
    let g = gof_report(&data.values, r.loglik, r.n_params(), |x| p.cdf(x))?;
    println!(
        "AIC {:.2}  BIC {:.2}  CAIC {:.2}  HQIC {:.2}  A {:.3}  W {:.3}  KS {:.3} (p {:.2})",
        g.aic, g.bic, g.caic, g.hqic, g.ad, g.cvm, g.ks, g.ks_pvalue
    );
    Ok(())
}
