//! Scaled TTT curves of both data sets as text, for hazard-shape diagnosis.

use ptgfit::data::{embedded_dataset, DatasetId};
use ptgfit::gof::ttt_points;

fn main() -> ptgfit::Result<()> {
    for id in [DatasetId::GuineaPigsI, DatasetId::ReliefTimesII] {
        let data = embedded_dataset(id)?;
        let points = ttt_points(&data.values)?;
        println!("{}", data.source);
        let step = (points.len() / 10).max(1);
        for (u, t) in points.iter().step_by(step) {
            let bar = "#".repeat((t * 50.0).round() as usize);
            println!("{u:>5.2} {t:>6.3} {bar}");
        }
        let above = points.iter().filter(|(u, t)| t > u).count();
        println!("{above} of {} points above the diagonal (concave curve, increasing hazard)\n", points.len());
    }
    Ok(())
}
