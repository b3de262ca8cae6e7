//! Pick the embedding lag from the first minimum of the auto mutual information.

use lezter::dynsys::{simulate, SystemKind, SystemSpec};
use lezter::preprocess::{auto_mutual_information, suggest_embedding_dim, suggest_lag};
use lezter::RealSeries;

fn main() -> lezter::Result<()> {
    let traj = simulate(&SystemSpec::new(SystemKind::LorenzLorenz, 0.0, 20_000, 3))?;
    let mut lags = Vec::new();
    for (name, series) in [("source", traj.source), ("target", traj.target)] {
        let curve = auto_mutual_information(&RealSeries::new(series)?, 60, 16)?;
        let s = suggest_lag(&curve)?;
        println!("{name}: AMI(0) = {:.3}, first minimum at lag {} (AMI {:.3})", curve.mi_values[0], s.lag, curve.mi_values[s.lag]);
        lags.push(s.lag);
    }
    // m_x and m_y come from elsewhere (e.g. false nearest neighbours); 3 each here
    let m = suggest_embedding_dim(3, 3)?;
    println!("suggested tau = {}, m = {m}", lags.iter().max().unwrap());
    Ok(())
}
