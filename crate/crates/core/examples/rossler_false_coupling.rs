//! Uncoupled Rössler and Lorenz systems still give a positive t_global.
//!
//! The slow, nearly periodic Rössler drive and the faster Lorenz response have
//! different entropy rates, and the estimator reads that asymmetry as flow.
//! The sign at zero coupling depends on which variables are observed, so the
//! example prints a few pairings.

use lezter::dynsys::{simulate, SystemKind, SystemSpec};
use lezter::runner::summary::boxplot;
use lezter::{binarize_median, global_ter, RealSeries, TerParams};

fn main() -> lezter::Result<()> {
    for (src, tgt) in [(1, 1), (0, 0), (0, 2)] {
        let mut values = Vec::new();
        for r in 0..12 {
            let spec = SystemSpec::new(SystemKind::RosslerLorenz, 0.0, 3000, r).observables(src, tgt);
            let traj = simulate(&spec)?;
            let x = binarize_median(&RealSeries::new(traj.target)?).sequence;
            let y = binarize_median(&RealSeries::new(traj.source)?).sequence;
            values.push(global_ter(&x, &y, &TerParams::new(7, 10).seed(r))?.t_global);
        }
        let (q1, med, q3, ..) = boxplot(&values).unwrap();
        println!("y{} -> x{}: median {med:.4}  IQR [{q1:.4}, {q3:.4}]", src + 1, tgt + 1);
    }
    Ok(())
}
