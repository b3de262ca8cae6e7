//! Direction of information flow in unidirectionally coupled Henon maps.
//!
//! The drive y feeds the response x, so t_global should turn positive as the
//! coupling grows, then fall back to zero once the maps synchronize.

use lezter::dynsys::{simulate, SystemKind, SystemSpec};
use lezter::runner::summary::boxplot;
use lezter::{binarize_median, global_ter, RealSeries, TerParams};

fn main() -> lezter::Result<()> {
    let realizations = 10;
    println!("eps    q1       median   q3");
    for step in 0..=10 {
        let eps = step as f64 / 10.0;
        let mut values = Vec::new();
        for r in 0..realizations {
            let traj = simulate(&SystemSpec::new(SystemKind::HenonHenon, eps, 3000, r))?;
            let x = binarize_median(&RealSeries::new(traj.target)?).sequence;
            let y = binarize_median(&RealSeries::new(traj.source)?).sequence;
            values.push(global_ter(&x, &y, &TerParams::new(5, 1).seed(r))?.t_global);
        }
        let (q1, med, q3, ..) = boxplot(&values).unwrap();
        println!("{eps:.1}   {q1:>7.4}  {med:>7.4}  {q3:>7.4}");
    }
    Ok(())
}
