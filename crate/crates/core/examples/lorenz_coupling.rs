//! All four estimator components for coupled Lorenz oscillators.

use lezter::dynsys::{simulate, SystemKind, SystemSpec};
use lezter::{binarize_median, global_ter, RealSeries, TerParams};

fn main() -> lezter::Result<()> {
    println!("eps   t_yx     t_xy     t_yx*    t_xy*    t_global");
    for eps in [0.0, 1.0, 3.0, 6.0, 10.0, 14.0] {
        let traj = simulate(&SystemSpec::new(SystemKind::LorenzLorenz, eps, 3000, 11))?;
        let x = binarize_median(&RealSeries::new(traj.target)?).sequence;
        let y = binarize_median(&RealSeries::new(traj.source)?).sequence;
        let e = global_ter(&x, &y, &TerParams::new(7, 5).seed(11))?;
        println!(
            "{eps:<5} {:>7.4}  {:>7.4}  {:>7.4}  {:>7.4}  {:>7.4}",
            e.t_yx, e.t_xy, e.t_yx_surr, e.t_xy_surr, e.t_global
        );
    }
    Ok(())
}
