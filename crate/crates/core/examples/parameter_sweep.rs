//! Run a sweep from a config file and print the boxplot summary.
//!
//! ```text
//! cargo run --example parameter_sweep -- crates/core/examples/henon_sweep.conf
//! ```

use lezter::runner::config::SweepConfig;
use lezter::runner::summary::summarize;
use lezter::runner::sweep::run_sweep;

fn main() -> lezter::Result<()> {
    let default = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/henon_sweep.conf");
    let path = std::env::args().nth(1).unwrap_or_else(|| default.into());
    let config = SweepConfig::from_file(&path)?;
    let records = run_sweep(&config)?;
    println!("{} records -> {}", records.len(), config.output_path.display());
    println!("eps    N      m  tau  median    IQR");
    for row in summarize(&records)? {
        println!("{:<6} {:<6} {:<2} {:<4} {:>8.4}  {:.4}", row.epsilon, row.n, row.m, row.tau, row.median, row.iqr());
    }
    Ok(())
}
