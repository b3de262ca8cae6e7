//! Experiment orchestration: sweep configuration, execution, CSV output
//! and boxplot summaries.

pub mod config;
pub mod io;
pub mod summary;
pub mod sweep;

pub use config::{Binarization, SweepConfig};
pub use summary::{summarize, SummaryRow};
pub use sweep::{execute, run_sweep, split_seed, SweepRecord};
