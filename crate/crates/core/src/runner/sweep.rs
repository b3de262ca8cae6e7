//! Parameter sweeps over `(ε, N, m, τ)` with many seeded realizations.
//!
//! A work item is one trajectory `(ε, N, realization)`; every `(m, τ)` pair is
//! evaluated on it. Seeds are derived, never drawn:
//!
//! ```text
//! trajectory seed = split(master_seed, [ε index, N index, realization])
//! estimator seed  = split(trajectory seed, [m, τ])
//! ```
//!
//! so records do not depend on scheduling and any subset can be rerun alone.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Binarization, SweepConfig};
use super::io::{de_system, fmt_real, round_real, ser_real, ser_system, write_csv};
use super::summary::{summarize, SummaryRow};
use crate::dynsys::{simulate, SystemKind, SystemSpec};
use crate::error::{Error, Result};
use crate::lz::SymbolSequence;
use crate::preprocess::{binarize_median, quantize_quantiles, RealSeries};
use crate::ter::{global_ter, TerEstimate, TerParams};

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `parent` and a path of indices.
pub fn split_seed(parent: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix(parent.wrapping_add(0x9e37_79b9_7f4a_7c15)), |h, &p| {
        mix(h ^ mix(p.wrapping_add(0x9e37_79b9_7f4a_7c15)))
    })
}

/// Status value of a successful record.
pub const STATUS_OK: &str = "ok";

/// One row of sweep output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    #[serde(serialize_with = "ser_system", deserialize_with = "de_system")]
    pub system: SystemKind,
    pub epsilon: f64,
    pub n: usize,
    pub m: usize,
    pub tau: usize,
    pub realization: usize,
    pub seed: u64,
    #[serde(serialize_with = "ser_real")]
    pub t_yx: f64,
    #[serde(serialize_with = "ser_real")]
    pub t_xy: f64,
    #[serde(serialize_with = "ser_real")]
    pub t_yx_surr: f64,
    #[serde(serialize_with = "ser_real")]
    pub t_xy_surr: f64,
    #[serde(serialize_with = "ser_real")]
    pub t_global: f64,
    #[serde(serialize_with = "ser_real")]
    pub elapsed_ms: f64,
    /// `ok`, or `failed: <reason>`.
    pub status: String,
}

impl SweepRecord {
    pub fn is_ok(&self) -> bool {
        self.status == STATUS_OK
    }

    fn key(&self) -> (f64, usize, usize, usize, usize) {
        (self.epsilon, self.n, self.m, self.tau, self.realization)
    }

    /// Orders records by `(ε, N, m, τ, realization)`.
    pub fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        let (a, b) = (self.key(), other.key());
        a.0.total_cmp(&b.0)
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
            .then(a.3.cmp(&b.3))
            .then(a.4.cmp(&b.4))
    }

    /// The record as it reads back from CSV.
    pub fn rounded(&self) -> Self {
        Self {
            t_yx: round_real(self.t_yx),
            t_xy: round_real(self.t_xy),
            t_yx_surr: round_real(self.t_yx_surr),
            t_xy_surr: round_real(self.t_xy_surr),
            t_global: round_real(self.t_global),
            elapsed_ms: round_real(self.elapsed_ms),
            ..self.clone()
        }
    }

    /// CSV line without the timing column; equal across reruns.
    pub fn deterministic_fields(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.system,
            self.epsilon,
            self.n,
            self.m,
            self.tau,
            self.realization,
            self.seed,
            fmt_real(self.t_yx),
            fmt_real(self.t_xy),
            fmt_real(self.t_yx_surr),
            fmt_real(self.t_xy_surr),
            fmt_real(self.t_global),
            self.status
        )
    }
}

/// Inputs of one trajectory work item.
#[derive(Debug, Clone, Copy)]
struct WorkItem {
    eps_idx: usize,
    n_idx: usize,
    realization: usize,
}

fn symbolize(values: Vec<f64>, policy: Binarization) -> Result<SymbolSequence> {
    let series = RealSeries::new(values)?;
    Ok(match policy {
        Binarization::Median => binarize_median(&series).sequence,
        Binarization::Quantile(a) => quantize_quantiles(&series, a)?.sequence,
    })
}

/// Estimate for one symbolized pair plus the elapsed estimator time.
pub fn timed_global_ter(x: &SymbolSequence, y: &SymbolSequence, params: &TerParams) -> (Result<TerEstimate>, f64) {
    let start = Instant::now();
    let est = global_ter(x, y, params);
    (est, start.elapsed().as_secs_f64() * 1e3)
}

fn run_item(config: &SweepConfig, item: WorkItem) -> Vec<SweepRecord> {
    let epsilon = config.epsilon_values[item.eps_idx];
    let n = config.lengths[item.n_idx];
    let seed = split_seed(
        config.master_seed,
        &[item.eps_idx as u64, item.n_idx as u64, item.realization as u64],
    );
    let spec = SystemSpec::new(config.system, epsilon, n, seed)
        .discard(config.discard)
        .observables(config.observables.0, config.observables.1);
    let symbols = simulate(&spec).and_then(|traj| {
        let x = symbolize(traj.target, config.binarization)?;
        let y = symbolize(traj.source, config.binarization)?;
        Ok((x, y))
    });

    let mut out = Vec::with_capacity(config.m_values.len() * config.tau_values.len());
    for &m in &config.m_values {
        for &tau in &config.tau_values {
            let blank = SweepRecord {
                system: config.system,
                epsilon,
                n,
                m,
                tau,
                realization: item.realization,
                seed,
                t_yx: f64::NAN,
                t_xy: f64::NAN,
                t_yx_surr: f64::NAN,
                t_xy_surr: f64::NAN,
                t_global: f64::NAN,
                elapsed_ms: f64::NAN,
                status: STATUS_OK.to_string(),
            };
            let record = match &symbols {
                Err(e) => SweepRecord {
                    status: format!("failed: {e}"),
                    ..blank
                },
                Ok((x, y)) => {
                    let params = TerParams::new(m, tau)
                        .surrogates(config.surrogates)
                        .seed(split_seed(seed, &[m as u64, tau as u64]))
                        .method(config.surrogate_method);
                    match timed_global_ter(x, y, &params) {
                        (Ok(est), ms) => SweepRecord {
                            t_yx: est.t_yx,
                            t_xy: est.t_xy,
                            t_yx_surr: est.t_yx_surr,
                            t_xy_surr: est.t_xy_surr,
                            t_global: est.t_global,
                            elapsed_ms: ms,
                            ..blank
                        },
                        (Err(e), _) => SweepRecord {
                            status: format!("failed: {e}"),
                            ..blank
                        },
                    }
                }
            };
            out.push(record);
        }
    }
    out
}

fn work_items(config: &SweepConfig) -> Vec<WorkItem> {
    let mut items = Vec::new();
    for eps_idx in 0..config.epsilon_values.len() {
        for n_idx in 0..config.lengths.len() {
            for realization in 0..config.realizations {
                items.push(WorkItem {
                    eps_idx,
                    n_idx,
                    realization,
                });
            }
        }
    }
    items
}

/// Runs the sweep in memory. `on_batch` sees each trajectory's records as
/// they complete (completion order); the returned records are key-sorted.
pub fn execute<F>(config: &SweepConfig, on_batch: F) -> Result<Vec<SweepRecord>>
where
    F: Fn(&[SweepRecord]) -> Result<()> + Sync,
{
    config.validate()?;
    let items = work_items(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let collected = Mutex::new(Vec::with_capacity(items.len()));
    pool.install(|| {
        items.par_iter().try_for_each(|&item| {
            let batch = run_item(config, item);
            on_batch(&batch)?;
            collected.lock().expect("record list poisoned").extend(batch);
            Ok::<_, Error>(())
        })
    })?;
    let mut records = collected.into_inner().expect("record list poisoned");
    records.sort_by(SweepRecord::cmp_key);
    Ok(records)
}

/// Marker that exists while a sweep is writing `output`.
pub fn incomplete_marker(output: &Path) -> PathBuf {
    let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".incomplete");
    output.with_file_name(name)
}

/// Runs the sweep and writes the record and summary CSV files.
///
/// Records are appended to `output_path` as trajectories complete; on success
/// the file is rewritten in key order and the `.incomplete` marker removed.
/// On an I/O failure the marker stays next to the partial file.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let output = &config.output_path;
    if let Some(dir) = output.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let marker = incomplete_marker(output);
    std::fs::write(&marker, b"sweep in progress\n")?;

    let writer = Mutex::new(csv::Writer::from_writer(BufWriter::new(File::create(output)?)));
    let records = execute(config, |batch| {
        let mut w = writer.lock().expect("csv writer poisoned");
        for r in batch {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    })?;
    drop(writer);

    let tmp = output.with_extension("csv.tmp");
    write_csv(BufWriter::new(File::create(&tmp)?), &records)?;
    std::fs::rename(&tmp, output)?;
    write_summary(&config.summary_path(), &records)?;
    std::fs::remove_file(&marker)?;
    Ok(records)
}

fn write_summary(path: &Path, records: &[SweepRecord]) -> Result<Vec<SummaryRow>> {
    let rows = if records.iter().any(SweepRecord::is_ok) {
        summarize(records)?
    } else {
        Vec::new()
    };
    write_csv(BufWriter::new(File::create(path)?), &rows)?;
    Ok(rows)
}
