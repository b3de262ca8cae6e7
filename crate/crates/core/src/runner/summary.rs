//! Boxplot statistics of the global estimator per parameter group.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::io::ser_real;
use super::sweep::SweepRecord;
use crate::error::{Error, Result};

/// Five-number boxplot summary of one `(ε, N, m, τ)` group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub epsilon: f64,
    pub n: usize,
    pub m: usize,
    pub tau: usize,
    pub count: usize,
    #[serde(serialize_with = "ser_real")]
    pub q1: f64,
    #[serde(serialize_with = "ser_real")]
    pub median: f64,
    #[serde(serialize_with = "ser_real")]
    pub q3: f64,
    #[serde(serialize_with = "ser_real")]
    pub whisker_low: f64,
    #[serde(serialize_with = "ser_real")]
    pub whisker_high: f64,
    pub outliers: usize,
}

impl SummaryRow {
    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

/// Quantile of sorted data, linear interpolation between order statistics.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    crate::preprocess::quantile_sorted(sorted, p)
}

/// Boxplot of `values`: quartiles, 1.5·IQR whiskers and outlier count.
pub fn boxplot(values: &[f64]) -> Option<(f64, f64, f64, f64, f64, usize)> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let (q1, med, q3) = (quantile(&v, 0.25), quantile(&v, 0.5), quantile(&v, 0.75));
    let fence = 1.5 * (q3 - q1);
    let inside: Vec<f64> = v.iter().copied().filter(|&x| x >= q1 - fence && x <= q3 + fence).collect();
    let lo = inside.first().copied().unwrap_or(med);
    let hi = inside.last().copied().unwrap_or(med);
    Some((q1, med, q3, lo, hi, v.len() - inside.len()))
}

/// Groups successful records by `(ε, N, m, τ)` and summarizes `t_global`.
pub fn summarize(records: &[SweepRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::InvalidParameter("no records to summarize".into()));
    }
    let mut groups: BTreeMap<(u64, usize, usize, usize), (f64, Vec<f64>)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.is_ok()) {
        groups
            .entry((r.epsilon.to_bits(), r.n, r.m, r.tau))
            .or_insert_with(|| (r.epsilon, Vec::new()))
            .1
            .push(r.t_global);
    }
    let mut rows: Vec<SummaryRow> = groups
        .into_iter()
        .map(|((_, n, m, tau), (epsilon, values))| {
            let (q1, median, q3, whisker_low, whisker_high, outliers) = boxplot(&values).expect("non-empty group");
            SummaryRow {
                epsilon,
                n,
                m,
                tau,
                count: values.len(),
                q1,
                median,
                q3,
                whisker_low,
                whisker_high,
                outliers,
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        a.epsilon
            .total_cmp(&b.epsilon)
            .then(a.n.cmp(&b.n))
            .then(a.m.cmp(&b.m))
            .then(a.tau.cmp(&b.tau))
    });
    Ok(rows)
}
