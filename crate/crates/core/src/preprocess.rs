//! Symbolization of real-valued series and embedding-parameter heuristics.
//!
//! Series are binarized at their median (ties go to `1`) or quantized at
//! their own empirical `k/α` quantiles. The embedding lag is taken from the
//! first local minimum of the auto mutual information computed on the raw
//! series with equal-count bins.

use crate::error::{Error, Result};
use crate::lz::SymbolSequence;

/// A real-valued series with finite samples.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSeries {
    values: Vec<f64>,
    sample_period: Option<f64>,
}

impl RealSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if values.len() < 2 {
            return Err(Error::SequenceTooShort {
                len: values.len(),
                min: 2,
            });
        }
        Ok(Self {
            values,
            sample_period: None,
        })
    }

    pub fn with_sample_period(mut self, seconds: f64) -> Self {
        self.sample_period = Some(seconds);
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sample_period(&self) -> Option<f64> {
        self.sample_period
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Output of a quantizer plus its degeneracy flag.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbolized {
    pub sequence: SymbolSequence,
    /// Set for constant series (median split) or duplicate quantile thresholds.
    pub degenerate: bool,
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Empirical quantile with linear interpolation between order statistics.
pub(crate) fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (sorted[hi] - sorted[lo]) * frac
    }
}

pub fn median(values: &[f64]) -> f64 {
    quantile_sorted(&sorted(values), 0.5)
}

/// `1` where the value is at or above the median, `0` below.
pub fn binarize_median(series: &RealSeries) -> Symbolized {
    let med = median(series.values());
    let symbols: Vec<u64> = series.values().iter().map(|&v| u64::from(v >= med)).collect();
    let degenerate = symbols.iter().all(|&s| s == 1);
    Symbolized {
        sequence: SymbolSequence::new(symbols, 2).expect("binary symbols"),
        degenerate,
    }
}

/// Quantizes into `alphabet` symbols using the series' own `k/alphabet`
/// quantiles as thresholds; symbol `k` covers `[q_k, q_{k+1})`.
pub fn quantize_quantiles(series: &RealSeries, alphabet: u64) -> Result<Symbolized> {
    if alphabet < 2 {
        return Err(Error::InvalidParameter(format!(
            "quantization needs at least 2 symbols, got {alphabet}"
        )));
    }
    if (series.len() as u64) < alphabet {
        return Err(Error::SequenceTooShort {
            len: series.len(),
            min: alphabet as usize,
        });
    }
    let s = sorted(series.values());
    let thresholds: Vec<f64> = (1..alphabet)
        .map(|k| quantile_sorted(&s, k as f64 / alphabet as f64))
        .collect();
    let distinct = 1 + s.windows(2).filter(|w| w[0] != w[1]).count() as u64;
    let degenerate = distinct < alphabet || thresholds.windows(2).any(|w| w[0] == w[1]);
    let symbols = series
        .values()
        .iter()
        .map(|&v| thresholds.partition_point(|&t| t <= v) as u64)
        .collect();
    Ok(Symbolized {
        sequence: SymbolSequence::new(symbols, alphabet)?,
        degenerate,
    })
}

/// Auto mutual information as a function of lag.
#[derive(Debug, Clone, PartialEq)]
pub struct AmiCurve {
    /// MI in nats; index is the lag, starting at 0.
    pub mi_values: Vec<f64>,
}

impl AmiCurve {
    pub fn max_lag(&self) -> usize {
        self.mi_values.len().saturating_sub(1)
    }
}

/// Plug-in MI between the series and its lagged copy for lags `0..=max_lag`,
/// on an equal-count histogram with `bins` bins per axis.
pub fn auto_mutual_information(series: &RealSeries, max_lag: usize, bins: usize) -> Result<AmiCurve> {
    if bins < 2 {
        return Err(Error::InvalidParameter(format!("bins must be >= 2, got {bins}")));
    }
    if 2 * max_lag >= series.len() {
        return Err(Error::InvalidParameter(format!(
            "max_lag {max_lag} must be below half the series length {}",
            series.len()
        )));
    }
    let binned = quantize_quantiles(series, bins as u64)?.sequence.into_symbols();
    let mut joint = vec![0u32; bins * bins];
    let mut row = vec![0u32; bins];
    let mut col = vec![0u32; bins];
    let mi_values = (0..=max_lag)
        .map(|lag| {
            joint.iter_mut().for_each(|c| *c = 0);
            row.iter_mut().for_each(|c| *c = 0);
            col.iter_mut().for_each(|c| *c = 0);
            let pairs = binned.len() - lag;
            for (&a, &b) in binned.iter().zip(&binned[lag..]) {
                joint[a as usize * bins + b as usize] += 1;
                row[a as usize] += 1;
                col[b as usize] += 1;
            }
            let n = pairs as f64;
            let mut mi = 0.0;
            for a in 0..bins {
                for b in 0..bins {
                    let c = joint[a * bins + b];
                    if c > 0 {
                        let c = c as f64;
                        mi += c / n * (c * n / (row[a] as f64 * col[b] as f64)).ln();
                    }
                }
            }
            mi.max(0.0)
        })
        .collect();
    Ok(AmiCurve { mi_values })
}

/// Lag picked from an AMI curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LagSuggestion {
    pub lag: usize,
    /// `true` when no interior local minimum existed and the global
    /// minimum over lags >= 1 was used instead.
    pub no_local_minimum: bool,
}

/// First strict local minimum of the curve, else the global minimum over lags >= 1.
pub fn suggest_lag(curve: &AmiCurve) -> Result<LagSuggestion> {
    let mi = &curve.mi_values;
    if mi.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "AMI curve needs at least 3 lags, got {}",
            mi.len()
        )));
    }
    if let Some(lag) = (1..mi.len() - 1).find(|&t| mi[t - 1] > mi[t] && mi[t] < mi[t + 1]) {
        return Ok(LagSuggestion {
            lag,
            no_local_minimum: false,
        });
    }
    let lag = (1..mi.len())
        .min_by(|&a, &b| mi[a].total_cmp(&mi[b]).then(a.cmp(&b)))
        .expect("at least two lags");
    Ok(LagSuggestion {
        lag,
        no_local_minimum: true,
    })
}

/// `m = m_x + m_y + 1` from the minimum embedding dimensions of each series.
pub fn suggest_embedding_dim(m_x: usize, m_y: usize) -> Result<usize> {
    if m_x == 0 || m_y == 0 {
        return Err(Error::InvalidParameter(
            "minimum embedding dimensions must be >= 1".into(),
        ));
    }
    Ok(m_x + m_y + 1)
}
