//! Sweep configuration file.
//!
//! A flat `key = value` document, one key per line, `#` starts a comment,
//! lists are comma-separated:
//!
//! ```text
//! system = henon-henon
//! epsilon_values = 0, 0.1, 0.2
//! lengths = 3000, 5000
//! m_values = 5
//! tau_values = 1
//! realizations = 200
//! surrogates = 30
//! master_seed = 7
//! binarization = median        # or quantile:4
//! discard = 1000
//! output_path = henon.csv
//! ```
//!
//! `discard` defaults to the system's transient length. Two optional keys
//! are accepted besides the required ones: `surrogate_method`
//! (`bootstrap` | `shuffle`) and `workers` (thread count, 0 = all cores).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::dynsys::SystemKind;
use crate::error::{Error, Result};
use crate::ter::SurrogateMethod;

/// How raw series become symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binarization {
    Median,
    Quantile(u64),
}

impl FromStr for Binarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "median" {
            return Ok(Self::Median);
        }
        let alpha = s
            .strip_prefix("quantile:")
            .and_then(|a| a.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::Config(format!("binarization must be `median` or `quantile:<n>`, got {s:?}")))?;
        if alpha < 2 {
            return Err(Error::Config("quantile binarization needs at least 2 symbols".into()));
        }
        Ok(Self::Quantile(alpha))
    }
}

impl std::fmt::Display for Binarization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Median => f.write_str("median"),
            Self::Quantile(a) => write!(f, "quantile:{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub system: SystemKind,
    pub epsilon_values: Vec<f64>,
    pub lengths: Vec<usize>,
    pub m_values: Vec<usize>,
    pub tau_values: Vec<usize>,
    pub realizations: usize,
    pub surrogates: usize,
    pub master_seed: u64,
    pub binarization: Binarization,
    pub discard: usize,
    pub output_path: PathBuf,
    pub surrogate_method: SurrogateMethod,
    pub workers: usize,
    /// Observed `(source, target)` variable indices, see [`SystemKind::default_observables`].
    pub observables: (usize, usize),
}

impl SweepConfig {
    /// Config with a single value per list and the usual defaults elsewhere.
    pub fn new(system: SystemKind, output_path: impl Into<PathBuf>) -> Self {
        Self {
            system,
            epsilon_values: vec![0.0],
            lengths: vec![3000],
            m_values: vec![5],
            tau_values: vec![1],
            realizations: 1,
            surrogates: crate::ter::DEFAULT_SURROGATES,
            master_seed: 0,
            binarization: Binarization::Median,
            discard: system.default_discard(),
            output_path: output_path.into(),
            surrogate_method: SurrogateMethod::Bootstrap,
            workers: 0,
            observables: system.default_observables(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let empty = [
            ("epsilon_values", self.epsilon_values.is_empty()),
            ("lengths", self.lengths.is_empty()),
            ("m_values", self.m_values.is_empty()),
            ("tau_values", self.tau_values.is_empty()),
        ];
        if let Some((name, _)) = empty.iter().find(|(_, e)| *e) {
            return Err(Error::Config(format!("{name} must not be empty")));
        }
        if self.realizations == 0 {
            return Err(Error::Config("realizations must be >= 1".into()));
        }
        if self.surrogates == 0 {
            return Err(Error::Config("surrogates must be >= 1".into()));
        }
        if self.epsilon_values.iter().any(|e| !(*e >= 0.0) || !e.is_finite()) {
            return Err(Error::Config("epsilon_values must be finite and >= 0".into()));
        }
        if self.lengths.contains(&0) || self.m_values.contains(&0) || self.tau_values.contains(&0) {
            return Err(Error::Config("lengths, m_values and tau_values must be >= 1".into()));
        }
        let dim = self.system.subsystem_dim();
        if self.observables.0 >= dim || self.observables.1 >= dim {
            return Err(Error::Config(format!("source_var and target_var must be < {dim} for {}", self.system)));
        }
        Ok(())
    }

    /// Summary file next to the record file: `x.csv` -> `x.summary.csv`.
    pub fn summary_path(&self) -> PathBuf {
        summary_path_for(&self.output_path)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }
}

pub(crate) fn summary_path_for(output: &Path) -> PathBuf {
    let stem = output.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
    output.with_file_name(format!("{stem}.summary.csv"))
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| Error::Config(format!("{key}: cannot parse {s:?}"))))
        .collect()
}

fn scalar<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {value:?}")))
}

impl FromStr for SweepConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
            let key = key.trim();
            if entries.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(Error::Config(format!("duplicate key {key:?}")));
            }
        }
        let mut take = |key: &str| entries.remove(key);
        let required = |key: &str, v: Option<String>| v.ok_or_else(|| Error::Config(format!("missing key {key:?}")));

        let system: SystemKind = required("system", take("system"))?.parse()?;
        let mut config = SweepConfig {
            system,
            epsilon_values: list("epsilon_values", &required("epsilon_values", take("epsilon_values"))?)?,
            lengths: list("lengths", &required("lengths", take("lengths"))?)?,
            m_values: list("m_values", &required("m_values", take("m_values"))?)?,
            tau_values: list("tau_values", &required("tau_values", take("tau_values"))?)?,
            realizations: scalar("realizations", &required("realizations", take("realizations"))?)?,
            surrogates: scalar("surrogates", &required("surrogates", take("surrogates"))?)?,
            master_seed: scalar("master_seed", &required("master_seed", take("master_seed"))?)?,
            binarization: required("binarization", take("binarization"))?.parse()?,
            discard: system.default_discard(),
            output_path: PathBuf::from(required("output_path", take("output_path"))?),
            surrogate_method: SurrogateMethod::Bootstrap,
            workers: 0,
            observables: system.default_observables(),
        };
        if let Some(v) = take("discard") {
            config.discard = scalar("discard", &v)?;
        }
        if let Some(v) = take("surrogate_method") {
            config.surrogate_method = v.parse()?;
        }
        if let Some(v) = take("workers") {
            config.workers = scalar("workers", &v)?;
        }
        if let Some(v) = take("source_var") {
            config.observables.0 = scalar("source_var", &v)?;
        }
        if let Some(v) = take("target_var") {
            config.observables.1 = scalar("target_var", &v)?;
        }
        if let Some(key) = entries.keys().next() {
            return Err(Error::Config(format!("unknown key {key:?}")));
        }
        config.validate()?;
        Ok(config)
    }
}
