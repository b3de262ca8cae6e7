//! CSV persistence. Reals are written with 9 significant digits.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dynsys::{SystemKind, Trajectory};
use crate::error::{Error, Result};

/// Formats a real with 9 significant digits.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.8e}")
    } else {
        format!("{x}")
    }
}

/// The value a real takes after a trip through [`fmt_real`].
pub fn round_real(x: f64) -> f64 {
    fmt_real(x).parse().expect("formatted real parses")
}

pub(crate) fn ser_real<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_real(*x))
}

pub(crate) fn ser_system<S: Serializer>(k: &SystemKind, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(k.as_str())
}

pub(crate) fn de_system<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<SystemKind, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

/// Reads one numeric column (0-based) from a CSV file with a header row.
pub fn read_column(path: impl AsRef<Path>, column: usize) -> Result<Vec<f64>> {
    read_column_from(std::fs::File::open(path)?, column)
}

pub fn read_column_from<R: Read>(reader: R, column: usize) -> Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = rec
            .get(column)
            .ok_or_else(|| Error::InvalidParameter(format!("row {}: no column {column}", i + 1)))?;
        let v: f64 = field
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("row {}: {field:?} is not a number", i + 1)))?;
        out.push(v);
    }
    Ok(out)
}

/// Writes `index,source,target`.
pub fn write_trajectory<W: Write>(writer: W, traj: &Trajectory) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["index", "source", "target"])?;
    for (i, (s, t)) in traj.source.iter().zip(&traj.target).enumerate() {
        w.write_record([i.to_string(), fmt_real(*s), fmt_real(*t)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv<W: Write, T: Serialize>(writer: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read, T: for<'de> Deserialize<'de>>(reader: R) -> Result<Vec<T>> {
    let mut rdr = csv::Reader::from_reader(reader);
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}
