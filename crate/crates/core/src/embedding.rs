//! Delay embedding of a (target, source) pair and extended-alphabet encoding.
//!
//! With target `x`, source `y`, dimension `m` and lag `τ`, row `n` of the
//! joint matrix (0-based, `t = m·τ + n`) is
//!
//! ```text
//! [ y[t-mτ], .., y[t-τ] | x[t-mτ], .., x[t-τ] | x[t] ]
//!     source past            target past        present
//! ```
//!
//! giving `N = T - m·τ` rows of `2m + 1` symbols. A row is encoded as the
//! single symbol `Σ_i α^i · v_i` (column `i` counted from 0).

use crate::error::{Error, Result};
use crate::lz::SymbolSequence;

/// Which columns a matrix carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// source past, target past, target present (`2m + 1` columns)
    Joint,
    /// target past, target present (`m + 1` columns)
    TargetOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnRole {
    SourcePast,
    TargetPast,
    TargetPresent,
}

/// Row-major matrix of embedded symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingMatrix {
    data: Vec<u64>,
    rows: usize,
    dim: usize,
    alphabet: u64,
    layout: Layout,
}

impl EmbeddingMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        match self.layout {
            Layout::Joint => 2 * self.dim + 1,
            Layout::TargetOnly => self.dim + 1,
        }
    }

    /// Embedding dimension `m`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> u64 {
        self.alphabet
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn row(&self, n: usize) -> &[u64] {
        let d = self.cols();
        &self.data[n * d..(n + 1) * d]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u64]> {
        self.data.chunks_exact(self.cols())
    }

    pub fn column_roles(&self) -> Vec<ColumnRole> {
        let mut roles = Vec::with_capacity(self.cols());
        if self.layout == Layout::Joint {
            roles.extend(std::iter::repeat_n(ColumnRole::SourcePast, self.dim));
        }
        roles.extend(std::iter::repeat_n(ColumnRole::TargetPast, self.dim));
        roles.push(ColumnRole::TargetPresent);
        roles
    }

    /// Rebuilds a joint matrix with the source-past block of row `n` taken
    /// from row `source_rows[n]`. Target columns are copied unchanged.
    pub fn with_resampled_source(&self, source_rows: &[usize]) -> Result<Self> {
        if self.layout != Layout::Joint {
            return Err(Error::InvalidParameter(
                "source resampling needs a joint matrix".into(),
            ));
        }
        if source_rows.len() != self.rows {
            return Err(Error::InvalidParameter(format!(
                "expected {} resample indices, got {}",
                self.rows,
                source_rows.len()
            )));
        }
        let d = self.cols();
        let m = self.dim;
        let mut data = Vec::with_capacity(self.data.len());
        for (n, &src) in source_rows.iter().enumerate() {
            if src >= self.rows {
                return Err(Error::InvalidParameter(format!(
                    "resample index {src} out of range for {} rows",
                    self.rows
                )));
            }
            data.extend_from_slice(&self.data[src * d..src * d + m]);
            data.extend_from_slice(&self.data[n * d + m..(n + 1) * d]);
        }
        Ok(Self { data, ..*self })
    }

    /// Same matrix with the source-past and target-past blocks swapped.
    pub fn with_past_blocks_swapped(&self) -> Result<Self> {
        if self.layout != Layout::Joint {
            return Err(Error::InvalidParameter("block swap needs a joint matrix".into()));
        }
        let m = self.dim;
        let mut data = Vec::with_capacity(self.data.len());
        for row in self.iter_rows() {
            data.extend_from_slice(&row[m..2 * m]);
            data.extend_from_slice(&row[..m]);
            data.push(row[2 * m]);
        }
        Ok(Self { data, ..*self })
    }
}

fn check_params(len: usize, m: usize, tau: usize) -> Result<usize> {
    if m == 0 || tau == 0 {
        return Err(Error::InvalidParameter(format!(
            "embedding needs m >= 1 and tau >= 1, got m={m}, tau={tau}"
        )));
    }
    let span = m.checked_mul(tau).ok_or_else(|| {
        Error::InvalidParameter(format!("m*tau overflows for m={m}, tau={tau}"))
    })?;
    if len <= span {
        return Err(Error::SeriesTooShortForEmbedding { len, span });
    }
    Ok(len - span)
}

/// Joint matrix `[source past, target past, target present]`.
pub fn build_joint_matrix(
    target: &SymbolSequence,
    source: &SymbolSequence,
    m: usize,
    tau: usize,
) -> Result<EmbeddingMatrix> {
    if target.len() != source.len() {
        return Err(Error::InvalidParameter(format!(
            "target and source lengths differ: {} vs {}",
            target.len(),
            source.len()
        )));
    }
    if target.alphabet() != source.alphabet() {
        return Err(Error::InvalidParameter(format!(
            "target and source alphabets differ: {} vs {}",
            target.alphabet(),
            source.alphabet()
        )));
    }
    let rows = check_params(target.len(), m, tau)?;
    let (x, y) = (target.symbols(), source.symbols());
    let mut data = Vec::with_capacity(rows * (2 * m + 1));
    for n in 0..rows {
        let t = m * tau + n;
        data.extend((1..=m).rev().map(|k| y[t - k * tau]));
        data.extend((1..=m).rev().map(|k| x[t - k * tau]));
        data.push(x[t]);
    }
    Ok(EmbeddingMatrix {
        data,
        rows,
        dim: m,
        alphabet: target.alphabet(),
        layout: Layout::Joint,
    })
}

/// The last `m + 1` columns of a joint matrix.
pub fn target_submatrix(v: &EmbeddingMatrix) -> Result<EmbeddingMatrix> {
    if v.layout != Layout::Joint {
        return Err(Error::InvalidParameter(
            "target submatrix needs a joint matrix".into(),
        ));
    }
    let m = v.dim;
    let data = v.iter_rows().flat_map(|r| r[m..].iter().copied()).collect();
    Ok(EmbeddingMatrix {
        data,
        layout: Layout::TargetOnly,
        ..*v
    })
}

/// `base^cols`, or an overflow error above `2^63`.
pub fn extended_alphabet_size(base: u64, cols: usize) -> Result<u64> {
    u32::try_from(cols)
        .ok()
        .and_then(|c| base.checked_pow(c))
        .filter(|&size| size <= 1 << 63)
        .ok_or(Error::AlphabetOverflow {
            alphabet: base,
            columns: cols,
        })
}

/// Encodes each row as `Σ_i α^i · v_i`; output alphabet is `α^d`.
pub fn encode_extended_alphabet(v: &EmbeddingMatrix) -> Result<SymbolSequence> {
    let size = extended_alphabet_size(v.alphabet, v.cols())?;
    let symbols = v
        .iter_rows()
        .map(|row| row.iter().rev().fold(0u64, |acc, &s| acc * v.alphabet + s))
        .collect();
    SymbolSequence::new(symbols, size)
}

/// Inverse of the row encoding.
pub fn decode_row(code: u64, alphabet: u64, cols: usize) -> Vec<u64> {
    let mut rest = code;
    (0..cols)
        .map(|_| {
            let s = rest % alphabet;
            rest /= alphabet;
            s
        })
        .collect()
}
