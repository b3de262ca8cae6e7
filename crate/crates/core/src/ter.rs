//! Transfer entropy rate through joint Lempel-Ziv complexities.
//!
//! For target `x` and source `y`:
//!
//! ```text
//! t(y→x)  = h(x_t, x_past) - h(y_past, x_past, x_t)
//! t*(y→x) = -mean_k h(y*_past, x_past, x_t)         (K surrogates)
//! T       = t(y→x) - t(x→y) - (t*(y→x) - t*(x→y))
//! ```
//!
//! Every `h` is the LZ76 plug-in rate of the encoded rows of one embedding
//! matrix, and both terms of a directed rate come from the same matrix.
//! Surrogates replace the source-past block of each row with the block of a
//! randomly drawn row. The draws for surrogate `k` come from ChaCha8 stream
//! `k` of the seed and are reused for both directions, which makes
//! `T(x, y) = -T(y, x)` hold bit for bit.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{build_joint_matrix, encode_extended_alphabet, target_submatrix, EmbeddingMatrix};
use crate::error::{Error, Result};
use crate::lz::{entropy_rate_from_count, lz76_word_count, SymbolSequence};

/// Default number of surrogate realizations.
pub const DEFAULT_SURROGATES: usize = 30;

/// How surrogate source blocks are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SurrogateMethod {
    /// Redraw rows uniformly with replacement.
    #[default]
    Bootstrap,
    /// Random permutation of the rows.
    Shuffle,
}

impl std::str::FromStr for SurrogateMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "bootstrap" => Ok(Self::Bootstrap),
            "shuffle" => Ok(Self::Shuffle),
            other => Err(Error::InvalidParameter(format!("unknown surrogate method {other:?}"))),
        }
    }
}

impl std::fmt::Display for SurrogateMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Bootstrap => "bootstrap",
            Self::Shuffle => "shuffle",
        })
    }
}

/// Parameters of one global estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TerParams {
    pub m: usize,
    pub tau: usize,
    pub surrogates: usize,
    pub seed: u64,
    pub method: SurrogateMethod,
}

impl TerParams {
    pub fn new(m: usize, tau: usize) -> Self {
        Self {
            m,
            tau,
            surrogates: DEFAULT_SURROGATES,
            seed: 0,
            method: SurrogateMethod::Bootstrap,
        }
    }

    pub fn surrogates(mut self, k: usize) -> Self {
        self.surrogates = k;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn method(mut self, method: SurrogateMethod) -> Self {
        self.method = method;
        self
    }
}

/// Directed rates, their surrogate levels and the global estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerEstimate {
    pub t_yx: f64,
    pub t_xy: f64,
    pub t_yx_surr: f64,
    pub t_xy_surr: f64,
    pub t_global: f64,
    pub surrogates: usize,
    pub m: usize,
    pub tau: usize,
    pub seed: u64,
}

/// Global estimator from its four components.
pub fn combine(t_yx: f64, t_xy: f64, t_yx_surr: f64, t_xy_surr: f64) -> f64 {
    (t_yx - t_xy) - (t_yx_surr - t_xy_surr)
}

/// LZ entropy rate of the encoded rows, `C·(d·ln α + ln C)/N`.
pub fn joint_entropy_rate(v: &EmbeddingMatrix) -> Result<f64> {
    if v.rows() < 2 {
        return Err(Error::SequenceTooShort {
            len: v.rows(),
            min: 2,
        });
    }
    let z = encode_extended_alphabet(v)?;
    let c = lz76_word_count(&z)?;
    let ln_alphabet = v.cols() as f64 * (v.alphabet() as f64).ln();
    Ok(entropy_rate_from_count(c, v.rows(), ln_alphabet))
}

/// `h(target past, present) - h(source past, target past, present)` on one matrix.
pub fn directed_from_matrix(v: &EmbeddingMatrix) -> Result<f64> {
    Ok(joint_entropy_rate(&target_submatrix(v)?)? - joint_entropy_rate(v)?)
}

/// Directed transfer entropy rate from `source` to `target`.
pub fn ter_directed(target: &SymbolSequence, source: &SymbolSequence, m: usize, tau: usize) -> Result<f64> {
    directed_from_matrix(&build_joint_matrix(target, source, m, tau)?)
}

/// Row index draws for one surrogate realization.
pub fn draw_surrogate_rows<R: Rng + ?Sized>(rows: usize, method: SurrogateMethod, rng: &mut R) -> Vec<usize> {
    match method {
        SurrogateMethod::Bootstrap => (0..rows).map(|_| rng.gen_range(0..rows)).collect(),
        SurrogateMethod::Shuffle => {
            let mut idx: Vec<usize> = (0..rows).collect();
            idx.shuffle(rng);
            idx
        }
    }
}

/// `K` draw vectors, surrogate `k` from stream `k` of ChaCha8 seeded with `seed`.
pub fn surrogate_draws(rows: usize, surrogates: usize, method: SurrogateMethod, seed: u64) -> Vec<Vec<usize>> {
    (0..surrogates)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            draw_surrogate_rows(rows, method, &mut rng)
        })
        .collect()
}

/// `-mean_k h(V_k)` for the given per-surrogate row draws.
pub fn surrogate_ter_from_draws(v: &EmbeddingMatrix, draws: &[Vec<usize>]) -> Result<f64> {
    if draws.is_empty() {
        return Err(Error::InvalidParameter("need at least one surrogate".into()));
    }
    let mut sum = 0.0;
    for idx in draws {
        sum += joint_entropy_rate(&v.with_resampled_source(idx)?)?;
    }
    Ok(-(sum / draws.len() as f64))
}

/// Surrogate level with `surrogates` draws taken from `rng`.
pub fn surrogate_ter<R: Rng + ?Sized>(
    v: &EmbeddingMatrix,
    surrogates: usize,
    method: SurrogateMethod,
    rng: &mut R,
) -> Result<f64> {
    if surrogates == 0 {
        return Err(Error::InvalidParameter("need at least one surrogate".into()));
    }
    let draws: Vec<Vec<usize>> = (0..surrogates)
        .map(|_| draw_surrogate_rows(v.rows(), method, rng))
        .collect();
    surrogate_ter_from_draws(v, &draws)
}

/// Full estimate with `x` as target and `y` as source.
pub fn global_ter(x: &SymbolSequence, y: &SymbolSequence, params: &TerParams) -> Result<TerEstimate> {
    if params.surrogates == 0 {
        return Err(Error::InvalidParameter("need at least one surrogate".into()));
    }
    let v_yx = build_joint_matrix(x, y, params.m, params.tau)?;
    let v_xy = build_joint_matrix(y, x, params.m, params.tau)?;
    let draws = surrogate_draws(v_yx.rows(), params.surrogates, params.method, params.seed);

    let t_yx = directed_from_matrix(&v_yx)?;
    let t_xy = directed_from_matrix(&v_xy)?;
    let t_yx_surr = surrogate_ter_from_draws(&v_yx, &draws)?;
    let t_xy_surr = surrogate_ter_from_draws(&v_xy, &draws)?;
    Ok(TerEstimate {
        t_yx,
        t_xy,
        t_yx_surr,
        t_xy_surr,
        t_global: combine(t_yx, t_xy, t_yx_surr, t_xy_surr),
        surrogates: params.surrogates,
        m: params.m,
        tau: params.tau,
        seed: params.seed,
    })
}
