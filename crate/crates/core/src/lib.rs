//! Transfer entropy rate between two time series, estimated from
//! Lempel-Ziv (LZ76) complexities of delay-embedded symbol sequences.
//!
//! The pipeline for a target `x` and source `y`:
//!
//! 1. symbolize both series ([`preprocess::binarize_median`] or
//!    [`preprocess::quantize_quantiles`]),
//! 2. embed them into rows `[y past, x past, x present]`
//!    ([`embedding::build_joint_matrix`]),
//! 3. encode each row as one extended-alphabet symbol and take LZ76 entropy
//!    rates of the full matrix and of its target columns ([`ter::joint_entropy_rate`]),
//! 4. repeat with resampled source blocks for the surrogate level and
//!    combine both directions ([`ter::global_ter`]).
//!
//! ```
//! use lezter::{global_ter, SymbolSequence, TerParams};
//!
//! let x = SymbolSequence::from_binary_str("0110100110010110").unwrap();
//! let y = SymbolSequence::from_binary_str("1011010010110100").unwrap();
//! let est = global_ter(&x, &y, &TerParams::new(2, 1).surrogates(4).seed(1)).unwrap();
//! assert_eq!(est.t_global, (est.t_yx - est.t_xy) - (est.t_yx_surr - est.t_xy_surr));
//! ```
//!
//! [`dynsys`] generates the coupled Henon, Lorenz and Rössler benchmarks and
//! [`runner`] drives seeded parameter sweeps over them.

pub mod dynsys;
pub mod embedding;
pub mod error;
pub mod lz;
pub mod preprocess;
pub mod runner;
pub mod ter;

pub use embedding::{build_joint_matrix, encode_extended_alphabet, target_submatrix, EmbeddingMatrix};
pub use error::{Error, Result};
pub use lz::{entropy_rate_lz, lz76_parse, lz76_word_count, ParseResult, SymbolSequence};
pub use preprocess::{binarize_median, quantize_quantiles, RealSeries};
pub use ter::{global_ter, joint_entropy_rate, ter_directed, SurrogateMethod, TerEstimate, TerParams};
