use thiserror::Error;

/// Errors raised by the estimator, the generators and the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("symbol out of alphabet: {symbol} at position {position} (alphabet size {alphabet})")]
    SymbolOutOfAlphabet {
        symbol: u64,
        position: usize,
        alphabet: u64,
    },

    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,

    #[error("sequence too short: length {len}, need at least {min}")]
    SequenceTooShort { len: usize, min: usize },

    #[error("series too short for embedding: length {len} <= m*tau = {span}")]
    SeriesTooShortForEmbedding { len: usize, span: usize },

    #[error("alphabet overflow: {alphabet}^{columns} exceeds 2^63")]
    AlphabetOverflow { alphabet: u64, columns: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("orbit diverged after {retries} initial-condition draws")]
    Diverged { retries: usize },

    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },

    #[error("integration exceeded {max_steps} steps at t = {t}")]
    TooManySteps { t: f64, max_steps: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
