//! LZ76 production parsing and the Lempel-Ziv entropy-rate estimator.
//!
//! A sequence is cut into words from left to right. The word starting at
//! position `p` ends at the first `n >= p` such that `s[p..=n]` is not a
//! substring of `s[..n]` (the search window may overlap the word itself).
//! If the sequence runs out before the current word becomes novel, the
//! leftover fragment still counts as a word.
//!
//! The search is done with an online suffix automaton over the already
//! consumed prefix, so parsing is linear in the sequence length (expected,
//! transitions live in a hash map because extended alphabets can be huge).
//!
//! ```text
//! 100110111001010001011  ->  1 · 0 · 01 · 101 · 1100 · 1010 · 001011   (C = 7)
//! ```
//!
//! The entropy rate is the finite-length plug-in
//!
//! ```text
//! h = C · (ln α + ln C) / T      [nats / symbol]
//! ```

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// A finite sequence over the integer alphabet `{0, .., alphabet - 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSequence {
    symbols: Vec<u64>,
    alphabet: u64,
}

impl SymbolSequence {
    /// Validates every symbol against the alphabet.
    pub fn new(symbols: Vec<u64>, alphabet: u64) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if let Some((position, &symbol)) = symbols.iter().enumerate().find(|(_, &s)| s >= alphabet) {
            return Err(Error::SymbolOutOfAlphabet {
                symbol,
                position,
                alphabet,
            });
        }
        Ok(Self { symbols, alphabet })
    }

    /// Builds a binary sequence from a string of `'0'`/`'1'` characters.
    pub fn from_binary_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::SymbolOutOfAlphabet {
                    symbol: other as u64,
                    position,
                    alphabet: 2,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols, 2)
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    pub fn alphabet(&self) -> u64 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Prefix of length `len` (clamped), same alphabet.
    pub fn prefix(&self, len: usize) -> Self {
        Self {
            symbols: self.symbols[..len.min(self.symbols.len())].to_vec(),
            alphabet: self.alphabet,
        }
    }

    pub fn into_symbols(self) -> Vec<u64> {
        self.symbols
    }
}

/// Outcome of an LZ76 parse: word count and 1-based inclusive word ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseResult {
    pub word_boundaries: Vec<usize>,
}

impl ParseResult {
    /// Number of words `C`.
    pub fn word_count(&self) -> usize {
        self.word_boundaries.len()
    }

    /// Splits `symbols` into the parsed words.
    pub fn words<'a>(&self, symbols: &'a [u64]) -> Vec<&'a [u64]> {
        let mut start = 0;
        self.word_boundaries
            .iter()
            .map(|&end| {
                let word = &symbols[start..end];
                start = end;
                word
            })
            .collect()
    }
}

const NO_LINK: u32 = u32::MAX;

/// Online suffix automaton with hashed transitions.
struct SuffixAutomaton {
    len: Vec<u32>,
    link: Vec<u32>,
    // symbols with an outgoing edge, per state; needed to copy edges on clone
    edges: Vec<Vec<u64>>,
    trans: FxHashMap<(u32, u64), u32>,
    last: u32,
}

impl SuffixAutomaton {
    fn with_capacity(n: usize) -> Self {
        let states = 2 * n + 1;
        let mut sam = Self {
            len: Vec::with_capacity(states),
            link: Vec::with_capacity(states),
            edges: Vec::with_capacity(states),
            trans: FxHashMap::with_capacity_and_hasher(3 * n + 1, Default::default()),
            last: 0,
        };
        sam.push_state(0, NO_LINK);
        sam
    }

    fn push_state(&mut self, len: u32, link: u32) -> u32 {
        self.len.push(len);
        self.link.push(link);
        self.edges.push(Vec::new());
        (self.len.len() - 1) as u32
    }

    fn next(&self, state: u32, symbol: u64) -> Option<u32> {
        self.trans.get(&(state, symbol)).copied()
    }

    fn set(&mut self, state: u32, symbol: u64, target: u32) {
        if self.trans.insert((state, symbol), target).is_none() {
            self.edges[state as usize].push(symbol);
        }
    }

    /// Appends `symbol`. Returns `(split, clone)` when a state was split.
    fn extend(&mut self, symbol: u64) -> Option<(u32, u32)> {
        let cur = self.push_state(self.len[self.last as usize] + 1, NO_LINK);
        let mut p = self.last;
        self.last = cur;
        while p != NO_LINK && self.next(p, symbol).is_none() {
            self.set(p, symbol, cur);
            p = self.link[p as usize];
        }
        if p == NO_LINK {
            self.link[cur as usize] = 0;
            return None;
        }
        let q = self.next(p, symbol).expect("edge checked above");
        if self.len[p as usize] + 1 == self.len[q as usize] {
            self.link[cur as usize] = q;
            return None;
        }
        let clone = self.push_state(self.len[p as usize] + 1, self.link[q as usize]);
        let copied: Vec<(u64, u32)> = self.edges[q as usize]
            .iter()
            .map(|&s| (s, self.trans[&(q, s)]))
            .collect();
        for (s, target) in copied {
            self.set(clone, s, target);
        }
        while p != NO_LINK && self.next(p, symbol) == Some(q) {
            self.trans.insert((p, symbol), clone);
            p = self.link[p as usize];
        }
        self.link[q as usize] = clone;
        self.link[cur as usize] = clone;
        Some((q, clone))
    }
}

/// Word boundaries of the LZ76 parse of a raw symbol slice.
pub(crate) fn parse_symbols(symbols: &[u64]) -> Vec<usize> {
    let mut sam = SuffixAutomaton::with_capacity(symbols.len());
    let mut boundaries = Vec::new();
    // state holding the current partial word and that word's length
    let mut word_state = 0u32;
    let mut word_len = 0u32;

    for (n, &symbol) in symbols.iter().enumerate() {
        match sam.next(word_state, symbol) {
            Some(next) => {
                word_state = next;
                word_len += 1;
                if let Some((split, clone)) = sam.extend(symbol) {
                    if split == word_state && word_len <= sam.len[clone as usize] {
                        word_state = clone;
                    }
                }
            }
            None => {
                boundaries.push(n + 1);
                sam.extend(symbol);
                word_state = 0;
                word_len = 0;
            }
        }
    }
    if word_len > 0 {
        boundaries.push(symbols.len());
    }
    boundaries
}

/// LZ76 production parse of `seq`.
pub fn lz76_parse(seq: &SymbolSequence) -> Result<ParseResult> {
    if seq.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(ParseResult {
        word_boundaries: parse_symbols(seq.symbols()),
    })
}

/// LZ76 word count `C`.
pub fn lz76_word_count(seq: &SymbolSequence) -> Result<usize> {
    lz76_parse(seq).map(|p| p.word_count())
}

/// `C · (ln α + ln C) / T` with `ln α` supplied by the caller.
///
/// Extended alphabets pass `d · ln(base)` so no `α^d` ever has to be formed
/// as a float.
pub fn entropy_rate_from_count(word_count: usize, len: usize, ln_alphabet: f64) -> f64 {
    let c = word_count as f64;
    c * (ln_alphabet + c.ln()) / len as f64
}

/// Lempel-Ziv entropy-rate estimate in nats per symbol.
pub fn entropy_rate_lz(seq: &SymbolSequence) -> Result<f64> {
    if seq.len() < 2 {
        return Err(Error::SequenceTooShort {
            len: seq.len(),
            min: 2,
        });
    }
    let c = lz76_word_count(seq)?;
    Ok(entropy_rate_from_count(c, seq.len(), (seq.alphabet() as f64).ln()))
}
