//! Parse a binary string into LZ76 words.
//!
//! ```text
//! cargo run --example lz76_parsing -- 100110111001010001011
//! ```

use lezter::{lz76_parse, SymbolSequence};

fn main() -> lezter::Result<()> {
    let bits = std::env::args().nth(1).unwrap_or_else(|| "100110111001010001011".into());
    let seq = SymbolSequence::from_binary_str(&bits)?;
    let parse = lz76_parse(&seq)?;
    let words: Vec<String> = parse
        .words(seq.symbols())
        .into_iter()
        .map(|w| w.iter().map(|s| s.to_string()).collect())
        .collect();
    println!("{bits}");
    println!("{} words: {}", parse.word_count(), words.join("."));
    Ok(())
}
