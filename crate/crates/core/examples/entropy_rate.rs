//! LZ76 entropy rate of a few processes with known entropy.
//!
//! The finite-length estimate converges slowly and sits below the true rate
//! for random sources; no correction is applied.

use lezter::{entropy_rate_lz, quantize_quantiles, RealSeries, SymbolSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> lezter::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 100_000;

    let fair: Vec<u64> = (0..n).map(|_| rng.gen_range(0..2)).collect();
    let biased: Vec<u64> = (0..n).map(|_| u64::from(rng.gen_bool(0.1))).collect();
    let periodic: Vec<u64> = (0..n).map(|i| (i % 7 == 0) as u64).collect();

    let h_biased = -(0.1f64 * 0.1f64.ln() + 0.9 * 0.9f64.ln());
    println!("process            estimate   true");
    for (name, symbols, truth) in [
        ("fair coin", fair, 2f64.ln()),
        ("p=0.1 coin", biased, h_biased),
        ("period 7", periodic, 0.0),
    ] {
        let h = entropy_rate_lz(&SymbolSequence::new(symbols, 2)?)?;
        println!("{name:<18} {h:.4}     {truth:.4}");
    }

    // four-symbol quantization of gaussian-ish noise: close to ln 4
    let noise: Vec<f64> = (0..n).map(|_| (0..12).map(|_| rng.gen::<f64>()).sum::<f64>()).collect();
    let q = quantize_quantiles(&RealSeries::new(noise)?, 4)?;
    println!("{:<18} {:.4}     {:.4}", "noise, 4 symbols", entropy_rate_lz(&q.sequence)?, 4f64.ln());
    Ok(())
}
