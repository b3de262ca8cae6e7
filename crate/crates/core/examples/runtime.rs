//! Wall time of one global estimate at the largest sweep parameters.

use std::time::Instant;

use lezter::{global_ter, SymbolSequence, TerParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> lezter::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (m, tau, rows) = (8, 10, 10_000);
    let len = rows + m * tau;
    let x = SymbolSequence::new((0..len).map(|_| rng.gen_range(0..2)).collect(), 2)?;
    let y = SymbolSequence::new((0..len).map(|_| rng.gen_range(0..2)).collect(), 2)?;
    for k in [1, 10, 30] {
        let start = Instant::now();
        let e = global_ter(&x, &y, &TerParams::new(m, tau).surrogates(k).seed(1))?;
        println!("K={k:<3} {:>8.1?}  t_global {:.5}", start.elapsed(), e.t_global);
    }
    Ok(())
}
