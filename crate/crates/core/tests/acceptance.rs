//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

mod support;

use std::time::{Duration, Instant};

use lezter::dynsys::ode::{dp45_fixed_step, integrate_dp45, Dp45Options};
use lezter::dynsys::{simulate, SystemKind, SystemSpec};
use lezter::runner::sweep::split_seed;
use lezter::runner::summary::quantile;
use lezter::{binarize_median, entropy_rate_lz, global_ter, lz76_parse, ter_directed, RealSeries, SymbolSequence, TerParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MASTER: u64 = 0x5eed_2024;
const REALIZATIONS: usize = 50;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    quantile(&s, 0.5)
}

fn iqr(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    quantile(&s, 0.75) - quantile(&s, 0.25)
}

fn binary(bits: &str) -> SymbolSequence {
    SymbolSequence::from_binary_str(bits).unwrap()
}

fn c1_parse_oracle() -> Outcome {
    let seq = binary("100110111001010001011");
    let start = Instant::now();
    let parse = lz76_parse(&seq).unwrap();
    let elapsed = start.elapsed();
    let ok = parse.word_boundaries == [1, 2, 4, 7, 11, 15, 21] && elapsed < Duration::from_millis(1);
    outcome(ok, format!("C={} boundaries {:?} in {elapsed:?} (< 1 ms)", parse.word_count(), parse.word_boundaries))
}

// Word boundaries by direct substring search: the word starting at p ends at
// the first n whose fragment s[p..=n] is absent from s[..n].
fn naive_boundaries(s: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 0;
    while p < s.len() {
        let mut n = p;
        loop {
            let word = &s[p..=n];
            let seen = s[..n].windows(word.len()).any(|w| w == word);
            if !seen || n + 1 == s.len() {
                break;
            }
            n += 1;
        }
        out.push(n + 1);
        p = n + 1;
    }
    out
}

fn c2_brute_force() -> Outcome {
    let mut cases = 0;
    let mut mismatches = 0;
    for len in 1..=12usize {
        for bits in 0u32..(1 << len) {
            let s: Vec<u64> = (0..len).map(|i| u64::from(bits >> i & 1)).collect();
            let lib = lz76_parse(&SymbolSequence::new(s.clone(), 2).unwrap()).unwrap();
            if lib.word_boundaries != naive_boundaries(&s) {
                mismatches += 1;
            }
            cases += 1;
        }
    }
    outcome(mismatches == 0, format!("{cases} sequences (all lengths 1..=12), {mismatches} mismatches"))
}

fn c3_entropy_rate() -> Outcome {
    let ln2 = 2f64.ln();
    let cases = [
        (binary("100110111001010001011"), 7.0 * (ln2 + 7f64.ln()) / 21.0),
        (SymbolSequence::new(vec![0; 10_000], 2).unwrap(), 2.0 * (ln2 + ln2) / 10_000.0),
        (binary("01"), 4f64.ln()),
    ];
    let worst = cases
        .iter()
        .map(|(s, want)| (entropy_rate_lz(s).unwrap() - want).abs())
        .fold(0.0, f64::max);
    outcome(worst < 1e-12, format!("max abs error {worst:.2e} (< 1e-12)"))
}

fn c4_constant_closed_form() -> Outcome {
    let x = SymbolSequence::new(vec![1; 102], 2).unwrap();
    let t = ter_directed(&x, &x, 2, 1).unwrap();
    let want = -4.0 * 2f64.ln() / 100.0;
    let err = (t - want).abs();
    outcome(err < 1e-12, format!("t={t:.12} want {want:.12}, error {err:.2e} (< 1e-12)"))
}

fn c5_antisymmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER);
    let mut bad = 0;
    let mut nonzero = 0;
    for i in 0..100u64 {
        let len = rng.gen_range(200..2000);
        let p = rng.gen_range(0.2..0.8);
        let x: Vec<u64> = (0..len).map(|_| u64::from(rng.gen_bool(p))).collect();
        // half the pairs carry a lagged copy so the estimator is far from zero
        let y: Vec<u64> = if i % 2 == 0 {
            (0..len).map(|_| u64::from(rng.gen_bool(0.5))).collect()
        } else {
            (0..len).map(|t| if rng.gen_bool(0.8) { x[(t + 1) % len] } else { rng.gen_range(0..2) }).collect()
        };
        let (x, y) = (SymbolSequence::new(x, 2).unwrap(), SymbolSequence::new(y, 2).unwrap());
        let params = TerParams::new(rng.gen_range(1..5), rng.gen_range(1..4)).surrogates(rng.gen_range(1..10)).seed(i);
        let a = global_ter(&x, &y, &params).unwrap().t_global;
        let b = global_ter(&y, &x, &params).unwrap().t_global;
        if a != 0.0 {
            nonzero += 1;
        }
        // bit comparison except at zero, where +0 and -0 are the same value
        if !(a == -b && (a == 0.0 || a.to_bits() == (-b).to_bits())) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("100 pairs ({nonzero} nonzero), {bad} violations"))
}

fn iid_symbols(rng: &mut ChaCha8Rng, len: usize) -> SymbolSequence {
    SymbolSequence::new((0..len).map(|_| rng.gen_range(0..2)).collect(), 2).unwrap()
}

fn c6_null_calibration() -> Outcome {
    let band = support::load_null_band();
    let start = Instant::now();
    let values: Vec<f64> = (0..REALIZATIONS as u64)
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(split_seed(MASTER, &[6, s]));
            let x = iid_symbols(&mut rng, 10_000);
            let y = iid_symbols(&mut rng, 10_000);
            global_ter(&x, &y, &TerParams::new(3, 1).surrogates(30).seed(s)).unwrap().t_global
        })
        .collect();
    let elapsed = start.elapsed();
    let med = median(&values);
    let [lo, hi] = band.global_band;
    let ok = lo <= med && med <= hi && elapsed < Duration::from_secs(60);
    outcome(ok, format!("median {med:.5} in [{lo:.5}, {hi:.5}] from {} oracle samples, {elapsed:.1?} (< 60 s)", band.samples))
}

fn binarized(v: Vec<f64>) -> SymbolSequence {
    binarize_median(&RealSeries::new(v).unwrap()).sequence
}

/// t_global over `REALIZATIONS` trajectories; the seed depends only on the realization.
fn realizations(kind: SystemKind, epsilon: f64, length: usize, m: usize, tau: usize) -> Vec<f64> {
    (0..REALIZATIONS as u64)
        .map(|r| {
            let seed = split_seed(MASTER, &[kind as u64, length as u64, r]);
            let traj = simulate(&SystemSpec::new(kind, epsilon, length, seed)).unwrap();
            let params = TerParams::new(m, tau).surrogates(30).seed(seed);
            global_ter(&binarized(traj.target), &binarized(traj.source), &params).unwrap().t_global
        })
        .collect()
}

struct Henon {
    eps0: Vec<f64>,
    eps04: Vec<f64>,
    eps09: Vec<f64>,
    elapsed_direction: Duration,
}

fn henon_runs() -> Henon {
    let start = Instant::now();
    let eps0 = realizations(SystemKind::HenonHenon, 0.0, 5000, 5, 1);
    let eps04 = realizations(SystemKind::HenonHenon, 0.4, 5000, 5, 1);
    let elapsed_direction = start.elapsed();
    let eps09 = realizations(SystemKind::HenonHenon, 0.9, 5000, 5, 1);
    Henon { eps0, eps04, eps09, elapsed_direction }
}

fn c7_henon_direction(h: &Henon) -> Outcome {
    let positive = h.eps04.iter().filter(|&&t| t > 0.0).count();
    let (m04, m0) = (median(&h.eps04), median(&h.eps0));
    let ok = positive * 5 >= REALIZATIONS * 4 && m04 > m0 && h.elapsed_direction < Duration::from_secs(300);
    outcome(
        ok,
        format!(
            "{positive}/{REALIZATIONS} positive at eps=0.4 (>= 80%), median {m04:.4} > {m0:.4} at eps=0, {:.1?} (< 300 s)",
            h.elapsed_direction
        ),
    )
}

fn c8_henon_sync(h: &Henon) -> Outcome {
    let abs09: Vec<f64> = h.eps09.iter().map(|t| t.abs()).collect();
    let (a, b) = (median(&abs09), median(&h.eps04));
    outcome(a < b, format!("median |t| at eps=0.9 {a:.4} < median t at eps=0.4 {b:.4}"))
}

fn c9_variance() -> Outcome {
    let short = realizations(SystemKind::HenonHenon, 0.4, 3000, 5, 1);
    let long = realizations(SystemKind::HenonHenon, 0.4, 10_000, 5, 1);
    let (a, b) = (iqr(&long), iqr(&short));
    outcome(a < b, format!("IQR {a:.4} at N=10000 < {b:.4} at N=3000"))
}

fn c10_false_coupling() -> Outcome {
    let v = realizations(SystemKind::RosslerLorenz, 0.0, 3000, 7, 10);
    let med = median(&v);
    let positive = v.iter().filter(|&&t| t > 0.0).count();
    let (s, t) = SystemKind::RosslerLorenz.default_observables();
    outcome(
        med > 0.0,
        format!("median {med:.4} > 0 ({positive}/{REALIZATIONS} positive), observables y{} -> x{}", s + 1, t + 1),
    )
}

fn c11_runtime() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(MASTER, &[11]));
    let len = 10_000 + 80;
    let x = iid_symbols(&mut rng, len);
    let y = iid_symbols(&mut rng, len);
    let start = Instant::now();
    global_ter(&x, &y, &TerParams::new(8, 10).surrogates(30).seed(11)).unwrap();
    let elapsed = start.elapsed();
    outcome(elapsed < Duration::from_secs(3), format!("m=8 tau=10 N=10000 K=30 in {elapsed:.2?} (< 3 s)"))
}

fn c12_integrator() -> Outcome {
    let decay = |_: f64, y: &[f64], dy: &mut [f64]| dy[0] = -y[0];
    let samples = integrate_dp45(decay, &[1.0], 0.5, 11, &Dp45Options::default()).unwrap();
    let err = samples
        .iter()
        .enumerate()
        .map(|(k, y)| (y[0] - (-0.5 * k as f64).exp()).abs())
        .fold(0.0, f64::max);
    let hs = [0.2f64, 0.1, 0.05];
    let logs: Vec<(f64, f64)> = hs
        .iter()
        .map(|&h| {
            let steps = (2.0 / h).round() as usize;
            let e = (dp45_fixed_step(decay, &[1.0], h, steps)[0] - (-2f64).exp()).abs();
            (h.ln(), e.ln())
        })
        .collect();
    let n = logs.len() as f64;
    let (mx, my) = (logs.iter().map(|p| p.0).sum::<f64>() / n, logs.iter().map(|p| p.1).sum::<f64>() / n);
    let slope = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / logs.iter().map(|(x, _)| (x - mx).powi(2)).sum::<f64>();
    let ok = err < 1e-6 && (4.8..=5.2).contains(&slope);
    outcome(ok, format!("exp decay max error {err:.2e} (< 1e-6), order slope {slope:.3} in [4.8, 5.2]"))
}

fn main() {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, run: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!("[{tag}] {id:>2} {name}: {} [{:.2?}]", o.detail, start.elapsed());
    };
    report(1, "parse oracle", &c1_parse_oracle);
    report(2, "brute-force equivalence", &c2_brute_force);
    report(3, "entropy rate arithmetic", &c3_entropy_rate);
    report(4, "constant-input closed form", &c4_constant_closed_form);
    report(5, "antisymmetry", &c5_antisymmetry);
    report(6, "null calibration", &c6_null_calibration);
    let henon = henon_runs();
    report(7, "henon direction detection", &|| c7_henon_direction(&henon));
    report(8, "henon synchronization collapse", &|| c8_henon_sync(&henon));
    report(9, "variance shrinkage", &c9_variance);
    report(10, "rossler-lorenz false coupling", &c10_false_coupling);
    report(11, "runtime", &c11_runtime);
    report(12, "integrator", &c12_integrator);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
