//! Reference implementation used only by tests.
//!
//! Shares no code with the library: LZ76 counting is the classic
//! Kaspar-Schuster scan, embedding is plain index arithmetic and the
//! surrogates use their own generator.

#![allow(dead_code)]

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

/// LZ76 production count by the Kaspar-Schuster scan.
pub fn ks_complexity<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    assert!(n > 0);
    if n == 1 {
        return 1;
    }
    let (mut c, mut l, mut i, mut k, mut kmax) = (1usize, 1usize, 0usize, 1usize, 1usize);
    loop {
        if s[i + k - 1] == s[l + k - 1] {
            k += 1;
            if l + k > n {
                c += 1;
                break;
            }
        } else {
            kmax = kmax.max(k);
            i += 1;
            if i == l {
                c += 1;
                l += kmax;
                if l + 1 > n {
                    break;
                }
                i = 0;
                k = 1;
                kmax = 1;
            } else {
                k = 1;
            }
        }
    }
    c
}

/// Entropy rate `C (ln α + ln C) / T` over a binary-weighted alphabet of `bits` columns.
pub fn rate(codes: &[u64], bits: usize) -> f64 {
    let c = ks_complexity(codes) as f64;
    c * (bits as f64 * 2f64.ln() + c.ln()) / codes.len() as f64
}

fn pack(cols: impl Iterator<Item = u8>) -> u64 {
    cols.enumerate().fold(0, |acc, (i, b)| acc | (u64::from(b) << i))
}

/// Codes of the target rows `[x past, x now]` and full rows `[y past, x past, x now]`.
/// `pick[n]` selects which row supplies the source past of row `n`.
pub fn codes(x: &[u8], y: &[u8], m: usize, tau: usize, pick: Option<&[usize]>) -> (Vec<u64>, Vec<u64>) {
    let span = m * tau;
    let rows = x.len() - span;
    let mut tgt = Vec::with_capacity(rows);
    let mut full = Vec::with_capacity(rows);
    for n in 0..rows {
        let t = n + span;
        let src_t = pick.map_or(t, |p| p[n] + span);
        let xs = (1..=m).rev().map(|j| x[t - j * tau]).chain(std::iter::once(x[t]));
        let ys = (1..=m).rev().map(|j| y[src_t - j * tau]);
        let xc = pack(xs.clone());
        tgt.push(xc);
        full.push(pack(ys) | xc << m);
    }
    (tgt, full)
}

pub struct Directed {
    pub t: f64,
    pub surr: f64,
}

/// Directed rate `source -> target` and its surrogate level `-mean h(V_k)`.
pub fn directed(target: &[u8], source: &[u8], m: usize, tau: usize, k: usize, rng: &mut StdRng) -> Directed {
    let (tgt, full) = codes(target, source, m, tau, None);
    let t = rate(&tgt, m + 1) - rate(&full, 2 * m + 1);
    let rows = tgt.len();
    let mut acc = 0.0;
    for _ in 0..k {
        let pick: Vec<usize> = (0..rows).map(|_| rng.gen_range(0..rows)).collect();
        acc += rate(&codes(target, source, m, tau, Some(&pick)).1, 2 * m + 1);
    }
    Directed { t, surr: -acc / k as f64 }
}

pub struct Global {
    pub t_yx: f64,
    pub t_xy: f64,
    pub s_yx: f64,
    pub s_xy: f64,
    pub joint_rate: f64,
    pub global: f64,
}

pub fn iid_pair(t: usize, seed: u64) -> (Vec<u8>, Vec<u8>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let x = (0..t).map(|_| rng.gen_range(0..2u8)).collect();
    let y = (0..t).map(|_| rng.gen_range(0..2u8)).collect();
    (x, y)
}

/// Global estimator for target `x` and source `y`.
pub fn global(x: &[u8], y: &[u8], m: usize, tau: usize, k: usize, seed: u64) -> Global {
    let mut rng = StdRng::seed_from_u64(seed);
    let yx = directed(x, y, m, tau, k, &mut rng);
    let xy = directed(y, x, m, tau, k, &mut rng);
    let joint_rate = rate(&codes(x, y, m, tau, None).1, 2 * m + 1);
    Global {
        t_yx: yx.t,
        t_xy: xy.t,
        s_yx: yx.surr,
        s_xy: xy.surr,
        joint_rate,
        global: (yx.t - xy.t) - (yx.surr - xy.surr),
    }
}

/// Statistics of the i.i.d. binary null frozen by the generator test.
#[derive(Debug, Serialize, Deserialize)]
pub struct NullBand {
    pub length: usize,
    pub m: usize,
    pub tau: usize,
    pub surrogates: usize,
    pub samples: usize,
    /// 2.5% and 97.5% quantiles of single global values.
    pub global_band: [f64; 2],
    /// 99th percentile of |directed rate|.
    pub directed_abs_p99: f64,
    /// Mean of `-surrogate - h(V)`.
    pub surrogate_gap_mean: f64,
}

pub fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/null_band.json")
}

pub fn load_null_band() -> NullBand {
    let text = std::fs::read_to_string(fixture_path()).expect("null band fixture missing, run the ignored generator");
    serde_json::from_str(&text).expect("malformed null band fixture")
}

/// Type-7 quantile of sorted data.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}
