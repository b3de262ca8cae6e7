use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lezter::dynsys::{simulate, SystemKind, SystemSpec};
use lezter::preprocess::{auto_mutual_information, suggest_lag};
use lezter::runner::config::SweepConfig;
use lezter::runner::io::{fmt_real, read_column, write_trajectory};
use lezter::runner::sweep::run_sweep;
use lezter::{binarize_median, entropy_rate_lz, global_ter, lz76_word_count, quantize_quantiles, RealSeries};
use lezter::{Result, SurrogateMethod, SymbolSequence, TerParams};

#[derive(Parser)]
#[command(name = "lezter", version, about = "LZ76 transfer entropy rate estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// LZ76 word count and entropy rate of one CSV column.
    Lzc {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        column: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: u64,
    },
    /// Global transfer entropy rate, source -> target, median-binarized.
    Ter {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        column: usize,
        #[arg(short = 'm')]
        m: usize,
        #[arg(long)]
        tau: usize,
        #[arg(short = 'K', default_value_t = lezter::ter::DEFAULT_SURROGATES)]
        surrogates: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = SurrogateMethod::Bootstrap)]
        method: SurrogateMethod,
    },
    /// Generate a coupled benchmark trajectory as CSV (index,source,target).
    Simulate {
        #[arg(long)]
        system: SystemKind,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        discard: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Source variable index within the drive subsystem.
        #[arg(long)]
        source_var: Option<usize>,
        /// Target variable index within the response subsystem.
        #[arg(long)]
        target_var: Option<usize>,
    },
    /// Auto mutual information curve and suggested lag.
    Suggest {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        column: usize,
        #[arg(long)]
        max_lag: usize,
        #[arg(long, default_value_t = 16)]
        bins: usize,
    },
    /// Run a parameter sweep from a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
}

// Integer columns already inside the alphabet are taken as symbols.
fn symbols_from(values: Vec<f64>, alphabet: u64) -> Result<SymbolSequence> {
    let literal = values.iter().all(|&v| v.fract() == 0.0 && v >= 0.0 && v < alphabet as f64);
    if literal {
        return SymbolSequence::new(values.iter().map(|&v| v as u64).collect(), alphabet);
    }
    let series = RealSeries::new(values)?;
    let sym = if alphabet == 2 { binarize_median(&series) } else { quantize_quantiles(&series, alphabet)? };
    if sym.degenerate {
        eprintln!("warning: degenerate quantization (too few distinct values)");
    }
    Ok(sym.sequence)
}

fn binarized(path: &PathBuf, column: usize) -> Result<SymbolSequence> {
    let sym = binarize_median(&RealSeries::new(read_column(path, column)?)?);
    if sym.degenerate {
        eprintln!("warning: {} is constant", path.display());
    }
    Ok(sym.sequence)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Lzc { input, column, alphabet } => {
            let seq = symbols_from(read_column(&input, column)?, alphabet)?;
            let c = lz76_word_count(&seq)?;
            println!("C = {c}");
            println!("h = {}", fmt_real(entropy_rate_lz(&seq)?));
        }
        Command::Ter { target, source, column, m, tau, surrogates, seed, method } => {
            let x = binarized(&target, column)?;
            let y = binarized(&source, column)?;
            let params = TerParams::new(m, tau).surrogates(surrogates).seed(seed).method(method);
            let e = global_ter(&x, &y, &params)?;
            println!("t_yx = {}", fmt_real(e.t_yx));
            println!("t_xy = {}", fmt_real(e.t_xy));
            println!("t_yx_surr = {}", fmt_real(e.t_yx_surr));
            println!("t_xy_surr = {}", fmt_real(e.t_xy_surr));
            println!("t_global = {}", fmt_real(e.t_global));
        }
        Command::Simulate { system, epsilon, length, discard, seed, out, source_var, target_var } => {
            let mut spec = SystemSpec::new(system, epsilon, length, seed);
            if let Some(d) = discard {
                spec = spec.discard(d);
            }
            let (s, t) = system.default_observables();
            spec = spec.observables(source_var.unwrap_or(s), target_var.unwrap_or(t));
            let traj = simulate(&spec)?;
            write_trajectory(BufWriter::new(File::create(&out)?), &traj)?;
        }
        Command::Suggest { input, column, max_lag, bins } => {
            let series = RealSeries::new(read_column(&input, column)?)?;
            let curve = auto_mutual_information(&series, max_lag, bins)?;
            println!("lag,ami");
            for (lag, mi) in curve.mi_values.iter().enumerate() {
                println!("{lag},{}", fmt_real(*mi));
            }
            let s = suggest_lag(&curve)?;
            if s.no_local_minimum {
                println!("tau = {} (global minimum, no local minimum up to lag {max_lag})", s.lag);
            } else {
                println!("tau = {}", s.lag);
            }
        }
        Command::Sweep { config } => {
            let config = SweepConfig::from_file(&config)?;
            let records = run_sweep(&config)?;
            let failed = records.iter().filter(|r| !r.is_ok()).count();
            println!("{} records ({failed} failed) -> {}", records.len(), config.output_path.display());
            println!("summary -> {}", config.summary_path().display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
