use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use walsh_lab::PNorm;

#[derive(Debug, Parser)]
#[command(name = "walsh-lab", version, about = "Walsh multiplier experiments: verification, sweeps, benchmarks")]
pub struct Cli {
    /// Worker threads for parallel estimators (default: all cores).
    #[arg(long, global = true, env = "WALSH_LAB_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run self-check suites; exit 0 iff every check passes.
    Verify(VerifyArgs),
    /// Evaluate estimators over a parameter grid and write CSV or JSON.
    Sweep(SweepArgs),
    /// Time the fast transform against the naive one.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// all, core, metrics, multiplier, opnorm or spectral.
    #[arg(default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    TailDecay,
    Opnorm,
    SpectrumGrid,
    ProbeConstants,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InequalityArg {
    Hy,
    Synthesis,
    MultiplierBound,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub kind: SweepKind,
    /// Symbol as a JSON file, inline JSON, or a bare family name.
    #[arg(long)]
    pub symbol: Option<String>,
    /// Resolution levels, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "6")]
    pub m: Vec<u32>,
    #[arg(long, default_value = "2")]
    pub p_in: PNorm,
    #[arg(long, default_value = "2")]
    pub p_out: PNorm,
    /// Truncation indices for tail-decay, strictly increasing.
    #[arg(long, value_delimiter = ',', default_value = "1,3,7,15,31")]
    pub cutoffs: Vec<usize>,
    /// re_min,re_max,im_min,im_max,steps: a steps x steps lattice of λ values
    /// (an axis with min = max contributes a single value).
    #[arg(long, default_value = "-2,2,-2,2,41")]
    pub grid: Grid,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Spectral gap below which λ counts as in the closure of the symbol range.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Exponents for probe-constants and spectrum-grid, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1.5")]
    pub p: Vec<PNorm>,
    #[arg(long, value_enum, default_value_t = InequalityArg::Hy)]
    pub inequality: InequalityArg,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    pub n_min_log2: u32,
    #[arg(long, default_value_t = 20)]
    pub n_max_log2: u32,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub steps: usize,
}

impl Grid {
    /// `steps` evenly spaced points including both ends; a degenerate range is one point.
    pub fn axis(min: f64, max: f64, steps: usize) -> Vec<f64> {
        if steps == 1 || min == max {
            return vec![min];
        }
        (0..steps).map(|i| min + (max - min) * i as f64 / (steps - 1) as f64).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(format!("expected re_min,re_max,im_min,im_max,steps; got {s:?}"));
        }
        let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        let grid = Grid {
            re_min: num(parts[0])?,
            re_max: num(parts[1])?,
            im_min: num(parts[2])?,
            im_max: num(parts[3])?,
            steps: parts[4].parse().map_err(|e| format!("steps {:?}: {e}", parts[4]))?,
        };
        let bounds = [grid.re_min, grid.re_max, grid.im_min, grid.im_max];
        if bounds.iter().any(|v| !v.is_finite()) || grid.re_min > grid.re_max || grid.im_min > grid.im_max {
            return Err(format!("grid bounds must be finite with min <= max; got {s:?}"));
        }
        if grid.steps == 0 {
            return Err("grid steps must be positive".into());
        }
        Ok(grid)
    }
}
