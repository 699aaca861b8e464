use std::hint::black_box;
use std::time::Instant;

use walsh_lab::dyadic::{fwht_in_place, naive_transform};
use walsh_lab::Scalar;

use crate::args::BenchArgs;
use crate::output::emit;
use crate::CliError;

const MAX_BENCH_LEVELS: u32 = 24;
/// The quadratic reference transform is only timed up to this level.
const MAX_NAIVE_LEVELS: u32 = 12;

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    if args.reps == 0 {
        return Err(CliError::Config("--reps must be positive".into()));
    }
    if args.n_max_log2 > MAX_BENCH_LEVELS || args.n_min_log2 > args.n_max_log2 {
        return Err(CliError::Config(format!(
            "need n_min_log2 <= n_max_log2 <= {MAX_BENCH_LEVELS}, got {}..{}",
            args.n_min_log2, args.n_max_log2
        )));
    }
    let mut text = String::from("m,N,fwht_median_s,naive_median_s,speedup,ratio_vs_previous\n");
    let mut previous: Option<f64> = None;
    for m in args.n_min_log2..=args.n_max_log2 {
        let n = 1usize << m;
        let fast = median_fwht(m, args.reps);
        let naive = (m <= MAX_NAIVE_LEVELS).then(|| median_naive(m, args.reps));
        let speedup = naive.map(|t| t / fast);
        let ratio = previous.map(|t| fast / t);
        previous = Some(fast);
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.6e}")).unwrap_or_default();
        text.push_str(&format!("{m},{n},{fast:.6e},{},{},{}\n", opt(naive), opt(speedup), opt(ratio)));
    }
    emit(args.out.as_deref(), &text)
}

fn input(m: u32) -> Vec<Scalar> {
    (0..1usize << m).map(|i| Scalar::new((i % 7) as f64 - 3.0, (i % 5) as f64)).collect()
}

fn median(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}

/// Median seconds for one in-place transform of length `2^m`.
pub fn median_fwht(m: u32, reps: usize) -> f64 {
    let fresh = input(m);
    let mut data = fresh.clone();
    fwht_in_place(&mut data).expect("power of two");
    median(
        (0..reps)
            .map(|_| {
                data.copy_from_slice(&fresh);
                let start = Instant::now();
                fwht_in_place(black_box(&mut data)).expect("power of two");
                start.elapsed().as_secs_f64()
            })
            .collect(),
    )
}

fn median_naive(m: u32, reps: usize) -> f64 {
    let data = input(m);
    median(
        (0..reps)
            .map(|_| {
                let start = Instant::now();
                black_box(naive_transform(black_box(&data)).expect("power of two"));
                start.elapsed().as_secs_f64()
            })
            .collect(),
    )
}
