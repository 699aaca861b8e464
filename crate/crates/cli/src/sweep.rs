use std::path::Path;

use rayon::prelude::*;
use serde_json::json;
use walsh_lab::opnorm::{multiplier_bound_check, opnorm, OpnormOptions};
use walsh_lab::probe::{constant_probe, ConstantProbe, Inequality};
use walsh_lab::spectral::{compactness_report, membership, Membership, SpectralQuery};
use walsh_lab::{Resolution, Scalar, Symbol};

use crate::args::{Format, Grid, InequalityArg, SweepArgs, SweepKind};
use crate::output::{emit, json, witness_hash, Table};
use crate::CliError;

/// Largest resolution accepted by any sweep; dense paths stop at 12 inside the library.
const MAX_SWEEP_LEVELS: u32 = 20;

pub const OPNORM_HEADER: [&str; 10] =
    ["family", "m", "p_in", "p_out", "N", "estimate", "kind", "analytic_sup", "iterations", "seed"];
pub const DECAY_HEADER: [&str; 8] = ["family", "p_in", "p_out", "m", "N", "estimate", "analytic_sup", "verdict"];
pub const PROBE_HEADER: [&str; 7] = ["inequality", "p", "m", "trials", "seed", "best_ratio", "witness_hash"];
pub const GRID_HEADER: [&str; 8] = ["re", "im", "p", "m", "verdict", "delta", "compose_residual", "resolvent_bound"];

pub fn run(args: &SweepArgs) -> Result<(), CliError> {
    let levels = resolutions(&args.m)?;
    if !(args.tol >= 0.0 && args.tol.is_finite()) {
        return Err(CliError::Config(format!("--tol must be a finite nonnegative number, got {}", args.tol)));
    }
    let text = match args.kind {
        SweepKind::Opnorm => opnorm_sweep(args, &levels)?,
        SweepKind::TailDecay => decay_sweep(args, &levels)?,
        SweepKind::SpectrumGrid => grid_sweep(args, &levels)?,
        SweepKind::ProbeConstants => probe_sweep(args, &levels)?,
    };
    emit(args.out.as_deref(), &text)
}

fn resolutions(levels: &[u32]) -> Result<Vec<Resolution>, CliError> {
    if levels.is_empty() {
        return Err(CliError::Config("--m needs at least one level".into()));
    }
    levels
        .iter()
        .map(|&m| {
            if m > MAX_SWEEP_LEVELS {
                return Err(CliError::Config(format!("--m {m} exceeds the sweep limit {MAX_SWEEP_LEVELS}")));
            }
            Ok(Resolution::new(m)?)
        })
        .collect()
}

/// Reads `--symbol` as a JSON file, inline JSON, or a bare family name.
pub fn load_symbol(spec: Option<&str>) -> Result<Symbol, CliError> {
    let spec = spec.ok_or_else(|| CliError::Config("this sweep needs --symbol".into()))?;
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else if Path::new(spec).is_file() {
        std::fs::read_to_string(spec)?
    } else if spec.chars().all(|c| c.is_ascii_lowercase() || c == '_') {
        format!("{{\"family\":\"{spec}\"}}")
    } else {
        return Err(CliError::Config(format!("--symbol {spec:?} is neither JSON, a file, nor a family name")));
    };
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("symbol schema: {e}")))
}

fn sup_below(sym: &Symbol, res: Resolution) -> f64 {
    sym.values(res.dim()).iter().map(|a| a.norm()).fold(0.0, f64::max)
}

fn opnorm_sweep(args: &SweepArgs, levels: &[Resolution]) -> Result<String, CliError> {
    let sym = load_symbol(args.symbol.as_deref())?;
    let opts = OpnormOptions::with_seed(args.seed);
    let mut rows = Vec::new();
    for &res in levels {
        let est = opnorm(&sym, res, args.p_in, args.p_out, &opts)?;
        rows.push((res, est, sup_below(&sym, res)));
    }
    match args.format {
        Format::Csv => {
            let mut t = Table::new(args.seed, &OPNORM_HEADER)?;
            for (res, est, sup) in &rows {
                t.row(&[
                    sym.family_name(),
                    res.levels().to_string(),
                    args.p_in.to_string(),
                    args.p_out.to_string(),
                    res.dim().to_string(),
                    est.value.to_string(),
                    est.kind.as_str().to_string(),
                    sup.to_string(),
                    est.iterations.to_string(),
                    args.seed.to_string(),
                ])?;
            }
            t.finish()
        }
        Format::Json => Ok(json(&json!({
            "seed": args.seed,
            "symbol": sym,
            "family": sym.family_name(),
            "p_in": args.p_in,
            "p_out": args.p_out,
            "rows": rows.iter().map(|(res, est, sup)| json!({
                "m": res.levels(),
                "N": res.dim(),
                "estimate": est,
                "analytic_sup": sup,
            })).collect::<Vec<_>>(),
        }))),
    }
}

fn decay_sweep(args: &SweepArgs, levels: &[Resolution]) -> Result<String, CliError> {
    let sym = load_symbol(args.symbol.as_deref())?;
    let opts = OpnormOptions::with_seed(args.seed);
    let reports = levels
        .iter()
        .map(|&res| compactness_report(&sym, args.p_in, args.p_out, res, &args.cutoffs, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    match args.format {
        Format::Csv => {
            let mut t = Table::new(args.seed, &DECAY_HEADER)?;
            for report in &reports {
                for row in &report.rows {
                    t.row(&[
                        sym.family_name(),
                        args.p_in.to_string(),
                        args.p_out.to_string(),
                        report.resolution.levels().to_string(),
                        row.cutoff.to_string(),
                        row.estimate.value.to_string(),
                        row.analytic_sup.to_string(),
                        report.verdict.as_str().to_string(),
                    ])?;
                }
            }
            t.finish()
        }
        Format::Json => Ok(json(&json!({
            "seed": args.seed,
            "symbol": sym,
            "family": sym.family_name(),
            "reports": reports,
        }))),
    }
}

fn grid_sweep(args: &SweepArgs, levels: &[Resolution]) -> Result<String, CliError> {
    let sym = load_symbol(args.symbol.as_deref())?;
    let Grid { re_min, re_max, im_min, im_max, steps } = args.grid;
    let mut queries = Vec::new();
    for &res in levels {
        for &p in &args.p {
            for &im in &Grid::axis(im_min, im_max, steps) {
                for &re in &Grid::axis(re_min, re_max, steps) {
                    queries.push((re, im, p, res));
                }
            }
        }
    }
    // indexed collect keeps grid order regardless of scheduling
    let points = queries
        .into_par_iter()
        .map(|(re, im, p, res)| {
            let mut q = SpectralQuery::new(Scalar::new(re, im), p, res);
            q.tolerance = args.tol;
            membership(&sym, &q).map(|verdict| (re, im, p, res, verdict))
        })
        .collect::<Result<Vec<_>, _>>()?;
    match args.format {
        Format::Csv => {
            let mut t = Table::new(args.seed, &GRID_HEADER)?;
            for (re, im, p, res, verdict) in &points {
                let bound = match verdict {
                    Membership::InResolvent { resolvent_norm_l2, lp_resolvent_upper, .. } => {
                        resolvent_norm_l2.or(*lp_resolvent_upper)
                    }
                    _ => None,
                };
                t.row(&[
                    re.to_string(),
                    im.to_string(),
                    p.to_string(),
                    res.levels().to_string(),
                    verdict.label().to_string(),
                    verdict.delta().to_string(),
                    verdict.compose_residual().map(|r| r.to_string()).unwrap_or_default(),
                    bound.map(|b| b.to_string()).unwrap_or_default(),
                ])?;
            }
            t.finish()
        }
        Format::Json => Ok(json(&json!({
            "seed": args.seed,
            "symbol": sym,
            "family": sym.family_name(),
            "tolerance": args.tol,
            "points": points.iter().map(|(re, im, p, res, verdict)| json!({
                "lambda": [re, im],
                "p": p,
                "m": res.levels(),
                "membership": verdict,
            })).collect::<Vec<_>>(),
        }))),
    }
}

fn probe_sweep(args: &SweepArgs, levels: &[Resolution]) -> Result<String, CliError> {
    let mut probes: Vec<ConstantProbe> = Vec::new();
    for &res in levels {
        for &p in &args.p {
            probes.push(match args.inequality {
                InequalityArg::Hy => constant_probe(Inequality::Hy, p, res, args.trials, args.seed)?,
                InequalityArg::Synthesis => constant_probe(Inequality::Synthesis, p, res, args.trials, args.seed)?,
                InequalityArg::MultiplierBound => {
                    let sym = load_symbol(args.symbol.as_deref())?;
                    let opts =
                        OpnormOptions { random_starts: args.trials.max(1), ..OpnormOptions::with_seed(args.seed) };
                    multiplier_bound_check(&sym, res, p, &opts)?.probe
                }
            });
        }
    }
    match args.format {
        Format::Csv => {
            let mut t = Table::new(args.seed, &PROBE_HEADER)?;
            for probe in &probes {
                t.row(&[
                    probe.inequality.as_str().to_string(),
                    probe.p.to_string(),
                    probe.resolution.levels().to_string(),
                    probe.trials.to_string(),
                    probe.seed.to_string(),
                    probe.best_ratio.to_string(),
                    witness_hash(&probe.witness),
                ])?;
            }
            t.finish()
        }
        Format::Json => Ok(json(&json!({ "seed": args.seed, "probes": probes }))),
    }
}
