//! Empirical best-constant probes.
//!
//! Neither the Hausdorff–Young constant nor the synthesis constant has a known
//! closed form here, so the probes only ever report lower bounds: the largest
//! ratio found by random sampling followed by single-coordinate ascent, plus
//! the witness that attains it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyadic::{random_vector, walsh_sign, CoeffVector, Resolution, StepFunction};
use crate::error::{Result, WalshError};
use crate::metrics::{hy_ratio, lp_norm, synthesis_ratio, weighted_norm, PNorm};
use crate::multiplier::apply;
use crate::symbol::Symbol;
use crate::Scalar;

/// Random trials that are refined by coordinate ascent, best first.
pub const POLISHED_TRIALS: usize = 16;

const MAX_SWEEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `‖f̂‖_{p'} ≤ C ‖f‖_p`, `1 < p ≤ 2`.
    Hy,
    /// `‖Σ c_n W_n‖_p ≤ C ‖c‖_{p'}`, `1 < p < 2`.
    Synthesis,
    /// `‖T_a‖_{p→p} ≤ C ‖a‖_∞`.
    MultiplierBound,
}

impl Inequality {
    pub fn as_str(self) -> &'static str {
        match self {
            Inequality::Hy => "hy",
            Inequality::Synthesis => "synthesis",
            Inequality::MultiplierBound => "multiplier_bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Witness {
    Function(StepFunction),
    Coefficients(CoeffVector),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantProbe {
    pub inequality: Inequality,
    pub p: PNorm,
    pub resolution: Resolution,
    pub best_ratio: f64,
    pub witness: Witness,
    /// Symbol under test, for multiplier-bound probes.
    pub symbol: Option<Symbol>,
    pub trials: usize,
    pub seed: u64,
}

impl ConstantProbe {
    /// Recomputes the ratio from the stored witness.
    pub fn reproduce(&self) -> Result<f64> {
        match (&self.inequality, &self.witness) {
            (Inequality::Hy, Witness::Function(f)) => hy_ratio(f, self.p),
            (Inequality::Synthesis, Witness::Coefficients(c)) => synthesis_ratio(c, self.p),
            (Inequality::MultiplierBound, Witness::Function(f)) => {
                let sym = self
                    .symbol
                    .as_ref()
                    .ok_or_else(|| WalshError::InvalidSymbol("multiplier probe without symbol".into()))?;
                let sup = sym.values(f.len()).iter().map(|a| a.norm()).fold(0.0, f64::max);
                let input = lp_norm(f, self.p);
                if input == 0.0 || sup == 0.0 {
                    return Err(WalshError::UndefinedRatio);
                }
                Ok(lp_norm(&apply(sym, f), self.p) / input / sup)
            }
            _ => Err(WalshError::InvalidSymbol("witness does not match inequality".into())),
        }
    }
}

/// Transform-side ratio `‖H x · scale‖_{out} / ‖x‖_{in}` with incremental updates.
///
/// HY: `x = f` (cells, L^p), image `f̂ = H f / N` (ℓ^{p'}).
/// Synthesis: `x = c` (ℓ^{p'}), image `H c` (cells, L^p).
struct RatioState {
    res: Resolution,
    input: Vec<Scalar>,
    image: Vec<Scalar>,
    input_norm: PNorm,
    input_weight: f64,
    image_norm: PNorm,
    image_weight: f64,
    image_scale: f64,
}

impl RatioState {
    fn new(inequality: Inequality, p: PNorm, res: Resolution, input: Vec<Scalar>) -> Self {
        let dim = res.dim() as f64;
        let (input_norm, input_weight, image_norm, image_weight, image_scale) = match inequality {
            Inequality::Hy => (p, 1.0 / dim, p.dual(), 1.0, 1.0 / dim),
            _ => (p.dual(), 1.0, p, 1.0 / dim, 1.0),
        };
        let mut image = input.clone();
        crate::dyadic::fwht_in_place(&mut image).expect("power-of-two length");
        image.iter_mut().for_each(|v| *v *= image_scale);
        Self { res, input, image, input_norm, input_weight, image_norm, image_weight, image_scale }
    }

    fn ratio_of(&self, input: &[Scalar], image: &[Scalar]) -> f64 {
        let denom = weighted_norm(input, self.input_norm, self.input_weight);
        if denom == 0.0 {
            return 0.0;
        }
        weighted_norm(image, self.image_norm, self.image_weight) / denom
    }

    fn ratio(&self) -> f64 {
        self.ratio_of(&self.input, &self.image)
    }

    /// Coordinate ascent over sign, quarter-phase and magnitude moves until no
    /// single-coordinate move improves the ratio.
    fn ascend(&mut self) {
        let moves = [
            Scalar::new(-1.0, 0.0),
            Scalar::new(0.0, 1.0),
            Scalar::new(0.0, -1.0),
            Scalar::new(2.0, 0.0),
            Scalar::new(0.5, 0.0),
        ];
        let dim = self.res.dim();
        let mut best = self.ratio();
        let mut input = self.input.clone();
        let mut image = self.image.clone();
        for _ in 0..MAX_SWEEPS {
            let mut improved = false;
            for i in 0..dim {
                for factor in moves {
                    let delta = self.input[i] * (factor - 1.0);
                    if delta.norm() == 0.0 {
                        continue;
                    }
                    input[i] = self.input[i] * factor;
                    let step = delta * self.image_scale;
                    for (n, v) in image.iter_mut().enumerate() {
                        *v = if walsh_sign(n, i, self.res) > 0 { *v + step } else { *v - step };
                    }
                    let candidate = self.ratio_of(&input, &image);
                    if candidate > best * (1.0 + 1e-15) {
                        best = candidate;
                        self.input[i] = input[i];
                        self.image.copy_from_slice(&image);
                        improved = true;
                    } else {
                        input[i] = self.input[i];
                        image.copy_from_slice(&self.image);
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn check_exponent(inequality: Inequality, p: PNorm) -> Result<()> {
    let ok = match inequality {
        Inequality::Hy => p.value() > 1.0 && p.value() <= 2.0,
        Inequality::Synthesis => p.value() > 1.0 && p.value() < 2.0,
        Inequality::MultiplierBound => {
            return Err(WalshError::InvalidSymbol(
                "multiplier-bound probes come from opnorm::multiplier_bound_check".into(),
            ))
        }
    };
    if ok {
        Ok(())
    } else {
        let range = if inequality == Inequality::Hy { "(1, 2]" } else { "(1, 2)" };
        Err(WalshError::ExponentOutOfRange { p: p.value(), range })
    }
}

/// Probes the best constant of `inequality` at exponent `p` and resolution `res`.
pub fn constant_probe(
    inequality: Inequality,
    p: PNorm,
    res: Resolution,
    trials: usize,
    seed: u64,
) -> Result<ConstantProbe> {
    probe_with_starts(inequality, p, res, trials, seed, Vec::new())
}

fn probe_with_starts(
    inequality: Inequality,
    p: PNorm,
    res: Resolution,
    trials: usize,
    seed: u64,
    extra_starts: Vec<Vec<Scalar>>,
) -> Result<ConstantProbe> {
    check_exponent(inequality, p)?;
    let dim = res.dim();
    let mut scored: Vec<(usize, f64, Vec<Scalar>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let input = random_vector(dim, &mut trial_rng(seed, t));
            let ratio = RatioState::new(inequality, p, res, input.clone()).ratio();
            (t, ratio, input)
        })
        .collect();
    let offset = scored.len();
    for (k, start) in structured_starts(dim).chain(extra_starts).enumerate() {
        let ratio = RatioState::new(inequality, p, res, start.clone()).ratio();
        scored.push((offset + k, ratio, start));
    }
    // best first, lowest index among ties
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    scored.truncate(POLISHED_TRIALS.max(1));

    let polished: Vec<(usize, f64, Vec<Scalar>)> = scored
        .into_par_iter()
        .map(|(t, _, input)| {
            let mut state = RatioState::new(inequality, p, res, input);
            state.ascend();
            (t, state.ratio(), state.input)
        })
        .collect();
    let (_, _, best) = polished
        .into_iter()
        .reduce(|a, b| if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a })
        .ok_or(WalshError::UndefinedRatio)?;

    let witness = match inequality {
        Inequality::Hy => Witness::Function(StepFunction::new(best)?),
        _ => Witness::Coefficients(CoeffVector::new(best)?),
    };
    let mut probe =
        ConstantProbe { inequality, p, resolution: res, best_ratio: 0.0, witness, symbol: None, trials, seed };
    probe.best_ratio = probe.reproduce()?;
    Ok(probe)
}

/// The all-ones vector and the first unit vector. Both inequalities are
/// equalities on them, so probes always see ratio 1 among their candidates.
fn structured_starts(dim: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let ones = vec![Scalar::new(1.0, 0.0); dim];
    let mut unit = vec![Scalar::new(0.0, 0.0); dim];
    unit[0] = Scalar::new(1.0, 0.0);
    [ones, unit].into_iter()
}

/// Synthesis probes at increasing resolutions. Each level also starts from the
/// previous level's witness padded with zeros, so the curve is nondecreasing.
pub fn synthesis_growth_curve(p: PNorm, levels: &[u32], trials: usize, seed: u64) -> Result<Vec<ConstantProbe>> {
    let mut curve: Vec<ConstantProbe> = Vec::with_capacity(levels.len());
    for &m in levels {
        let res = Resolution::new(m)?;
        let mut extra = Vec::new();
        if let Some(Witness::Coefficients(prev)) = curve.last().map(|c| &c.witness) {
            if prev.len() <= res.dim() {
                let mut padded = prev.coeffs().to_vec();
                padded.resize(res.dim(), Scalar::new(0.0, 0.0));
                extra.push(padded);
            }
        }
        curve.push(probe_with_starts(Inequality::Synthesis, p, res, trials, seed, extra)?);
    }
    Ok(curve)
}
