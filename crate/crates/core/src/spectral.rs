//! Spectrum, resolvent and compactness diagnostics for multipliers.
//!
//! At `p = 2` the spectrum is exactly the closure of the symbol range. For
//! other `p` only the inclusion `closure{a_n} ⊆ σ(T_a)` is certified; points
//! outside the closure get an explicit inverse (the resolvent multiplier) and
//! its residual. Nothing here ever claims a point outside the closure belongs
//! to the spectrum.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dyadic::{Resolution, StepFunction, MAX_LEVELS};
use crate::error::{Result, WalshError};
use crate::metrics::{lp_norm, PNorm};
use crate::multiplier::{compose_check, resolvent_symbol, MultiplierMatrix, DEFAULT_DELTA_TOLERANCE, MAX_DENSE_LEVELS};
use crate::opnorm::{interpolated_upper_bound, tail_norm, NormEstimate, OpnormOptions};
use crate::symbol::{complex_repr, Symbol};
use crate::Scalar;

/// Residual above which a resolvent certificate is rejected.
pub const COMPOSE_TOLERANCE: f64 = 1e-10;

/// Seed of the test function used in resolvent certificates.
const CERTIFICATE_SEED: u64 = 0x5eed;

/// Cutoff used to evaluate the limiting behaviour of a family's tail supremum.
const FAR_CUTOFF: usize = 1 << 40;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigenpair {
    pub index: usize,
    #[serde(with = "complex_repr")]
    pub value: Scalar,
    pub eigenvector: StepFunction,
    /// `max_i |(T_a W_n - a_n W_n)_i|`.
    pub residual: f64,
}

/// `(n, a_n, W_n)` for every `n < 2^m`, each checked against `T_a W_n = a_n W_n`.
pub fn point_spectrum(sym: &Symbol, res: Resolution) -> Vec<Eigenpair> {
    let op = MultiplierMatrix::new(sym, res);
    op.diagonal()
        .iter()
        .enumerate()
        .map(|(index, &value)| {
            let eigenvector = StepFunction::walsh(index, res).expect("index below 2^m");
            let residual = op.apply(&eigenvector).max_abs_diff(&(value * &eigenvector));
            Eigenpair { index, value, eigenvector, residual }
        })
        .collect()
}

/// `‖(T_a - λ)^{-1}‖_{L²→L²} = 1 / dist(λ, closure{a_n})`, infinite on the spectrum.
pub fn resolvent_norm_l2(sym: &Symbol, lambda: Scalar) -> f64 {
    let delta = sym.closure_distance(lambda);
    if delta == 0.0 {
        f64::INFINITY
    } else {
        1.0 / delta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralQuery {
    #[serde(with = "complex_repr")]
    pub lambda: Scalar,
    pub p: PNorm,
    pub resolution: Resolution,
    pub tolerance: f64,
}

impl SpectralQuery {
    pub fn new(lambda: Scalar, p: PNorm, resolution: Resolution) -> Self {
        Self { lambda, p, resolution, tolerance: DEFAULT_DELTA_TOLERANCE }
    }
}

/// Index with `|a_n - λ|` small, and the quasi-eigenvector residual
/// `‖(T_a - λ) W_n‖_p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiEigen {
    pub index: usize,
    pub distance: f64,
    pub residual_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    /// `λ ∈ closure{a_n}`; witnesses with decreasing `|a_n - λ|`.
    InSpectrum { delta: f64, witness: Vec<QuasiEigen> },
    /// `λ ∉ closure{a_n}` with a verified inverse.
    InResolvent {
        delta: f64,
        compose_residual: f64,
        /// `1/δ` at `p = 2`.
        resolvent_norm_l2: Option<f64>,
        /// Certified bound on `‖T_b‖_{p→p}` at this resolution, `p ≠ 2`.
        lp_resolvent_upper: Option<f64>,
    },
    /// Gap is positive but the inverse failed its residual check.
    Undetermined { delta: f64, compose_residual: f64 },
}

impl Membership {
    pub fn label(&self) -> &'static str {
        match self {
            Membership::InSpectrum { .. } => "in_spectrum",
            Membership::InResolvent { .. } => "in_resolvent",
            Membership::Undetermined { .. } => "undetermined",
        }
    }

    pub fn delta(&self) -> f64 {
        match self {
            Membership::InSpectrum { delta, .. }
            | Membership::InResolvent { delta, .. }
            | Membership::Undetermined { delta, .. } => *delta,
        }
    }

    pub fn compose_residual(&self) -> Option<f64> {
        match self {
            Membership::InSpectrum { .. } => None,
            Membership::InResolvent { compose_residual, .. } | Membership::Undetermined { compose_residual, .. } => {
                Some(*compose_residual)
            }
        }
    }
}

fn quasi_eigen_witness(sym: &Symbol, q: &SpectralQuery) -> Vec<QuasiEigen> {
    let res = q.resolution;
    let mut records: Vec<(usize, f64)> = Vec::new();
    let mut best = f64::INFINITY;
    for n in 0..res.dim() {
        let d = (sym.value(n) - q.lambda).norm();
        if d < best {
            best = d;
            records.push((n, d));
        }
        if d == 0.0 {
            break;
        }
    }
    let keep = records.len().saturating_sub(16);
    records[keep..]
        .iter()
        .map(|&(index, distance)| {
            let w = StepFunction::walsh(index, res).expect("index below 2^m");
            let image = &crate::multiplier::apply(sym, &w) - &(q.lambda * &w);
            QuasiEigen { index, distance, residual_norm: lp_norm(&image, q.p) }
        })
        .collect()
}

/// Decides `λ ∈ σ(T_a)` from the closure distance and certifies the answer.
pub fn membership(sym: &Symbol, q: &SpectralQuery) -> Result<Membership> {
    let delta = sym.closure_distance(q.lambda);
    if delta <= q.tolerance {
        return Ok(Membership::InSpectrum { delta, witness: quasi_eigen_witness(sym, q) });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CERTIFICATE_SEED);
    let f = StepFunction::random(q.resolution, &mut rng);
    let compose_residual = compose_check(sym, q.lambda, &f, q.tolerance)?;
    if compose_residual.is_nan() || compose_residual >= COMPOSE_TOLERANCE {
        return Ok(Membership::Undetermined { delta, compose_residual });
    }
    let (resolvent_norm_l2, lp_resolvent_upper) = if q.p == PNorm::TWO {
        (Some(1.0 / delta), None)
    } else if q.resolution.levels() <= MAX_DENSE_LEVELS {
        let (b, _) = resolvent_symbol(sym, q.lambda, q.tolerance)?;
        let op = MultiplierMatrix::new(&b, q.resolution);
        (None, Some(interpolated_upper_bound(&op, q.p)?.value))
    } else {
        (None, None)
    };
    Ok(Membership::InResolvent { delta, compose_residual, resolvent_norm_l2, lp_resolvent_upper })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Compactness {
    Compact,
    NotCompact,
}

impl Compactness {
    pub fn of(sym: &Symbol) -> Self {
        if sym.is_c0() {
            Compactness::Compact
        } else {
            Compactness::NotCompact
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Compactness::Compact => "compact",
            Compactness::NotCompact => "not_compact",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub cutoff: usize,
    pub estimate: NormEstimate,
    /// `max_{N < n < 2^m} |a_n|`.
    pub analytic_sup: f64,
    /// Family closed form `sup_{n > N} |a_n|`.
    pub family_tail_sup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompactnessReport {
    pub p_in: PNorm,
    pub p_out: PNorm,
    pub resolution: Resolution,
    pub rows: Vec<DecayRow>,
    pub verdict: Compactness,
    /// Whether the decay table agrees with the verdict.
    pub corroborated: bool,
}

/// Tail-norm decay table over `cutoffs` and the compactness verdict.
pub fn compactness_report(
    sym: &Symbol,
    p_in: PNorm,
    p_out: PNorm,
    res: Resolution,
    cutoffs: &[usize],
    opts: &OpnormOptions,
) -> Result<CompactnessReport> {
    let strictly_increasing = cutoffs.windows(2).all(|w| w[0] < w[1]);
    if !strictly_increasing || cutoffs.iter().any(|&n| n >= res.dim()) {
        return Err(WalshError::InvalidCutoffs { dim: res.dim() });
    }
    let rows = cutoffs
        .iter()
        .map(|&cutoff| {
            let t = tail_norm(sym, cutoff, res, p_in, p_out, opts)?;
            Ok(DecayRow {
                cutoff,
                estimate: t.estimate,
                analytic_sup: t.analytic_sup,
                family_tail_sup: sym.tail_sup(cutoff),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let verdict = Compactness::of(sym);
    let limit = sym.tail_sup(FAR_CUTOFF);
    let corroborated = match verdict {
        Compactness::Compact => rows.windows(2).all(|w| w[1].family_tail_sup <= w[0].family_tail_sup) && limit < 1e-9,
        Compactness::NotCompact => limit > 0.0 && rows.iter().all(|r| r.estimate.value >= limit * (1.0 - 1e-9)),
    };
    Ok(CompactnessReport { p_in, p_out, resolution: res, rows, verdict, corroborated })
}

/// `‖T_a f_k - T_a f_j‖_p` for the unimodular test functions `f = (a/|a|) W`,
/// next to the closed form `(½||a_k|-|a_j||^p + ½(|a_k|+|a_j|)^p)^{1/p}`.
///
/// A zero coefficient keeps `f = W`; the closed form still applies with `|a| = 0`.
pub fn separation_distance(sym: &Symbol, k: usize, j: usize, p: PNorm, res: Resolution) -> Result<(f64, f64)> {
    if k == j {
        return Err(WalshError::InvalidSymbol(format!("separation needs distinct indices, got {k} twice")));
    }
    let unimodular = |n: usize| -> Result<StepFunction> {
        let a = sym.value(n);
        let u = if a.norm() == 0.0 { Scalar::new(1.0, 0.0) } else { a / a.norm() };
        Ok(u.conj() * &StepFunction::walsh(n, res)?)
    };
    // T_a (ū W_n) = |a_n| W_n; the phase convention only needs |u| = 1
    let fk = unimodular(k)?;
    let fj = unimodular(j)?;
    let op = MultiplierMatrix::new(sym, res);
    let measured = lp_norm(&(&op.apply(&fk) - &op.apply(&fj)), p);

    let (ak, aj) = (sym.value(k).norm(), sym.value(j).norm());
    let formula = if p.is_infinite() {
        (ak - aj).abs().max(ak + aj)
    } else {
        let q = p.value();
        (0.5 * (ak - aj).abs().powf(q) + 0.5 * (ak + aj).powf(q)).powf(1.0 / q)
    };
    Ok((measured, formula))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccumulationRow {
    pub epsilon: f64,
    pub count_coarse: usize,
    pub count_fine: usize,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RieszSchauderReport {
    pub coarse: Resolution,
    pub fine: Resolution,
    pub rows: Vec<AccumulationRow>,
    pub zero_in_closure: bool,
    pub passed: bool,
}

/// For a vanishing symbol, `#{n : |a_n| ≥ ε}` must not grow with the
/// resolution, and 0 must lie in the closure of the range.
pub fn riesz_schauder_check(sym: &Symbol, res: Resolution, epsilons: &[f64]) -> Result<RieszSchauderReport> {
    if !sym.is_c0() {
        return Err(WalshError::NotC0);
    }
    let fine = Resolution::new((res.levels() + 4).min(MAX_LEVELS.min(24)).max(res.levels()))?;
    let magnitudes: Vec<f64> = (0..fine.dim()).map(|n| sym.value(n).norm()).collect();
    let count = |dim: usize, eps: f64| magnitudes[..dim].iter().filter(|&&a| a >= eps).count();
    let rows: Vec<AccumulationRow> = epsilons
        .iter()
        .map(|&epsilon| {
            let count_coarse = count(res.dim(), epsilon);
            let count_fine = count(fine.dim(), epsilon);
            AccumulationRow { epsilon, count_coarse, count_fine, stable: count_coarse == count_fine }
        })
        .collect();
    let zero_in_closure = sym.closure_distance(Scalar::new(0.0, 0.0)) == 0.0;
    let passed = zero_in_closure && rows.iter().all(|r| r.stable);
    Ok(RieszSchauderReport { coarse: res, fine, rows, zero_in_closure, passed })
}

/// Everything known about one spectral query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub family: String,
    pub query: SpectralQuery,
    #[serde(with = "indexed_values")]
    pub point_spectrum: Vec<(usize, Scalar)>,
    pub membership: Membership,
    pub resolvent_norm_l2: f64,
    pub lp_resolvent_upper: Option<f64>,
    pub compactness: Compactness,
    /// Riesz–Schauder accumulation check; only defined for vanishing symbols.
    pub accumulation_check: Option<bool>,
}

pub fn spectral_report(sym: &Symbol, q: &SpectralQuery) -> Result<SpectralReport> {
    let membership = membership(sym, q)?;
    let lp_resolvent_upper = match &membership {
        Membership::InResolvent { lp_resolvent_upper, .. } => *lp_resolvent_upper,
        _ => None,
    };
    let accumulation_check =
        if sym.is_c0() { Some(riesz_schauder_check(sym, q.resolution, &[0.5, 0.1, 0.01])?.passed) } else { None };
    Ok(SpectralReport {
        family: sym.family_name(),
        query: *q,
        point_spectrum: (0..q.resolution.dim()).map(|n| (n, sym.value(n))).collect(),
        membership,
        resolvent_norm_l2: resolvent_norm_l2(sym, q.lambda),
        lp_resolvent_upper,
        compactness: Compactness::of(sym),
        accumulation_check,
    })
}

mod indexed_values {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Scalar;

    pub fn serialize<S: Serializer>(v: &[(usize, Scalar)], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for (n, z) in v {
            seq.serialize_element(&(n, [z.re, z.im]))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<(usize, Scalar)>, D::Error> {
        let raw = Vec::<(usize, [f64; 2])>::deserialize(d)?;
        Ok(raw.into_iter().map(|(n, [re, im])| (n, Scalar::new(re, im))).collect())
    }
}
