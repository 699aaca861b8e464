//! Operator norms of multipliers on the finite-resolution step-function spaces.
//!
//! `‖T‖_{p_in → p_out} = sup ‖T f‖_{L^{p_out}} / ‖f‖_{L^{p_in}}`. Closed forms
//! exist at `(2,2)` (largest `|a_n|`) and at `(1,1)`, `(∞,∞)` (column and row
//! sums of the dense matrix; the uniform cell weights cancel). Everywhere else
//! the value comes from the dual power iteration
//!
//! ```text
//! y = T x,   u = J_{p_out}(y),   z = T* u,   x ← J_{p_in'}(z)
//! ```
//!
//! whose ratio `‖T x_k‖ / ‖x_k‖` never decreases, so each run certifies a
//! lower bound.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyadic::{random_vector, Resolution, StepFunction};
use crate::error::{Result, WalshError};
use crate::metrics::{weighted_norm, PNorm};
use crate::multiplier::{tail, MultiplierMatrix};
use crate::probe::{ConstantProbe, Inequality, Witness};
use crate::symbol::Symbol;
use crate::Scalar;

/// Relative slack allowed when asserting the ratio sequence is nondecreasing.
pub const MONOTONE_SLACK: f64 = 1e-12;

/// Agreement required between `‖T_a‖_{p→p}` and `‖T_ā‖_{p'→p'}`.
pub const DUALITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Exact,
    LowerBound,
    UpperBound,
}

impl NormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NormKind::Exact => "exact",
            NormKind::LowerBound => "lower_bound",
            NormKind::UpperBound => "upper_bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub kind: NormKind,
    /// Iterations of the run that produced `value` (0 for closed forms).
    pub iterations: usize,
    /// Last relative change of the winning run; for the `(2,2)` closed form,
    /// the gap to the power-iteration cross-check.
    pub residual: f64,
    pub starts: usize,
    pub converged: bool,
}

impl NormEstimate {
    fn closed_form(value: f64, kind: NormKind) -> Self {
        Self { value, kind, iterations: 0, residual: 0.0, starts: 0, converged: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpnormOptions {
    pub seed: u64,
    pub random_starts: usize,
    /// Number of cell-indicator starts; `None` means `2^min(m, 6)`.
    pub basis_starts: Option<usize>,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for OpnormOptions {
    fn default() -> Self {
        Self { seed: 0, random_starts: 16, basis_starts: None, tolerance: 1e-10, max_iterations: 500 }
    }
}

impl OpnormOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

/// One run of the dual power iteration.
#[derive(Debug, Clone)]
pub struct PowerTrace {
    /// `‖T x_k‖_{p_out} / ‖x_k‖_{p_in}` for every iterate.
    pub ratios: Vec<f64>,
    /// Iterate attaining the last (largest) ratio, normalized in `L^{p_in}`.
    pub witness: StepFunction,
    pub residual: f64,
    pub converged: bool,
}

impl PowerTrace {
    pub fn value(&self) -> f64 {
        self.ratios.last().copied().unwrap_or(0.0)
    }

    /// Whether the ratio sequence never dropped by more than [`MONOTONE_SLACK`].
    pub fn is_monotone(&self) -> bool {
        self.ratios.windows(2).all(|w| w[1] >= w[0] * (1.0 - MONOTONE_SLACK))
    }
}

fn norm(values: &[Scalar], p: PNorm) -> f64 {
    weighted_norm(values, p, 1.0 / values.len() as f64)
}

fn phase(z: Scalar) -> Scalar {
    let r = z.norm();
    if r == 0.0 {
        Scalar::new(0.0, 0.0)
    } else {
        z / r
    }
}

/// Norming functional of `v` in `L^q`: the `w` with `‖w‖_{q'} = 1` and
/// `∫ v w̄ = ‖v‖_q`. `J_q(0) = 0`.
pub fn dual_map(values: &[Scalar], q: PNorm) -> Vec<Scalar> {
    let len = values.len();
    let scale = norm(values, q);
    if scale == 0.0 {
        return vec![Scalar::new(0.0, 0.0); len];
    }
    if q.is_infinite() {
        let (arg, _) = values
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, bv), (i, v)| if v.norm() > bv { (i, v.norm()) } else { (bi, bv) });
        let mut out = vec![Scalar::new(0.0, 0.0); len];
        out[arg] = phase(values[arg]) * len as f64;
        return out;
    }
    let q = q.value();
    if q == 1.0 {
        return values.iter().map(|v| phase(*v)).collect();
    }
    values.iter().map(|v| phase(*v) * (v.norm() / scale).powf(q - 1.0)).collect()
}

/// Runs the dual power iteration from `start`.
pub fn power_iterate(
    op: &MultiplierMatrix,
    start: &[Scalar],
    p_in: PNorm,
    p_out: PNorm,
    tolerance: f64,
    max_iterations: usize,
) -> PowerTrace {
    let adjoint = op.adjoint();
    let dim = start.len();
    let start_norm = norm(start, p_in);
    let mut x: Vec<Scalar> =
        if start_norm > 0.0 { start.iter().map(|v| v / start_norm).collect() } else { start.to_vec() };
    let mut ratios: Vec<f64> = Vec::new();
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut y = vec![Scalar::new(0.0, 0.0); dim];

    for _ in 0..max_iterations.max(1) {
        y.copy_from_slice(&x);
        op.apply_in_place(&mut y);
        let gamma = norm(&y, p_out);
        if let Some(&previous) = ratios.last() {
            residual = if gamma > 0.0 { (gamma - previous).abs() / gamma } else { 0.0 };
        }
        ratios.push(gamma);
        if gamma == 0.0 || residual < tolerance {
            converged = true;
            break;
        }
        let mut z = dual_map(&y, p_out);
        adjoint.apply_in_place(&mut z);
        let next = dual_map(&z, p_in.dual());
        if norm(&next, p_in) == 0.0 {
            converged = true;
            break;
        }
        x = next;
    }

    let witness = StepFunction::new(x).expect("power-of-two length");
    PowerTrace { ratios, witness, residual, converged }
}

fn start_vectors(op: &MultiplierMatrix, opts: &OpnormOptions) -> Vec<Vec<Scalar>> {
    let res = op.resolution();
    let dim = res.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts: Vec<Vec<Scalar>> = (0..opts.random_starts).map(|_| random_vector(dim, &mut rng)).collect();

    let basis = opts.basis_starts.unwrap_or(1 << res.levels().min(6)).min(dim);
    for i in 0..basis {
        let mut e = vec![Scalar::new(0.0, 0.0); dim];
        e[i] = Scalar::new(1.0, 0.0);
        starts.push(e);
    }
    starts.push(vec![Scalar::new(1.0, 0.0); dim]);

    // Eigenfunction of the largest |a_n|: its ratio is exactly that modulus.
    let (top, _) =
        op.diagonal()
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, bv), (i, a)| if a.norm() > bv { (i, a.norm()) } else { (bi, bv) });
    starts.push(StepFunction::walsh(top, res).expect("index in range").into_values());
    starts
}

/// Best run over all starts; ties go to the lowest start index.
pub fn power_estimate(
    op: &MultiplierMatrix,
    p_in: PNorm,
    p_out: PNorm,
    opts: &OpnormOptions,
) -> (NormEstimate, PowerTrace) {
    let starts = start_vectors(op, opts);
    let traces: Vec<PowerTrace> =
        starts.par_iter().map(|s| power_iterate(op, s, p_in, p_out, opts.tolerance, opts.max_iterations)).collect();
    let best = traces
        .into_iter()
        .reduce(|best, t| if t.value() > best.value() { t } else { best })
        .expect("at least one start");
    let estimate = NormEstimate {
        value: best.value(),
        kind: NormKind::LowerBound,
        iterations: best.ratios.len(),
        residual: best.residual,
        starts: starts.len(),
        converged: best.converged,
    };
    (estimate, best)
}

fn max_abs(values: &[Scalar]) -> f64 {
    values.iter().map(|a| a.norm()).fold(0.0, f64::max)
}

/// `‖T‖_{1→1}`: largest column absolute sum of the dense matrix.
pub fn one_norm(op: &MultiplierMatrix) -> Result<f64> {
    let dense = op.dense()?;
    Ok(dense.column_iter().map(|c| c.iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max))
}

/// `‖T‖_{∞→∞}`: largest row absolute sum of the dense matrix.
pub fn inf_norm(op: &MultiplierMatrix) -> Result<f64> {
    let dense = op.dense()?;
    Ok(dense.row_iter().map(|r| r.iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max))
}

/// `‖T‖_{2→2}` by power iteration on `T*T`, as an independent cross-check of
/// the closed form.
fn gram_power_check(op: &MultiplierMatrix, opts: &OpnormOptions) -> (f64, usize) {
    let adjoint = op.adjoint();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut x = random_vector(op.resolution().dim(), &mut rng);
    let mut estimate = 0.0;
    let mut iterations = 0;
    for k in 0..opts.max_iterations.max(1) {
        iterations = k + 1;
        let scale = norm(&x, PNorm::TWO);
        if scale == 0.0 {
            break;
        }
        x.iter_mut().for_each(|v| *v /= scale);
        op.apply_in_place(&mut x);
        adjoint.apply_in_place(&mut x);
        let next = norm(&x, PNorm::TWO).sqrt();
        let change = (next - estimate).abs() / next.max(f64::MIN_POSITIVE);
        estimate = next;
        if change < opts.tolerance {
            break;
        }
    }
    (estimate, iterations)
}

/// `‖T_a‖_{p_in → p_out}` at resolution `res`.
pub fn opnorm(sym: &Symbol, res: Resolution, p_in: PNorm, p_out: PNorm, opts: &OpnormOptions) -> Result<NormEstimate> {
    operator_norm(&MultiplierMatrix::new(sym, res), p_in, p_out, opts)
}

pub fn operator_norm(op: &MultiplierMatrix, p_in: PNorm, p_out: PNorm, opts: &OpnormOptions) -> Result<NormEstimate> {
    if p_in == p_out && p_in == PNorm::TWO {
        let exact = max_abs(op.diagonal());
        let (check, iterations) = gram_power_check(op, opts);
        return Ok(NormEstimate {
            value: exact,
            kind: NormKind::Exact,
            iterations,
            residual: exact - check,
            starts: 1,
            converged: true,
        });
    }
    if p_in == p_out && p_in == PNorm::ONE {
        return Ok(NormEstimate::closed_form(one_norm(op)?, NormKind::Exact));
    }
    if p_in == p_out && p_in == PNorm::INFINITY {
        return Ok(NormEstimate::closed_form(inf_norm(op)?, NormKind::Exact));
    }
    Ok(power_estimate(op, p_in, p_out, opts).0)
}

/// Riesz–Thorin bound `‖T‖_{p→p} ≤ ‖T‖_1^{1/p} ‖T‖_∞^{1-1/p}` from the
/// `p ∈ {1, ∞}` endpoints.
pub fn endpoint_upper_bound(op: &MultiplierMatrix, p: PNorm) -> Result<NormEstimate> {
    let t = p.reciprocal();
    let value = one_norm(op)?.powf(t) * inf_norm(op)?.powf(1.0 - t);
    Ok(NormEstimate::closed_form(value, NormKind::UpperBound))
}

/// Smallest certified upper bound for `‖T‖_{p→p}`: the endpoint bound and the
/// interpolation between `p = 2` and the nearer endpoint.
pub fn interpolated_upper_bound(op: &MultiplierMatrix, p: PNorm) -> Result<NormEstimate> {
    let two = max_abs(op.diagonal());
    let endpoint = endpoint_upper_bound(op, p)?.value;
    let t = p.reciprocal();
    let via_two = if t >= 0.5 {
        // 1/p = (1-θ)/1 + θ/2
        let theta = 2.0 * (1.0 - t);
        one_norm(op)?.powf(1.0 - theta) * two.powf(theta)
    } else {
        // 1/p = (1-θ)/2
        let theta = 1.0 - 2.0 * t;
        two.powf(1.0 - theta) * inf_norm(op)?.powf(theta)
    };
    Ok(NormEstimate::closed_form(endpoint.min(via_two), NormKind::UpperBound))
}

/// Norm of the tail operator `T_a - T_a^{(N)}` together with its analytic reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailNorm {
    pub cutoff: usize,
    pub estimate: NormEstimate,
    /// `max_{N < n < 2^m} |a_n|`.
    pub analytic_sup: f64,
    /// Certified upper bound, where one is available for the regime.
    pub upper_bound: Option<f64>,
}

impl TailNorm {
    /// Ratio of the upper bound to the analytic supremum: the multiplier
    /// constant the estimate is sandwiched with.
    pub fn sandwich_constant(&self) -> Option<f64> {
        match self.upper_bound {
            Some(u) if self.analytic_sup > 0.0 => Some(u / self.analytic_sup),
            _ => None,
        }
    }

    pub fn within_sandwich(&self, slack: f64) -> bool {
        let lower_ok = self.estimate.value >= self.analytic_sup - slack;
        let upper_ok = self.upper_bound.is_none_or(|u| self.estimate.value <= u + slack);
        lower_ok && upper_ok
    }
}

pub fn tail_norm(
    sym: &Symbol,
    cutoff: usize,
    res: Resolution,
    p_in: PNorm,
    p_out: PNorm,
    opts: &OpnormOptions,
) -> Result<TailNorm> {
    if cutoff >= res.dim() {
        return Err(WalshError::IndexOutOfRange { index: cutoff, dim: res.dim() });
    }
    let op = MultiplierMatrix::new(&tail(sym, cutoff), res);
    let analytic_sup = max_abs(&op.diagonal()[cutoff + 1..]);
    let estimate = operator_norm(&op, p_in, p_out, opts)?;
    let upper_bound = if estimate.kind == NormKind::Exact {
        Some(estimate.value)
    } else if p_out == PNorm::TWO && p_in >= PNorm::TWO {
        // ‖T f‖_2 ≤ sup|a_n| ‖f‖_2 ≤ sup|a_n| ‖f‖_{p_in}
        Some(analytic_sup)
    } else if p_in == p_out && res.levels() <= crate::multiplier::MAX_DENSE_LEVELS {
        Some(interpolated_upper_bound(&op, p_in)?.value)
    } else {
        None
    };
    Ok(TailNorm { cutoff, estimate, analytic_sup, upper_bound })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierBoundReport {
    pub p: PNorm,
    pub estimate: NormEstimate,
    /// `max_{n<2^m} |a_n|`.
    pub sup_abs: f64,
    /// `estimate / sup_abs`.
    pub ratio: f64,
    pub probe: ConstantProbe,
    /// `‖T_ā‖_{p' → p'}` from an independent run.
    pub dual_estimate: NormEstimate,
    pub duality_gap: f64,
    pub duality_ok: bool,
}

/// Measures `‖T_a‖_{p→p} / ‖a‖_∞` and checks `‖T_a‖_{p→p} = ‖T_ā‖_{p'→p'}`.
pub fn multiplier_bound_check(
    sym: &Symbol,
    res: Resolution,
    p: PNorm,
    opts: &OpnormOptions,
) -> Result<MultiplierBoundReport> {
    if !(p.value() > 1.0 && !p.is_infinite()) {
        return Err(WalshError::ExponentOutOfRange { p: p.value(), range: "(1, inf)" });
    }
    let op = MultiplierMatrix::new(sym, res);
    let (estimate, trace) = if p == PNorm::TWO {
        // the power iteration still supplies a witness; the value is exact
        let (mut est, trace) = power_estimate(&op, p, p, opts);
        est.value = max_abs(op.diagonal());
        est.kind = NormKind::Exact;
        (est, trace)
    } else {
        power_estimate(&op, p, p, opts)
    };
    let dual_op = op.adjoint();
    let dual_estimate = if p == PNorm::TWO {
        operator_norm(&dual_op, p, p, opts)?
    } else {
        power_estimate(&dual_op, p.dual(), p.dual(), opts).0
    };

    let sup_abs = max_abs(op.diagonal());
    let ratio = if sup_abs > 0.0 { estimate.value / sup_abs } else { 0.0 };
    let duality_gap = (estimate.value - dual_estimate.value).abs();
    let probe = ConstantProbe {
        inequality: Inequality::MultiplierBound,
        p,
        resolution: res,
        best_ratio: ratio,
        witness: Witness::Function(trace.witness),
        symbol: Some(sym.clone()),
        trials: estimate.starts,
        seed: opts.seed,
    };
    Ok(MultiplierBoundReport {
        p,
        duality_ok: duality_gap <= DUALITY_TOLERANCE * estimate.value.max(1.0),
        estimate,
        sup_abs,
        ratio,
        probe,
        dual_estimate,
        duality_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::analysis;
    use rand::Rng;

    fn res(m: u32) -> Resolution {
        Resolution::new(m).unwrap()
    }

    fn p(v: f64) -> PNorm {
        PNorm::new(v).unwrap()
    }

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    #[test]
    fn dual_map_norms_and_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let v = random_vector(32, &mut rng);
        for q in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let q = p(q);
            let w = dual_map(&v, q);
            assert!((norm(&w, q.dual()) - 1.0).abs() < 1e-12, "q={q}");
            let pairing: Scalar = v.iter().zip(&w).map(|(a, b)| a * b.conj()).sum::<Scalar>() / 32.0;
            assert!((pairing - norm(&v, q)).norm() < 1e-12, "q={q}");
        }
        assert!(dual_map(&[c(0.0, 0.0); 4], p(1.5)).iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn identity_has_unit_norm() {
        let opts = OpnormOptions::default();
        let one = Symbol::Constant { c: c(1.0, 0.0) };
        for q in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let est = opnorm(&one, res(5), p(q), p(q), &opts).unwrap();
            assert!((est.value - 1.0).abs() < 1e-12, "q={q}: {est:?}");
        }
    }

    #[test]
    fn reciprocal_two_norm_is_one() {
        let est = opnorm(&Symbol::Reciprocal, res(6), PNorm::TWO, PNorm::TWO, &OpnormOptions::default()).unwrap();
        assert_eq!(est.kind, NormKind::Exact);
        assert_eq!(est.value, 1.0);
        assert!(est.residual.abs() < 1e-8, "{est:?}");
    }

    #[test]
    fn mean_projection_one_norm() {
        let est =
            opnorm(&Symbol::UnitDirac { n0: 0 }, res(5), PNorm::ONE, PNorm::ONE, &OpnormOptions::default()).unwrap();
        assert_eq!(est.kind, NormKind::Exact);
        assert!((est.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn uniform_weights_cancel_at_m3() {
        // ‖T‖_{L^1→L^1} from the weighted definition equals the plain column-sum norm.
        let r = res(3);
        let sym = Symbol::explicit_from_fn(8, |n| c((n as f64 * 0.7).sin(), (n as f64 * 1.3).cos()));
        let op = MultiplierMatrix::new(&sym, r);
        let weighted = (0..8)
            .map(|j| {
                let mut e = vec![c(0.0, 0.0); 8];
                e[j] = c(1.0, 0.0);
                let input = norm(&e, PNorm::ONE);
                op.apply_in_place(&mut e);
                norm(&e, PNorm::ONE) / input
            })
            .fold(0.0, f64::max);
        assert!((weighted - one_norm(&op).unwrap()).abs() < 1e-14);
        let weighted_inf = (0..8)
            .map(|i| {
                // row i paired with the sign pattern of its entries
                let dense = op.dense().unwrap();
                let x: Vec<Scalar> = (0..8).map(|j| phase(dense[(i, j)]).conj()).collect();
                let mut y = x.clone();
                op.apply_in_place(&mut y);
                y[i].norm() / norm(&x, PNorm::INFINITY)
            })
            .fold(0.0, f64::max);
        assert!((weighted_inf - inf_norm(&op).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn power_runs_are_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let sym = Symbol::explicit_from_fn(64, |_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let op = MultiplierMatrix::new(&sym, res(6));
            for (pi, po) in [(1.5, 1.5), (3.0, 3.0), (4.0, 2.0), (1.2, 5.0)] {
                let start = random_vector(64, &mut rng);
                let trace = power_iterate(&op, &start, p(pi), p(po), 1e-10, 500);
                assert!(trace.is_monotone(), "({pi},{po}): {:?}", trace.ratios);
            }
        }
    }

    #[test]
    fn estimate_is_deterministic() {
        let sym = Symbol::Geometric { r: c(0.5, 0.6) };
        let opts = OpnormOptions::with_seed(99);
        let a = opnorm(&sym, res(6), p(1.5), p(1.5), &opts).unwrap();
        let b = opnorm(&sym, res(6), p(1.5), p(1.5), &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn tail_norm_examples() {
        let opts = OpnormOptions::default();
        let t = tail_norm(&Symbol::Reciprocal, 3, res(5), PNorm::TWO, PNorm::TWO, &opts).unwrap();
        assert!((t.estimate.value - 0.2).abs() < 1e-15);
        for cutoff in [0, 7, 30] {
            let t = tail_norm(&Symbol::Alternating, cutoff, res(5), PNorm::TWO, PNorm::TWO, &opts).unwrap();
            assert_eq!(t.estimate.value, 1.0);
        }
        let t = tail_norm(&Symbol::Reciprocal, 3, res(5), p(4.0), PNorm::TWO, &opts).unwrap();
        assert!((t.estimate.value - 0.2).abs() < 1e-8, "{t:?}");
        assert!(tail_norm(&Symbol::Reciprocal, 32, res(5), PNorm::TWO, PNorm::TWO, &opts).is_err());
    }

    #[test]
    fn tail_norm_sandwich_for_p_ne_2() {
        let opts = OpnormOptions::default();
        for q in [1.5, 3.0] {
            let t = tail_norm(&Symbol::Reciprocal, 3, res(5), p(q), p(q), &opts).unwrap();
            assert!(t.within_sandwich(1e-12), "{t:?}");
            assert!(t.sandwich_constant().unwrap() >= 1.0);
        }
    }

    #[test]
    fn multiplier_bound_examples() {
        let opts = OpnormOptions::default();
        for q in [1.5, 2.0, 4.0] {
            let report = multiplier_bound_check(&Symbol::Constant { c: c(0.0, -2.0) }, res(5), p(q), &opts).unwrap();
            assert!((report.ratio - 1.0).abs() < 1e-10, "p={q}: {}", report.ratio);
            assert!(report.duality_ok);
        }
        let report = multiplier_bound_check(&Symbol::Alternating, res(5), PNorm::TWO, &opts).unwrap();
        assert_eq!(report.ratio, 1.0);
        assert!(multiplier_bound_check(&Symbol::Alternating, res(5), PNorm::ONE, &opts).is_err());
    }

    #[test]
    fn multiplier_probe_witness_reproduces_ratio() {
        let sym = Symbol::Geometric { r: c(-0.8, 0.1) };
        let report = multiplier_bound_check(&sym, res(5), p(1.5), &OpnormOptions::default()).unwrap();
        let again = report.probe.reproduce().unwrap();
        assert!((again - report.probe.best_ratio).abs() < 1e-12);
    }

    #[test]
    fn eigen_start_attains_sup() {
        // a single large coefficient: the estimate can never fall below it
        let sym = Symbol::explicit_from_fn(32, |n| c(if n == 19 { 3.0 } else { 0.1 }, 0.0));
        let est = opnorm(&sym, res(5), p(1.3), p(1.3), &OpnormOptions::default()).unwrap();
        assert!(est.value >= 3.0 - 1e-12);
        let coeffs = analysis(&StepFunction::walsh(19, res(5)).unwrap());
        assert_eq!(coeffs.coeffs()[19], c(1.0, 0.0));
    }
}
