//! Self-check suites run by `walsh-lab verify`.
//!
//! Each suite re-derives the library's invariants at desk scale from a seed.
//! Where an independent route exists (naive transform, dense SVD or
//! eigensolver, brute-force enumeration) the check compares against it.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dyadic::{analysis, fwht, naive_transform, walsh_sign, CoeffVector, Resolution, StepFunction};
use crate::metrics::{hy_ratio, lp_norm, lq_norm, synthesis_ratio, walsh_distance, PNorm};
use crate::multiplier::{apply, compose_check, conjugate, MultiplierMatrix};
use crate::opnorm::{endpoint_upper_bound, opnorm, power_iterate, NormKind, OpnormOptions};
use crate::spectral::{membership, point_spectrum, resolvent_norm_l2, Compactness, Membership, SpectralQuery};
use crate::symbol::Symbol;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Metrics,
    Multiplier,
    Opnorm,
    Spectral,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Core, Suite::Metrics, Suite::Multiplier, Suite::Opnorm, Suite::Spectral];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Metrics => "metrics",
            Suite::Multiplier => "multiplier",
            Suite::Opnorm => "opnorm",
            Suite::Spectral => "spectral",
        }
    }

    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        match name {
            "all" => Some(Suite::ALL.to_vec()),
            other => Suite::ALL.iter().find(|s| s.name() == other).map(|s| vec![*s]),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub fn run(suite: Suite, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Checks { suite: suite.name(), checks: Vec::new() };
    match suite {
        Suite::Core => core_suite(&mut out, &mut rng),
        Suite::Metrics => metrics_suite(&mut out, &mut rng),
        Suite::Multiplier => multiplier_suite(&mut out, &mut rng),
        Suite::Opnorm => opnorm_suite(&mut out, &mut rng, seed),
        Suite::Spectral => spectral_suite(&mut out, &mut rng),
    }
    out.checks
}

struct Checks {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { suite: self.suite, name: name.into(), passed, detail: detail.into() });
    }

    /// Records `worst < bound` with the worst value as detail.
    fn bounded(&mut self, name: impl Into<String>, worst: f64, bound: f64) {
        self.push(name, worst < bound, format!("max error {worst:.3e} (bound {bound:.0e})"));
    }
}

fn res(m: u32) -> Resolution {
    Resolution::new(m).expect("small resolution")
}

fn p(v: f64) -> PNorm {
    PNorm::new(v).expect("valid exponent")
}

fn random_explicit(rng: &mut ChaCha8Rng, len: usize) -> Symbol {
    Symbol::explicit_from_fn(len, |_| Scalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn core_suite(out: &mut Checks, rng: &mut ChaCha8Rng) {
    let r = res(10);
    let orthonormal = (0..r.dim()).all(|n| {
        let coeffs = analysis(&StepFunction::walsh(n, r).expect("n < 2^m"));
        coeffs.coeffs().iter().enumerate().all(|(k, v)| *v == Scalar::new(if k == n { 1.0 } else { 0.0 }, 0.0))
    });
    out.push("Orthonormality", orthonormal, "analysis(W_n) = e_n exactly, m = 10");

    let mut xor_ok = true;
    for _ in 0..4096 {
        let (a, b) = (rng.random_range(0..r.dim()), rng.random_range(0..r.dim()));
        xor_ok &= (0..r.dim()).all(|i| walsh_sign(a, i, r) * walsh_sign(b, i, r) == walsh_sign(a ^ b, i, r));
    }
    let small = res(6);
    for a in 0..small.dim() {
        for b in 0..small.dim() {
            xor_ok &= (0..small.dim())
                .all(|i| walsh_sign(a, i, small) * walsh_sign(b, i, small) == walsh_sign(a ^ b, i, small));
        }
    }
    out.push("XOR product rule", xor_ok, "W_a W_b = W_{a xor b}: all triples at m = 6, 4096 random pairs at m = 10");

    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let f = StepFunction::random(r, rng);
        let energy: f64 = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / r.dim() as f64;
        let coeff_energy: f64 = analysis(&f).coeffs().iter().map(|v| v.norm_sqr()).sum();
        worst = worst.max((energy - coeff_energy).abs());
    }
    out.bounded("Parseval", worst, 1e-12);

    let v: Vec<Scalar> =
        (0..r.dim()).map(|_| Scalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let twice = fwht(&fwht(&v).expect("pow2")).expect("pow2");
    let worst = v.iter().zip(&twice).map(|(a, b)| (a * r.dim() as f64 - b).norm()).fold(0.0, f64::max) / r.dim() as f64;
    out.bounded("FWHT involution", worst, 1e-12);

    let mut exact = true;
    let mut worst: f64 = 0.0;
    for m in 0..=6 {
        let dim = 1usize << m;
        let ints: Vec<Scalar> =
            (0..dim).map(|_| Scalar::new(rng.random_range(-50..50) as f64, rng.random_range(-50..50) as f64)).collect();
        exact &= fwht(&ints).expect("pow2") == naive_transform(&ints).expect("pow2");
        let floats: Vec<Scalar> =
            (0..dim).map(|_| Scalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let (fast, slow) = (fwht(&floats).expect("pow2"), naive_transform(&floats).expect("pow2"));
        worst = worst.max(fast.iter().zip(&slow).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
    }
    out.push(
        "FWHT matches naive transform",
        exact && worst < 1e-12,
        format!("exact on integers; float error {worst:.3e}"),
    );
}

fn metrics_suite(out: &mut Checks, rng: &mut ChaCha8Rng) {
    let r = res(10);
    let exponents = [1.0, 1.5, 2.0, 3.0, 10.0, f64::INFINITY];
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let a = rng.random_range(0..r.dim());
        let mut b = rng.random_range(0..r.dim());
        if a == b {
            b = (b + 1) % r.dim();
        }
        for &q in &exponents {
            let expected = 2f64.powf(1.0 - p(q).reciprocal());
            worst = worst.max((walsh_distance(a, b, p(q), r).expect("in range") - expected).abs());
        }
    }
    out.bounded("walsh_distance = 2^(1-1/p) at p in {1,1.5,2,3,10,inf}", worst, 1e-12);

    let mut parseval: f64 = 0.0;
    let mut monotone = true;
    let mut hy_two: f64 = 0.0;
    let mut homogeneity: f64 = 0.0;
    for _ in 0..50 {
        let f = StepFunction::random(res(8), rng);
        parseval = parseval.max((lq_norm(&analysis(&f), PNorm::TWO) - lp_norm(&f, PNorm::TWO)).abs());
        let norms: Vec<f64> = [1.0, 1.5, 2.0, 4.0, f64::INFINITY].iter().map(|&q| lp_norm(&f, p(q))).collect();
        monotone &= norms.windows(2).all(|w| w[0] <= w[1] * (1.0 + 1e-14));
        hy_two = hy_two.max((hy_ratio(&f, PNorm::TWO).expect("nonzero") - 1.0).abs());

        let lambda = Scalar::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let a = hy_ratio(&f, p(1.5)).expect("nonzero");
        let b = hy_ratio(&(lambda * &f), p(1.5)).expect("nonzero");
        let c = CoeffVector::random(res(8), rng);
        let scaled = CoeffVector::new(c.coeffs().iter().map(|v| lambda * v).collect()).expect("pow2");
        let (s, t) =
            (synthesis_ratio(&c, p(1.5)).expect("nonzero"), synthesis_ratio(&scaled, p(1.5)).expect("nonzero"));
        homogeneity = homogeneity.max(((a - b) / a).abs()).max(((s - t) / s).abs());
    }
    out.bounded("Parseval (lq_norm vs lp_norm)", parseval, 1e-12);
    out.push("lp_norm monotone in p", monotone, "Hölder on a probability space");
    out.bounded("hy_ratio(f, 2) = 1", hy_two, 1e-12);
    out.bounded("ratio homogeneity", homogeneity, 1e-12);
}

fn multiplier_suite(out: &mut Checks, rng: &mut ChaCha8Rng) {
    let r = res(10);
    let sym = Symbol::Geometric { r: Scalar::new(0.6, -0.7) };
    let op = MultiplierMatrix::new(&sym, r);
    let diagonal = (0..r.dim()).all(|n| {
        let coeffs = analysis(&op.apply(&StepFunction::walsh(n, r).expect("n < 2^m")));
        coeffs.coeffs().iter().enumerate().all(|(k, v)| *v == if k == n { sym.value(n) } else { Scalar::new(0.0, 0.0) })
    });
    out.push("Diagonality", diagonal, "analysis(T_a W_n) = a_n e_n exactly, m = 10");

    let r = res(8);
    let (mut linear, mut composed, mut pairing): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..10 {
        let a = random_explicit(rng, r.dim());
        let b = random_explicit(rng, r.dim());
        let f = StepFunction::random(r, rng);
        let g = StepFunction::random(r, rng);
        let (alpha, beta) =
            (Scalar::new(rng.random_range(-2.0..2.0), 0.5), Scalar::new(-0.3, rng.random_range(-2.0..2.0)));
        let lhs = apply(&a, &(&(alpha * &f) + &(beta * &g)));
        let rhs = &(alpha * &apply(&a, &f)) + &(beta * &apply(&a, &g));
        linear = linear.max(lhs.max_abs_diff(&rhs));

        let product = Symbol::explicit_from_fn(r.dim(), |n| a.value(n) * b.value(n));
        composed = composed.max(apply(&a, &apply(&b, &f)).max_abs_diff(&apply(&product, &f)));

        let inner = |x: &StepFunction, y: &StepFunction| -> Scalar {
            x.values().iter().zip(y.values()).map(|(u, v)| u * v.conj()).sum::<Scalar>() / x.len() as f64
        };
        pairing = pairing.max((inner(&apply(&a, &f), &g) - inner(&f, &apply(&conjugate(&a), &g))).norm());
    }
    out.bounded("Linearity", linear, 1e-12);
    out.bounded("Multiplier composition", composed, 1e-12);
    out.bounded("Conjugate pairing", pairing, 1e-12);

    let families = [
        Symbol::Reciprocal,
        Symbol::Alternating,
        Symbol::Geometric { r: Scalar::new(0.7, 0.0) },
        Symbol::UnitDirac { n0: 11 },
        Symbol::Constant { c: Scalar::new(0.2, 0.4) },
        Symbol::Explicit {
            prefix: vec![Scalar::new(3.0, 0.0), Scalar::new(0.0, 0.5)],
            tail: crate::symbol::TailSpec::Constant { c: Scalar::new(0.1, 0.0) },
        },
    ];
    let limit = 1usize << 20;
    let mut tail_ok = true;
    let mut closure_ok = true;
    for sym in &families {
        let magnitudes: Vec<f64> = (0..limit).map(|n| sym.value(n).norm()).collect();
        let mut suffix_max = vec![0.0; limit + 1];
        for n in (0..limit).rev() {
            suffix_max[n] = magnitudes[n].max(suffix_max[n + 1]);
        }
        let beyond = sym.tail_sup(limit - 1);
        for cutoff in [0usize, 1, 2, 5, 10, 100, 4095] {
            let brute = suffix_max[cutoff + 1];
            tail_ok &= (sym.tail_sup(cutoff) - brute.max(beyond)).abs() < 1e-15;
        }
        for _ in 0..20 {
            let lambda = Scalar::new(rng.random_range(-2.0..2.0), rng.random_range(-1.0..1.0));
            let brute = (0..1usize << 16).map(|n| (sym.value(n) - lambda).norm()).fold(f64::INFINITY, f64::min);
            let analytic = sym.closure_distance(lambda);
            let slack = if sym.is_c0() { sym.tail_sup((1 << 16) - 1) } else { 0.0 };
            let lower = brute.min(sym.limit_set().distance(lambda) - slack);
            closure_ok &= analytic <= brute + 1e-15 && analytic >= lower - 1e-15;
        }
    }
    out.push("tail_sup consistency (enumeration to 2^20)", tail_ok, "all built-in families");
    out.push("closure_distance consistency (enumeration to 2^16)", closure_ok, "all built-in families");
}

fn opnorm_suite(out: &mut Checks, rng: &mut ChaCha8Rng, seed: u64) {
    let r = res(6);
    let opts = OpnormOptions::with_seed(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let sym = random_explicit(rng, r.dim());
        let est = opnorm(&sym, r, PNorm::TWO, PNorm::TWO, &opts).expect("(2,2) norm");
        let sup = sym.values(r.dim()).iter().map(|a| a.norm()).fold(0.0, f64::max);
        let dense: DMatrix<Scalar> = MultiplierMatrix::new(&sym, r).dense().expect("m <= 12");
        let svd = dense.singular_values().max();
        worst = worst.max((est.value - sup).abs()).max((est.value - svd).abs());
    }
    out.bounded("opnorm(2,2) = sup|a_n| = SVD", worst, 1e-10);

    let mut monotone = true;
    let mut sandwiched = true;
    for _ in 0..5 {
        let sym = random_explicit(rng, r.dim());
        let op = MultiplierMatrix::new(&sym, r);
        for q in [1.5, 3.0] {
            let start: Vec<Scalar> = StepFunction::random(r, rng).into_values();
            let trace = power_iterate(&op, &start, p(q), p(q), 1e-10, 500);
            monotone &= trace.is_monotone();
            let upper = endpoint_upper_bound(&op, p(q)).expect("dense").value;
            let lower = opnorm(&sym, r, p(q), p(q), &opts).expect("estimate");
            sandwiched &= lower.kind == NormKind::LowerBound && lower.value <= upper * (1.0 + 1e-12);
        }
    }
    out.push("power-method monotonicity", monotone, "ratio nondecreasing every iteration");
    out.push("lower bound <= interpolated upper bound", sandwiched, "p in {1.5, 3}");

    let mut gap: f64 = 0.0;
    for _ in 0..3 {
        let sym = random_explicit(rng, 16);
        let a = opnorm(&sym, r, p(1.5), p(1.5), &opts).expect("estimate");
        let b = opnorm(&sym.conjugate(), r, p(3.0), p(3.0), &opts).expect("estimate");
        gap = gap.max((a.value - b.value).abs());
    }
    out.bounded("duality ‖T_a‖_p = ‖T_conj(a)‖_p'", gap, 1e-6);

    let sym = Symbol::Geometric { r: Scalar::new(0.3, 0.8) };
    let a = opnorm(&sym, r, p(1.7), p(1.7), &opts).expect("estimate");
    let b = opnorm(&sym, r, p(1.7), p(1.7), &opts).expect("estimate");
    out.push("determinism", a == b, format!("value {}", a.value));
}

fn spectral_suite(out: &mut Checks, rng: &mut ChaCha8Rng) {
    let families = [Symbol::Reciprocal, Symbol::Alternating, Symbol::Geometric { r: Scalar::new(0.7, 0.0) }];
    let exact = families.iter().all(|sym| point_spectrum(sym, res(10)).iter().all(|e| e.residual == 0.0));
    out.push("eigen-identity", exact, "T_a W_n = a_n W_n exactly, m = 10");

    let r = res(6);
    let mut worst: f64 = 0.0;
    for sym in &families {
        let dense = MultiplierMatrix::new(sym, r).dense().expect("m <= 12");
        let real: DMatrix<f64> = dense.map(|z| z.re);
        let mut eig: Vec<f64> = SymmetricEigen::new(real).eigenvalues.iter().copied().collect();
        let mut expected: Vec<f64> = sym.values(r.dim()).iter().map(|a| a.re).collect();
        eig.sort_by(f64::total_cmp);
        expected.sort_by(f64::total_cmp);
        worst = worst.max(eig.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }
    out.bounded("p=2 spectrum completeness (dense eigensolve)", worst, 1e-10);

    let mut formula: f64 = 0.0;
    let mut residual: f64 = 0.0;
    let mut tested = 0;
    while tested < 100 {
        let lambda = Scalar::new(rng.random_range(-1.5..2.5), rng.random_range(-1.5..1.5));
        let delta = Symbol::Reciprocal.closure_distance(lambda);
        if delta <= 0.05 {
            continue;
        }
        tested += 1;
        formula = formula.max((resolvent_norm_l2(&Symbol::Reciprocal, lambda) * delta - 1.0).abs());
        if tested % 10 == 0 {
            let f = StepFunction::random(res(8), rng);
            residual = residual.max(compose_check(&Symbol::Reciprocal, lambda, &f, 1e-12).expect("resolvent"));
        }
    }
    out.bounded("resolvent-formula ‖R(λ)‖·δ = 1", formula, 1e-12);
    out.bounded("compose_check residual", residual, 1e-10);

    let mut dichotomy = true;
    for sym in &families {
        for _ in 0..20 {
            let lambda = if rng.random_bool(0.3) {
                sym.value(rng.random_range(0..64))
            } else {
                Scalar::new(rng.random_range(-2.0..2.0), rng.random_range(-1.0..1.0))
            };
            let q = SpectralQuery::new(lambda, p(1.5), r);
            dichotomy &= match membership(sym, &q) {
                Ok(Membership::InSpectrum { delta, .. }) => delta <= q.tolerance,
                Ok(Membership::InResolvent { delta, compose_residual, .. }) => {
                    delta > q.tolerance && compose_residual < 1e-10
                }
                _ => false,
            };
        }
    }
    out.push("membership dichotomy", dichotomy, "exactly one verdict, resolvent certificates pass");

    let compact = [
        Symbol::Reciprocal,
        Symbol::Geometric { r: Scalar::new(0.5, 0.0) },
        Symbol::UnitDirac { n0: 2 },
        Symbol::Constant { c: Scalar::new(0.0, 0.0) },
    ];
    let not_compact = [
        Symbol::Alternating,
        Symbol::Constant { c: Scalar::new(0.5, 0.0) },
        Symbol::Geometric { r: Scalar::new(0.0, 1.0) },
    ];
    let ok = compact.iter().all(|s| Compactness::of(s) == Compactness::Compact)
        && not_compact.iter().all(|s| Compactness::of(s) == Compactness::NotCompact);
    out.push("compactness dichotomy", ok, "compact iff a_n -> 0");
}
