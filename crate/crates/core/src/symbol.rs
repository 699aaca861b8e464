//! Multiplier symbols `{a_n}`.
//!
//! A symbol is an infinite sequence, so every variant carries closed forms for
//! the quantities finite data cannot certify: the tail supremum
//! `sup_{n>N} |a_n|`, the distance from a point to the closure of the range,
//! and whether `a_n → 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WalshError};
use crate::Scalar;

/// Enumeration window used where a closure distance has no closed form.
const ENUMERATION_WINDOW: usize = 1 << 16;

/// Largest order tried when recognizing a unimodular ratio as a root of unity.
const MAX_ROOT_ORDER: u32 = 4096;

const ROOT_TOLERANCE: f64 = 1e-12;

/// Tail of an explicit symbol beyond its stored prefix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailSpec {
    #[default]
    Zero,
    Constant {
        #[serde(with = "complex_repr")]
        c: Scalar,
    },
}

impl TailSpec {
    pub fn value(self) -> Scalar {
        match self {
            TailSpec::Zero => Scalar::new(0.0, 0.0),
            TailSpec::Constant { c } => c,
        }
    }
}

/// A multiplier symbol.
///
/// The first six variants are the serializable families; `Tail` and
/// `Resolvent` arise from [`crate::multiplier::tail`] and
/// [`crate::multiplier::resolvent_symbol`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", try_from = "SymbolRepr")]
pub enum Symbol {
    /// `a_n = c`.
    Constant {
        #[serde(with = "complex_repr")]
        c: Scalar,
    },
    /// `a_n = δ_{n, n0}`.
    UnitDirac { n0: usize },
    /// `a_n = 1/(n+1)`.
    Reciprocal,
    /// `a_n = (-1)^n`.
    Alternating,
    /// `a_n = r^n`, `|r| ≤ 1`.
    #[serde(rename = "geometric")]
    Geometric {
        #[serde(with = "complex_repr")]
        r: Scalar,
    },
    /// Stored prefix followed by a declared tail.
    Explicit {
        #[serde(with = "complex_vec_repr")]
        prefix: Vec<Scalar>,
        tail: TailSpec,
    },
    /// `a_n` for `n > cutoff`, zero otherwise.
    #[serde(skip)]
    Tail { base: Box<Symbol>, cutoff: usize },
    /// `b_n = 1/(a_n - λ)`.
    #[serde(skip)]
    Resolvent { base: Box<Symbol>, lambda: Scalar },
}

/// Accumulation points of a symbol's range.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitSet {
    Points(Vec<Scalar>),
    Circle { center: Scalar, radius: f64 },
}

impl LimitSet {
    pub fn distance(&self, lambda: Scalar) -> f64 {
        match self {
            LimitSet::Points(pts) => pts.iter().map(|p| (p - lambda).norm()).fold(f64::INFINITY, f64::min),
            LimitSet::Circle { center, radius } => ((lambda - center).norm() - radius).abs(),
        }
    }

    /// Image under `z ↦ 1/(z - λ)`; `λ` must lie off the set.
    fn invert_about(&self, lambda: Scalar) -> LimitSet {
        match self {
            LimitSet::Points(pts) => LimitSet::Points(pts.iter().map(|p| (p - lambda).inv()).collect()),
            LimitSet::Circle { center, radius } => {
                let d = center - lambda;
                let denom = d.norm_sqr() - radius * radius;
                LimitSet::Circle { center: d.conj() / denom, radius: radius / denom.abs() }
            }
        }
    }
}

impl Symbol {
    /// Checks the family parameters: `|r| ≤ 1`, finite entries.
    pub fn validate(&self) -> Result<()> {
        let finite = |z: &Scalar| z.re.is_finite() && z.im.is_finite();
        match self {
            Symbol::Constant { c } if !finite(c) => Err(WalshError::InvalidSymbol("non-finite constant".into())),
            Symbol::Geometric { r } if !finite(r) || r.norm() > 1.0 + ROOT_TOLERANCE => Err(WalshError::InvalidSymbol(
                format!("geometric ratio |r| = {} exceeds 1 (unbounded symbol)", r.norm()),
            )),
            Symbol::Explicit { prefix, tail } => {
                if prefix.iter().all(finite) && finite(&tail.value()) {
                    Ok(())
                } else {
                    Err(WalshError::InvalidSymbol("non-finite explicit entry".into()))
                }
            }
            Symbol::Tail { base, .. } => base.validate(),
            Symbol::Resolvent { base, lambda } => {
                base.validate()?;
                if base.closure_distance(*lambda) > 0.0 {
                    Ok(())
                } else {
                    Err(WalshError::InSpectrum { lambda: *lambda, delta: 0.0 })
                }
            }
            _ => Ok(()),
        }
    }

    /// Explicit symbol with prefix `f(0..len)` and zero tail.
    pub fn explicit_from_fn(len: usize, f: impl FnMut(usize) -> Scalar) -> Symbol {
        Symbol::Explicit { prefix: (0..len).map(f).collect(), tail: TailSpec::Zero }
    }

    pub fn value(&self, n: usize) -> Scalar {
        match self {
            Symbol::Constant { c } => *c,
            Symbol::UnitDirac { n0 } => real(if n == *n0 { 1.0 } else { 0.0 }),
            Symbol::Reciprocal => real(1.0 / (n as f64 + 1.0)),
            Symbol::Alternating => real(if n.is_multiple_of(2) { 1.0 } else { -1.0 }),
            Symbol::Geometric { r } => geometric_power(*r, n),
            Symbol::Explicit { prefix, tail } => prefix.get(n).copied().unwrap_or(tail.value()),
            Symbol::Tail { base, cutoff } => {
                if n <= *cutoff {
                    real(0.0)
                } else {
                    base.value(n)
                }
            }
            Symbol::Resolvent { base, lambda } => (base.value(n) - lambda).inv(),
        }
    }

    /// `(a_0, …, a_{len-1})`.
    pub fn values(&self, len: usize) -> Vec<Scalar> {
        (0..len).map(|n| self.value(n)).collect()
    }

    /// `sup_{n > cutoff} |a_n|`.
    pub fn tail_sup(&self, cutoff: usize) -> f64 {
        match self {
            Symbol::Constant { c } => c.norm(),
            Symbol::UnitDirac { n0 } => {
                if cutoff < *n0 {
                    1.0
                } else {
                    0.0
                }
            }
            Symbol::Reciprocal => 1.0 / (cutoff as f64 + 2.0),
            Symbol::Alternating => 1.0,
            Symbol::Geometric { r } => {
                let rho = r.norm();
                if unimodular(*r) {
                    rho.max(1.0)
                } else {
                    rho.powf(cutoff as f64 + 1.0)
                }
            }
            Symbol::Explicit { prefix, tail } => {
                prefix.iter().skip(cutoff.saturating_add(1)).map(|v| v.norm()).fold(tail.value().norm(), f64::max)
            }
            Symbol::Tail { base, cutoff: own } => base.tail_sup(cutoff.max(*own)),
            Symbol::Resolvent { base, lambda } => 1.0 / base.distance_from(*lambda, cutoff.saturating_add(1)),
        }
    }

    /// `sup_n |a_n|`.
    pub fn sup_abs(&self) -> f64 {
        self.value(0).norm().max(self.tail_sup(0))
    }

    /// `dist(λ, closure{a_n : n ≥ 0})`.
    pub fn closure_distance(&self, lambda: Scalar) -> f64 {
        self.distance_from(lambda, 0)
    }

    /// `dist(λ, closure{a_n : n ≥ start})`.
    pub fn distance_from(&self, lambda: Scalar, start: usize) -> f64 {
        match self {
            Symbol::Constant { c } => (lambda - c).norm(),
            Symbol::UnitDirac { n0 } => {
                if start <= *n0 {
                    lambda.norm().min((lambda - 1.0).norm())
                } else {
                    lambda.norm()
                }
            }
            Symbol::Reciprocal => reciprocal_distance(lambda, start),
            Symbol::Alternating => (lambda - 1.0).norm().min((lambda + 1.0).norm()),
            Symbol::Geometric { r } => geometric_distance(*r, lambda, start),
            Symbol::Explicit { prefix, tail } => {
                prefix.iter().skip(start).map(|v| (v - lambda).norm()).fold((tail.value() - lambda).norm(), f64::min)
            }
            Symbol::Tail { base, cutoff } => {
                if start <= *cutoff {
                    lambda.norm().min(base.distance_from(lambda, cutoff + 1))
                } else {
                    base.distance_from(lambda, start)
                }
            }
            Symbol::Resolvent { .. } => {
                // No closed form: enumerate a window, then fall back on the limit set.
                let window = (start..start.saturating_add(ENUMERATION_WINDOW))
                    .map(|n| (self.value(n) - lambda).norm())
                    .fold(f64::INFINITY, f64::min);
                window.min(self.limit_set().distance(lambda))
            }
        }
    }

    /// Accumulation points of `{a_n}`.
    pub fn limit_set(&self) -> LimitSet {
        match self {
            Symbol::Constant { c } => LimitSet::Points(vec![*c]),
            Symbol::UnitDirac { .. } | Symbol::Reciprocal => LimitSet::Points(vec![real(0.0)]),
            Symbol::Alternating => LimitSet::Points(vec![real(1.0), real(-1.0)]),
            Symbol::Geometric { r } => {
                if !unimodular(*r) {
                    LimitSet::Points(vec![real(0.0)])
                } else if let Some(q) = root_of_unity_order(*r) {
                    LimitSet::Points((0..q as usize).map(|k| geometric_power(*r, k)).collect())
                } else {
                    LimitSet::Circle { center: real(0.0), radius: 1.0 }
                }
            }
            Symbol::Explicit { tail, .. } => LimitSet::Points(vec![tail.value()]),
            Symbol::Tail { base, .. } => base.limit_set(),
            Symbol::Resolvent { base, lambda } => base.limit_set().invert_about(*lambda),
        }
    }

    /// Whether `a_n → 0`.
    pub fn is_c0(&self) -> bool {
        match self {
            Symbol::Constant { c } => c.norm() == 0.0,
            Symbol::UnitDirac { .. } | Symbol::Reciprocal => true,
            Symbol::Alternating => false,
            Symbol::Geometric { r } => !unimodular(*r),
            Symbol::Explicit { tail, .. } => tail.value().norm() == 0.0,
            Symbol::Tail { base, .. } => base.is_c0(),
            Symbol::Resolvent { .. } => false,
        }
    }

    /// Short family label used in tables.
    pub fn family_name(&self) -> String {
        match self {
            Symbol::Constant { .. } => "constant".into(),
            Symbol::UnitDirac { .. } => "unit_dirac".into(),
            Symbol::Reciprocal => "reciprocal".into(),
            Symbol::Alternating => "alternating".into(),
            Symbol::Geometric { .. } => "geometric".into(),
            Symbol::Explicit { .. } => "explicit".into(),
            Symbol::Tail { base, cutoff } => format!("tail({},{})", base.family_name(), cutoff),
            Symbol::Resolvent { base, .. } => format!("resolvent({})", base.family_name()),
        }
    }

    /// Pointwise complex conjugate.
    pub fn conjugate(&self) -> Symbol {
        match self {
            Symbol::Constant { c } => Symbol::Constant { c: c.conj() },
            Symbol::Geometric { r } => Symbol::Geometric { r: r.conj() },
            Symbol::Explicit { prefix, tail } => Symbol::Explicit {
                prefix: prefix.iter().map(|v| v.conj()).collect(),
                tail: match tail {
                    TailSpec::Zero => TailSpec::Zero,
                    TailSpec::Constant { c } => TailSpec::Constant { c: c.conj() },
                },
            },
            Symbol::Tail { base, cutoff } => Symbol::Tail { base: Box::new(base.conjugate()), cutoff: *cutoff },
            Symbol::Resolvent { base, lambda } => {
                Symbol::Resolvent { base: Box::new(base.conjugate()), lambda: lambda.conj() }
            }
            real_family => real_family.clone(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family_name())
    }
}

fn real(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

/// `|r| = 1` up to rounding; such ratios never decay.
fn unimodular(r: Scalar) -> bool {
    r.norm() >= 1.0 - ROOT_TOLERANCE
}

fn geometric_power(r: Scalar, n: usize) -> Scalar {
    if n == 0 {
        return real(1.0);
    }
    match u32::try_from(n) {
        Ok(k) => r.powu(k),
        Err(_) => r.powf(n as f64),
    }
}

/// Smallest `q ≤ MAX_ROOT_ORDER` with `r^q = 1` (to rounding), if any.
fn root_of_unity_order(r: Scalar) -> Option<u32> {
    let turns = r.arg() / std::f64::consts::TAU;
    (1..=MAX_ROOT_ORDER).find(|&q| {
        let x = turns * q as f64;
        (x - x.round()).abs() < ROOT_TOLERANCE * q as f64
    })
}

/// Distance from `λ` to `{1/k : k ≥ start+1} ∪ {0}`.
fn reciprocal_distance(lambda: Scalar, start: usize) -> f64 {
    let (x, y) = (lambda.re, lambda.im);
    let first = start as f64 + 1.0;
    if x <= 0.0 {
        return lambda.norm();
    }
    if x >= 1.0 / first {
        return (x - 1.0 / first).hypot(y);
    }
    let k_star = 1.0 / x;
    if k_star > 1e18 {
        // every remaining point is within 1e-18 of the origin
        return lambda.norm();
    }
    let lo = k_star.floor().max(first);
    let hi = k_star.ceil().max(first);
    let d = |k: f64| (x - 1.0 / k).hypot(y);
    d(lo).min(d(hi)).min(lambda.norm())
}

fn geometric_distance(r: Scalar, lambda: Scalar, start: usize) -> f64 {
    if unimodular(r) {
        return match root_of_unity_order(r) {
            Some(q) => (0..q as usize).map(|k| (geometric_power(r, k) - lambda).norm()).fold(f64::INFINITY, f64::min),
            None => (lambda.norm() - 1.0).abs(),
        };
    }
    // 0 is a limit point; points with |r|^n below the cutoff are within that of it.
    let mut best = lambda.norm();
    if best == 0.0 {
        return 0.0;
    }
    let floor = 1e-18 * best;
    let mut power = geometric_power(r, start);
    let mut n = start;
    while power.norm() > floor && n < start + (1 << 22) {
        best = best.min((power - lambda).norm());
        power *= r;
        n += 1;
    }
    best
}

/// JSON shape accepted for symbols; validated on conversion.
#[derive(Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
enum SymbolRepr {
    Constant {
        #[serde(with = "complex_repr")]
        c: Scalar,
    },
    UnitDirac {
        n0: usize,
    },
    // struct form so that stray fields are rejected like everywhere else
    Reciprocal {},
    Alternating {},
    Geometric {
        #[serde(with = "complex_repr")]
        r: Scalar,
    },
    Explicit {
        #[serde(with = "complex_vec_repr")]
        prefix: Vec<Scalar>,
        #[serde(default = "zero_tail")]
        tail: TailSpec,
    },
}

fn zero_tail() -> TailSpec {
    TailSpec::Zero
}

impl TryFrom<SymbolRepr> for Symbol {
    type Error = WalshError;
    fn try_from(repr: SymbolRepr) -> Result<Self> {
        let sym = match repr {
            SymbolRepr::Constant { c } => Symbol::Constant { c },
            SymbolRepr::UnitDirac { n0 } => Symbol::UnitDirac { n0 },
            SymbolRepr::Reciprocal {} => Symbol::Reciprocal,
            SymbolRepr::Alternating {} => Symbol::Alternating,
            SymbolRepr::Geometric { r } => Symbol::Geometric { r },
            SymbolRepr::Explicit { prefix, tail } => Symbol::Explicit { prefix, tail },
        };
        sym.validate()?;
        Ok(sym)
    }
}

/// Complex numbers as `[re, im]`; a bare number is read as a real value.
pub(crate) mod complex_repr {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Scalar;

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Repr {
        Pair([f64; 2]),
        Real(f64),
    }

    impl From<Repr> for Scalar {
        fn from(r: Repr) -> Scalar {
            match r {
                Repr::Pair([re, im]) => Scalar::new(re, im),
                Repr::Real(re) => Scalar::new(re, 0.0),
            }
        }
    }

    pub fn serialize<S: Serializer>(z: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq([z.re, z.im])
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        Repr::deserialize(d).map(Scalar::from)
    }
}

pub(crate) mod complex_vec_repr {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::complex_repr::Repr;
    use crate::Scalar;

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for z in v {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Scalar>, D::Error> {
        Ok(Vec::<Repr>::deserialize(d)?.into_iter().map(Scalar::from).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    /// Brute-force `sup_{cutoff < n < limit} |a_n|`.
    fn enumerated_tail_sup(sym: &Symbol, cutoff: usize, limit: usize) -> f64 {
        (cutoff + 1..limit).map(|n| sym.value(n).norm()).fold(0.0, f64::max)
    }

    fn families() -> Vec<Symbol> {
        vec![
            Symbol::Constant { c: c(0.5, -0.25) },
            Symbol::Constant { c: c(0.0, 0.0) },
            Symbol::UnitDirac { n0: 5 },
            Symbol::Reciprocal,
            Symbol::Alternating,
            Symbol::Geometric { r: c(0.7, 0.0) },
            Symbol::Geometric { r: c(0.0, 0.9) },
            Symbol::Geometric { r: c(0.0, 1.0) },
            Symbol::Explicit { prefix: vec![c(2.0, 0.0), c(0.0, -3.0), c(0.5, 0.5)], tail: TailSpec::Zero },
            Symbol::Explicit { prefix: vec![c(0.1, 0.0)], tail: TailSpec::Constant { c: c(-0.4, 0.0) } },
        ]
    }

    #[test]
    fn tail_sup_matches_enumeration() {
        let limit = 1 << 20;
        for sym in families() {
            for cutoff in [0usize, 1, 3, 4, 5, 17, 1000] {
                let brute = enumerated_tail_sup(&sym, cutoff, limit);
                let analytic = sym.tail_sup(cutoff);
                // analytic value may exceed the window maximum only by the part beyond the window
                assert!(analytic >= brute - 1e-15, "{sym} N={cutoff}: {analytic} < {brute}");
                let beyond = sym.tail_sup(limit - 1);
                assert!(analytic <= brute.max(beyond) + 1e-15, "{sym} N={cutoff}");
            }
        }
    }

    #[test]
    fn tail_sup_is_nonincreasing() {
        for sym in families() {
            let sups: Vec<f64> = (0..64).map(|n| sym.tail_sup(n)).collect();
            assert!(sups.windows(2).all(|w| w[1] <= w[0]), "{sym}: {sups:?}");
        }
    }

    #[test]
    fn c0_flag_agrees_with_tail_sup() {
        for sym in families() {
            let vanishing = sym.tail_sup(1 << 40) < 1e-9;
            assert_eq!(sym.is_c0(), vanishing, "{sym}");
        }
    }

    #[test]
    fn closure_distance_matches_enumeration() {
        let lambdas = [c(2.0, 0.0), c(0.3, 0.1), c(-0.5, 0.0), c(0.0, 0.0), c(0.26, 0.0), c(0.0, 1.0), c(0.7, -0.7)];
        let window = 1 << 16;
        for sym in families() {
            for &lambda in &lambdas {
                let brute = (0..window).map(|n| (sym.value(n) - lambda).norm()).fold(f64::INFINITY, f64::min);
                let analytic = sym.closure_distance(lambda);
                assert!(analytic <= brute + 1e-15, "{sym} at {lambda}: {analytic} > {brute}");
                // points beyond the window lie on the limit set, or within tail_sup of 0
                let slack = if sym.is_c0() { sym.tail_sup(window - 1) } else { 0.0 };
                let lower = brute.min(sym.limit_set().distance(lambda) - slack);
                assert!(analytic >= lower - 1e-15, "{sym} at {lambda}: {analytic} < {lower}");
            }
        }
    }

    #[test]
    fn reciprocal_distance_examples() {
        assert_eq!(Symbol::Reciprocal.closure_distance(c(2.0, 0.0)), 1.0);
        assert_eq!(Symbol::Reciprocal.closure_distance(c(0.0, 0.0)), 0.0);
        assert_eq!(Symbol::Reciprocal.closure_distance(c(0.5, 0.0)), 0.0);
        assert!((Symbol::Reciprocal.closure_distance(c(0.45, 0.0)) - 0.05).abs() < 1e-15);
        assert!((Symbol::Reciprocal.closure_distance(c(-1.0, 1.0)) - 2f64.sqrt()).abs() < 1e-15);
        assert!((Symbol::Reciprocal.distance_from(c(1.0, 0.0), 1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(Symbol::Alternating.tail_sup(12345), 1.0);
        assert_eq!(Symbol::Alternating.closure_distance(c(3.0, 0.0)), 2.0);
        assert_eq!(Symbol::Alternating.closure_distance(c(0.0, 0.0)), 1.0);
    }

    #[test]
    fn irrational_rotation_fills_the_circle() {
        let r = Scalar::from_polar(1.0, 1.0);
        let sym = Symbol::Geometric { r };
        assert!(matches!(sym.limit_set(), LimitSet::Circle { .. }));
        assert!((sym.closure_distance(c(0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!(sym.closure_distance(Scalar::from_polar(1.0, 2.5)).abs() < 1e-15);
        let root = Symbol::Geometric { r: Scalar::from_polar(1.0, std::f64::consts::TAU / 3.0) };
        match root.limit_set() {
            LimitSet::Points(p) => assert_eq!(p.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_schema_roundtrip() {
        let text = r#"{"family":"explicit","prefix":[[1,0],[0,2]],"tail":{"kind":"constant","c":[0.5,0]}}"#;
        let sym: Symbol = serde_json::from_str(text).unwrap();
        assert_eq!(sym.value(1), c(0.0, 2.0));
        assert_eq!(sym.value(7), c(0.5, 0.0));
        let back: Symbol = serde_json::from_str(&serde_json::to_string(&sym).unwrap()).unwrap();
        assert_eq!(back, sym);

        for text in [
            r#"{"family":"reciprocal"}"#,
            r#"{"family":"alternating"}"#,
            r#"{"family":"constant","c":[1,0]}"#,
            r#"{"family":"constant","c":2.5}"#,
            r#"{"family":"unit_dirac","n0":3}"#,
            r#"{"family":"geometric","r":[0.5,0.0]}"#,
            r#"{"family":"explicit","prefix":[[1,0]]}"#,
        ] {
            let sym: Symbol = serde_json::from_str(text).unwrap();
            let again: Symbol = serde_json::from_str(&serde_json::to_string(&sym).unwrap()).unwrap();
            assert_eq!(sym, again);
        }
    }

    #[test]
    fn json_schema_rejects_bad_symbols() {
        for text in [
            r#"{"family":"geometric","r":[2.0,0.0]}"#,
            r#"{"family":"bogus"}"#,
            r#"{"family":"constant"}"#,
            r#"{"family":"explicit","prefix":[[1,0]],"tail":{"kind":"weird"}}"#,
            r#"{"family":"reciprocal","extra":1}"#,
            r#"{"family":"unit_dirac","n0":1,"c":[1,0]}"#,
        ] {
            assert!(serde_json::from_str::<Symbol>(text).is_err(), "{text}");
        }
    }

    #[test]
    fn conjugation_is_an_involution() {
        for sym in families() {
            let back = sym.conjugate().conjugate();
            for n in 0..4096 {
                assert_eq!(back.value(n), sym.value(n));
                assert_eq!(sym.conjugate().value(n), sym.value(n).conj());
            }
        }
    }
}
