//! Exact norms on the finite-resolution spaces.
//!
//! `[0, 1)` carries Lebesgue measure, so a step function at resolution `m`
//! has `‖f‖_p = (2^-m Σ_i |f_i|^p)^{1/p}`. Coefficient vectors carry counting
//! measure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dyadic::{analysis, synthesis, CoeffVector, Resolution, StepFunction};
use crate::error::{Result, WalshError};
use crate::Scalar;

/// An exponent `p ∈ [1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PNorm(f64);

impl PNorm {
    pub const ONE: PNorm = PNorm(1.0);
    pub const TWO: PNorm = PNorm(2.0);
    pub const INFINITY: PNorm = PNorm(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(WalshError::InvalidExponent(p));
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Hölder conjugate `p' = p/(p-1)`, with `1' = ∞` and `∞' = 1`.
    pub fn dual(self) -> PNorm {
        if self.0 == 1.0 {
            PNorm::INFINITY
        } else if self.is_infinite() {
            PNorm::ONE
        } else {
            PNorm(self.0 / (self.0 - 1.0))
        }
    }

    /// `1/p`, zero at infinity.
    pub fn reciprocal(self) -> f64 {
        if self.is_infinite() {
            0.0
        } else {
            1.0 / self.0
        }
    }
}

impl TryFrom<f64> for PNorm {
    type Error = WalshError;
    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PNorm> for f64 {
    fn from(p: PNorm) -> f64 {
        p.0
    }
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for PNorm {
    type Err = WalshError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(PNorm::INFINITY),
            other => other.parse::<f64>().map_err(|_| WalshError::InvalidExponent(f64::NAN)).and_then(PNorm::new),
        }
    }
}

/// `(weight · Σ |v_i|^p)^{1/p}`, or `max |v_i|` at `p = ∞`.
///
/// Entries are rescaled by the largest modulus first so large `p` cannot overflow.
pub(crate) fn weighted_norm(values: &[Scalar], p: PNorm, weight: f64) -> f64 {
    let max = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if p.is_infinite() || max == 0.0 {
        return max;
    }
    let p = p.value();
    if p == 1.0 {
        return weight * values.iter().map(|v| v.norm()).sum::<f64>();
    }
    if p == 2.0 {
        return (weight * values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt();
    }
    let sum: f64 = values.iter().map(|v| (v.norm() / max).powf(p)).sum();
    max * (weight * sum).powf(1.0 / p)
}

/// `L^p[0,1]` norm of a step function.
pub fn lp_norm(f: &StepFunction, p: PNorm) -> f64 {
    weighted_norm(f.values(), p, 1.0 / f.len() as f64)
}

/// `ℓ^q` norm of a coefficient vector.
pub fn lq_norm(c: &CoeffVector, q: PNorm) -> f64 {
    weighted_norm(c.coeffs(), q, 1.0)
}

/// `‖W_n - W_k‖_p`, computed from the cell values.
pub fn walsh_distance(n: usize, k: usize, p: PNorm, res: Resolution) -> Result<f64> {
    let wn = StepFunction::walsh(n, res)?;
    let wk = StepFunction::walsh(k, res)?;
    Ok(lp_norm(&(&wn - &wk), p))
}

/// `‖f̂‖_{p'} / ‖f‖_p` for `1 < p ≤ 2`: a lower bound for the Hausdorff–Young
/// constant at this resolution.
pub fn hy_ratio(f: &StepFunction, p: PNorm) -> Result<f64> {
    if !(p.value() > 1.0 && p.value() <= 2.0) {
        return Err(WalshError::ExponentOutOfRange { p: p.value(), range: "(1, 2]" });
    }
    let denom = lp_norm(f, p);
    if denom == 0.0 {
        return Err(WalshError::UndefinedRatio);
    }
    Ok(lq_norm(&analysis(f), p.dual()) / denom)
}

/// `‖Σ c_n W_n‖_p / ‖c‖_{p'}` for `1 < p < 2`: a lower bound for the synthesis
/// constant at this resolution.
pub fn synthesis_ratio(c: &CoeffVector, p: PNorm) -> Result<f64> {
    if !(p.value() > 1.0 && p.value() < 2.0) {
        return Err(WalshError::ExponentOutOfRange { p: p.value(), range: "(1, 2)" });
    }
    let denom = lq_norm(c, p.dual());
    if denom == 0.0 {
        return Err(WalshError::UndefinedRatio);
    }
    Ok(lp_norm(&synthesis(c), p) / denom)
}
