//! The multiplier `T_a f = Σ a_n f̂(n) W_n` restricted to step functions at a
//! fixed resolution, and the symbol algebra around it (truncation, tails,
//! conjugation, resolvent symbols).

use nalgebra::DMatrix;

use crate::dyadic::{analysis, fwht_in_place, synthesis, Resolution, StepFunction};
use crate::error::{Result, WalshError};
use crate::metrics::{lp_norm, PNorm};
use crate::symbol::{Symbol, TailSpec};
use crate::Scalar;

/// Largest resolution at which operators are materialized densely.
pub const MAX_DENSE_LEVELS: u32 = 12;

/// Default tolerance below which `dist(λ, closure{a_n})` counts as zero.
pub const DEFAULT_DELTA_TOLERANCE: f64 = 1e-12;

/// `T_a` on the `2^m`-dimensional step-function space: diagonal in
/// coefficient space with entries `a_0, …, a_{2^m - 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierMatrix {
    resolution: Resolution,
    diagonal: Vec<Scalar>,
}

impl MultiplierMatrix {
    pub fn new(sym: &Symbol, res: Resolution) -> Self {
        Self { resolution: res, diagonal: sym.values(res.dim()) }
    }

    pub fn from_diagonal(diagonal: Vec<Scalar>) -> Result<Self> {
        let resolution = Resolution::from_len(diagonal.len())?;
        Ok(Self { resolution, diagonal })
    }

    pub fn resolution(&self) -> Resolution {
        self.resolution
    }

    pub fn diagonal(&self) -> &[Scalar] {
        &self.diagonal
    }

    /// Operator with the conjugated diagonal; the adjoint under `∫ f ḡ`.
    pub fn adjoint(&self) -> Self {
        Self { resolution: self.resolution, diagonal: self.diagonal.iter().map(|a| a.conj()).collect() }
    }

    /// `v ↦ H D H v / 2^m` on raw cell values, in place.
    pub fn apply_in_place(&self, values: &mut [Scalar]) {
        assert_eq!(values.len(), self.diagonal.len(), "dimension mismatch");
        fwht_in_place(values).expect("power-of-two length");
        let scale = 1.0 / values.len() as f64;
        for (v, a) in values.iter_mut().zip(&self.diagonal) {
            *v *= a * scale;
        }
        fwht_in_place(values).expect("power-of-two length");
    }

    pub fn apply(&self, f: &StepFunction) -> StepFunction {
        assert_eq!(f.resolution(), self.resolution, "resolution mismatch");
        let mut out = f.clone();
        self.apply_in_place(out.values_mut());
        out
    }

    /// Dense matrix on cell values, built column by column.
    pub fn dense(&self) -> Result<DMatrix<Scalar>> {
        let m = self.resolution.levels();
        if m > MAX_DENSE_LEVELS {
            return Err(WalshError::ResolutionTooFine { m, max: MAX_DENSE_LEVELS });
        }
        let dim = self.resolution.dim();
        let mut matrix = DMatrix::zeros(dim, dim);
        let mut column = vec![Scalar::new(0.0, 0.0); dim];
        for j in 0..dim {
            column.iter_mut().for_each(|v| *v = Scalar::new(0.0, 0.0));
            column[j] = Scalar::new(1.0, 0.0);
            self.apply_in_place(&mut column);
            matrix.column_mut(j).copy_from_slice(&column);
        }
        Ok(matrix)
    }
}

/// `T_a f`.
pub fn apply(sym: &Symbol, f: &StepFunction) -> StepFunction {
    let mut coeffs = analysis(f);
    for (n, c) in coeffs.coeffs_mut().iter_mut().enumerate() {
        *c *= sym.value(n);
    }
    synthesis(&coeffs)
}

/// Finite-rank truncation keeping `a_0, …, a_cutoff`.
pub fn truncate(sym: &Symbol, cutoff: usize) -> Symbol {
    Symbol::Explicit { prefix: sym.values(cutoff + 1), tail: TailSpec::Zero }
}

/// `a_n` for `n > cutoff`, zero below.
pub fn tail(sym: &Symbol, cutoff: usize) -> Symbol {
    Symbol::Tail { base: Box::new(sym.clone()), cutoff }
}

pub fn conjugate(sym: &Symbol) -> Symbol {
    sym.conjugate()
}

/// Resolvent symbol `b_n = 1/(a_n - λ)` together with the certified gap
/// `δ = dist(λ, closure{a_n})`, so that `sup |b_n| ≤ 1/δ`.
pub fn resolvent_symbol(sym: &Symbol, lambda: Scalar, tolerance: f64) -> Result<(Symbol, f64)> {
    let delta = sym.closure_distance(lambda);
    if delta <= tolerance {
        return Err(WalshError::InSpectrum { lambda, delta });
    }
    let resolvent = match sym {
        Symbol::Explicit { prefix, tail } => Symbol::Explicit {
            prefix: prefix.iter().map(|a| (a - lambda).inv()).collect(),
            tail: TailSpec::Constant { c: (tail.value() - lambda).inv() },
        },
        Symbol::Constant { c } => Symbol::Constant { c: (c - lambda).inv() },
        other => Symbol::Resolvent { base: Box::new(other.clone()), lambda },
    };
    Ok((resolvent, delta))
}

/// Largest `L²` residual of `T_b (T_a - λ) f = f` and `(T_a - λ) T_b f = f`.
pub fn compose_check(sym: &Symbol, lambda: Scalar, f: &StepFunction, tolerance: f64) -> Result<f64> {
    let (b, _) = resolvent_symbol(sym, lambda, tolerance)?;
    let shifted = |g: &StepFunction| &apply(sym, g) - &(lambda * g);

    let left = apply(&b, &shifted(f));
    let right = shifted(&apply(&b, f));
    Ok(lp_norm(&(&left - f), PNorm::TWO).max(lp_norm(&(&right - f), PNorm::TWO)))
}
