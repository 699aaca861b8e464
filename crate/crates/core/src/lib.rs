//! Walsh–Paley multiplier operators at finite dyadic resolution.
//!
//! A function on `[0, 1)` that is constant on the `2^m` dyadic cells is stored
//! as a [`StepFunction`]; its Paley-ordered Walsh–Fourier coefficients are a
//! [`CoeffVector`]. Both representations are exact: every Walsh function `W_n`
//! with `n < 2^m` is constant on those cells, so all integrals reduce to sums.
//!
//! On top of the transform layer the crate provides
//!
//! * exact `L^p` / `ℓ^q` norms and the inequality-ratio probes ([`metrics`]),
//! * multiplier symbols with closed-form tail and closure information and the
//!   operator `f ↦ Σ a_n f̂(n) W_n` ([`symbol`], [`multiplier`]),
//! * operator-norm estimation for arbitrary `(p_in, p_out)` ([`opnorm`], [`probe`]),
//! * spectrum, resolvent and compactness diagnostics ([`spectral`]),
//! * self-check suites used by the command-line front end ([`verify`]).

pub mod dyadic;
pub mod error;
pub mod metrics;
pub mod multiplier;
pub mod opnorm;
pub mod probe;
pub mod spectral;
pub mod symbol;
pub mod verify;

pub use dyadic::{analysis, fwht, synthesis, CoeffVector, Resolution, StepFunction};
pub use error::{Result, WalshError};
pub use metrics::PNorm;
pub use multiplier::MultiplierMatrix;
pub use opnorm::{NormEstimate, NormKind, OpnormOptions};
pub use symbol::Symbol;

/// Scalar type of every value, coefficient and symbol entry.
pub type Scalar = num_complex::Complex64;
