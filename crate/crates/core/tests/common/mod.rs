//! Reference implementations that share no code with the library: Walsh
//! values from the sign of `sin`, dense matrices from those values, and norms
//! from their definitions.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> C {
    C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<C> {
    (0..len).map(|_| random_complex(rng)).collect()
}

/// `sign(sin(2^{k+1} π x))` at the midpoint of cell `i` of `2^m`.
pub fn rademacher(k: u32, i: usize, m: u32) -> f64 {
    let x = (i as f64 + 0.5) / (1u64 << m) as f64;
    let s = (2f64.powi(k as i32 + 1) * std::f64::consts::PI * x).sin();
    assert!(s.abs() > 1e-9, "midpoints avoid the zeros of sin");
    s.signum()
}

/// Paley-ordered Walsh value: product of `r_k` over the set bits of `n`.
pub fn walsh(n: usize, i: usize, m: u32) -> f64 {
    (0..m).filter(|&k| n >> k & 1 == 1).map(|k| rademacher(k, i, m)).product()
}

/// Walsh matrix with `W[(i, n)] = W_n(cell i)`.
pub fn walsh_matrix(m: u32) -> DMatrix<f64> {
    let dim = 1usize << m;
    DMatrix::from_fn(dim, dim, |i, n| walsh(n, i, m))
}

/// `f ↦ Σ_n a_n f̂(n) W_n` as a dense matrix on cell values.
pub fn multiplier_matrix(a: &[C], m: u32) -> DMatrix<C> {
    let dim = 1usize << m;
    let w = walsh_matrix(m);
    DMatrix::from_fn(dim, dim, |i, j| (0..dim).map(|n| a[n] * w[(i, n)] * w[(j, n)]).sum::<C>() / dim as f64)
}

/// `(1/N Σ |f_i|^p)^{1/p}`, or the max at `p = ∞`.
pub fn lp(values: &[C], p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    }
    (values.iter().map(|v| v.norm().powf(p)).sum::<f64>() / values.len() as f64).powf(1.0 / p)
}

/// `(Σ |c_n|^q)^{1/q}`, or the max at `q = ∞`.
pub fn lq(values: &[C], q: f64) -> f64 {
    if q.is_infinite() {
        return values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    }
    values.iter().map(|v| v.norm().powf(q)).sum::<f64>().powf(1.0 / q)
}

/// `f̂(n) = 1/N Σ_i f_i W_n(i)` by direct summation.
pub fn coefficients(f: &[C], m: u32) -> Vec<C> {
    let dim = f.len();
    (0..dim).map(|n| (0..dim).map(|i| f[i] * walsh(n, i, m)).sum::<C>() / dim as f64).collect()
}

pub fn dual(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// Largest column and row absolute sums: the exact `1→1` and `∞→∞` norms.
/// Uniform cell weights cancel in both.
pub fn one_and_inf_norms(m: &DMatrix<C>) -> (f64, f64) {
    let col = (0..m.ncols()).map(|j| m.column(j).iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max);
    let row = (0..m.nrows()).map(|i| m.row(i).iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max);
    (col, row)
}
