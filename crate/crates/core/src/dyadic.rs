//! Rademacher and Walsh–Paley functions on the dyadic cells of `[0, 1)`, the
//! fast Walsh–Hadamard transform in Paley order, and the analysis/synthesis
//! pair between step functions and coefficient vectors.
//!
//! Cell `i` at resolution `m` is `[i·2^-m, (i+1)·2^-m)`. Function values are
//! attached to cells through the binary digits of the left endpoint, so no
//! sampling at breakpoints ever happens.

use std::ops::{Add, Mul, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WalshError};
use crate::Scalar;

/// Largest number of dyadic levels a [`Resolution`] may carry.
pub const MAX_LEVELS: u32 = 30;

/// Number of dyadic levels `m`; the cell count is `2^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Resolution(u32);

impl Resolution {
    pub fn new(m: u32) -> Result<Self> {
        if m > MAX_LEVELS {
            return Err(WalshError::ResolutionTooFine { m, max: MAX_LEVELS });
        }
        Ok(Self(m))
    }

    /// Resolution whose cell count equals `len`.
    pub fn from_len(len: usize) -> Result<Self> {
        if !len.is_power_of_two() {
            return Err(WalshError::NotPowerOfTwo(len));
        }
        Self::new(len.trailing_zeros())
    }

    pub fn levels(self) -> u32 {
        self.0
    }

    pub fn dim(self) -> usize {
        1usize << self.0
    }

    /// Reverses the low `m` bits of `i`.
    #[inline]
    pub fn reverse_bits(self, i: usize) -> usize {
        if self.0 == 0 {
            0
        } else {
            i.reverse_bits() >> (usize::BITS - self.0)
        }
    }

    fn check_index(self, index: usize) -> Result<()> {
        if index >= self.dim() {
            Err(WalshError::IndexOutOfRange { index, dim: self.dim() })
        } else {
            Ok(())
        }
    }
}

impl TryFrom<u32> for Resolution {
    type Error = WalshError;
    fn try_from(m: u32) -> Result<Self> {
        Self::new(m)
    }
}

impl From<Resolution> for u32 {
    fn from(r: Resolution) -> u32 {
        r.0
    }
}

/// `r_k` on cell `cell`: `+1` when the `(k+1)`-th binary digit of the cell's
/// left endpoint is 0, `-1` otherwise.
pub fn rademacher_value(k: u32, cell: usize, res: Resolution) -> Result<i8> {
    if k >= res.levels() {
        return Err(WalshError::ResolutionTooCoarse { level: k, m: res.levels() });
    }
    res.check_index(cell)?;
    let digit = (cell >> (res.levels() - 1 - k)) & 1;
    Ok(if digit == 0 { 1 } else { -1 })
}

/// `W_n` on cell `cell`, Paley order.
pub fn walsh_value(n: usize, cell: usize, res: Resolution) -> Result<i8> {
    res.check_index(n)?;
    res.check_index(cell)?;
    Ok(walsh_sign(n, cell, res))
}

/// Unchecked form of [`walsh_value`]: `(-1)^{popcount(n & rev_m(cell))}`.
#[inline]
pub(crate) fn walsh_sign(n: usize, cell: usize, res: Resolution) -> i8 {
    if (n & res.reverse_bits(cell)).count_ones() & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Paley-ordered Walsh–Hadamard transform in place: `v ← H v` with
/// `H[n][i] = W_n(cell i)`. Unnormalized, so applying it twice multiplies by
/// the length.
///
/// Works for any additive scalar so that integer inputs stay exact.
pub fn fwht_in_place<T>(values: &mut [T]) -> Result<()>
where
    T: Copy + Add<Output = T> + Sub<Output = T>,
{
    let res = Resolution::from_len(values.len())?;
    // Paley order = natural (Hadamard) order composed with bit reversal of the input.
    bit_reverse_permute(values, res.levels());
    // Stages act on distinct index bits and commute, so the short strides run
    // block by block while the block is cache resident.
    let block = values.len().min(BUTTERFLY_BLOCK);
    for chunk in values.chunks_exact_mut(block) {
        butterflies(chunk, 1, block);
    }
    butterflies(values, block, values.len());
    Ok(())
}

/// Elements per cache-resident butterfly block (64 KiB of complex values).
const BUTTERFLY_BLOCK: usize = 1 << 12;
/// Side length exponent of the tiles used by the bit-reversal permutation.
const REVERSE_TILE_BITS: u32 = 4;

/// Radix-2 stages with `half` in `[from, to)` over the whole slice.
fn butterflies<T>(values: &mut [T], from: usize, to: usize)
where
    T: Copy + Add<Output = T> + Sub<Output = T>,
{
    let mut half = from;
    while half < to {
        for block in values.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
}

fn reverse(i: usize, bits: u32) -> usize {
    if bits == 0 {
        0
    } else {
        i.reverse_bits() >> (usize::BITS - bits)
    }
}

/// Swaps `v[i]` and `v[rev_m(i)]`. Indices split as `(a, b, c)` with `a`, `c`
/// of `k` bits; `rev(a, b, c) = (rev c, rev b, rev a)`, so the swaps between
/// the slabs `b` and `rev b` form `2^k x 2^k` tiles of short contiguous rows.
fn bit_reverse_permute<T>(values: &mut [T], m: u32) {
    let k = REVERSE_TILE_BITS;
    if m < 2 * k {
        for i in 0..values.len() {
            let j = reverse(i, m);
            if i < j {
                values.swap(i, j);
            }
        }
        return;
    }
    let mid = m - 2 * k;
    let side = 1usize << k;
    let rev_small: Vec<usize> = (0..side).map(|x| reverse(x, k)).collect();
    for b in 0..1usize << mid {
        let rb = reverse(b, mid);
        if b > rb {
            continue;
        }
        for a in 0..side {
            for c in 0..side {
                let i = a << (m - k) | b << k | c;
                let j = rev_small[c] << (m - k) | rb << k | rev_small[a];
                if b < rb || i < j {
                    values.swap(i, j);
                }
            }
        }
    }
}

/// Allocating form of [`fwht_in_place`].
pub fn fwht(values: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut out = values.to_vec();
    fwht_in_place(&mut out)?;
    Ok(out)
}

/// `H v` by the O(N²) double loop over [`walsh_value`]; used for benchmarking
/// and self-checks.
pub fn naive_transform(values: &[Scalar]) -> Result<Vec<Scalar>> {
    let res = Resolution::from_len(values.len())?;
    Ok((0..res.dim())
        .map(|n| {
            values.iter().enumerate().fold(Scalar::new(0.0, 0.0), |acc, (i, v)| {
                if walsh_sign(n, i, res) > 0 {
                    acc + v
                } else {
                    acc - v
                }
            })
        })
        .collect())
}

/// Cell values of a dyadic step function at a fixed resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    resolution: Resolution,
    values: Vec<Scalar>,
}

impl StepFunction {
    pub fn new(values: Vec<Scalar>) -> Result<Self> {
        let resolution = Resolution::from_len(values.len())?;
        Ok(Self { resolution, values })
    }

    pub fn from_fn(res: Resolution, f: impl FnMut(usize) -> Scalar) -> Self {
        Self { resolution: res, values: (0..res.dim()).map(f).collect() }
    }

    pub fn constant(res: Resolution, c: Scalar) -> Self {
        Self { resolution: res, values: vec![c; res.dim()] }
    }

    pub fn zeros(res: Resolution) -> Self {
        Self::constant(res, Scalar::new(0.0, 0.0))
    }

    /// Step form of `W_n`.
    pub fn walsh(n: usize, res: Resolution) -> Result<Self> {
        res.check_index(n)?;
        Ok(Self::from_fn(res, |i| Scalar::new(walsh_sign(n, i, res) as f64, 0.0)))
    }

    /// Entries with real and imaginary parts uniform in `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(res: Resolution, rng: &mut R) -> Self {
        Self { resolution: res, values: random_vector(res.dim(), rng) }
    }

    /// Real entries uniform in `[-1, 1)`.
    pub fn random_real<R: Rng + ?Sized>(res: Resolution, rng: &mut R) -> Self {
        Self::from_fn(res, |_| Scalar::new(rng.random_range(-1.0..1.0), 0.0))
    }

    pub fn resolution(&self) -> Resolution {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Scalar] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Scalar> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.resolution, other.resolution, "resolution mismatch");
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Paley-ordered Walsh–Fourier coefficients `f̂(n)`, `n < 2^m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffVector {
    resolution: Resolution,
    coeffs: Vec<Scalar>,
}

impl CoeffVector {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        let resolution = Resolution::from_len(coeffs.len())?;
        Ok(Self { resolution, coeffs })
    }

    pub fn from_fn(res: Resolution, f: impl FnMut(usize) -> Scalar) -> Self {
        Self { resolution: res, coeffs: (0..res.dim()).map(f).collect() }
    }

    /// Unit vector `e_n`.
    pub fn unit(n: usize, res: Resolution) -> Result<Self> {
        res.check_index(n)?;
        Ok(Self::from_fn(res, |k| Scalar::new(if k == n { 1.0 } else { 0.0 }, 0.0)))
    }

    pub fn random<R: Rng + ?Sized>(res: Resolution, rng: &mut R) -> Self {
        Self { resolution: res, coeffs: random_vector(res.dim(), rng) }
    }

    pub fn resolution(&self) -> Resolution {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Scalar] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.resolution, other.resolution, "resolution mismatch");
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `f̂(n) = 2^-m Σ_i f_i W_n(i)`; exact because both factors are cell-constant.
pub fn analysis(f: &StepFunction) -> CoeffVector {
    let mut coeffs = f.values.clone();
    fwht_in_place(&mut coeffs).expect("step function length is a power of two");
    let scale = 1.0 / f.len() as f64;
    for c in &mut coeffs {
        *c *= scale;
    }
    CoeffVector { resolution: f.resolution, coeffs }
}

/// `Σ_{n<2^m} c_n W_n` as cell values.
pub fn synthesis(c: &CoeffVector) -> StepFunction {
    let mut values = c.coeffs.clone();
    fwht_in_place(&mut values).expect("coefficient length is a power of two");
    StepFunction { resolution: c.resolution, values }
}

pub(crate) fn random_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Scalar> {
    (0..len).map(|_| Scalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

impl Add for &StepFunction {
    type Output = StepFunction;
    fn add(self, rhs: &StepFunction) -> StepFunction {
        assert_eq!(self.resolution, rhs.resolution, "resolution mismatch");
        StepFunction {
            resolution: self.resolution,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &StepFunction {
    type Output = StepFunction;
    fn sub(self, rhs: &StepFunction) -> StepFunction {
        assert_eq!(self.resolution, rhs.resolution, "resolution mismatch");
        StepFunction {
            resolution: self.resolution,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&StepFunction> for Scalar {
    type Output = StepFunction;
    fn mul(self, rhs: &StepFunction) -> StepFunction {
        StepFunction { resolution: rhs.resolution, values: rhs.values.iter().map(|v| self * v).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn res(m: u32) -> Resolution {
        Resolution::new(m).unwrap()
    }

    fn c(re: f64) -> Scalar {
        Scalar::new(re, 0.0)
    }

    #[test]
    fn tiled_bit_reversal_matches_direct() {
        for m in 0..=15 {
            let mut v: Vec<usize> = (0..1usize << m).collect();
            bit_reverse_permute(&mut v, m);
            assert!(v.iter().enumerate().all(|(i, &x)| x == reverse(i, m)), "m = {m}");
        }
    }

    #[test]
    fn blocked_transform_matches_naive_beyond_one_block() {
        let m = 13;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v: Vec<i64> = (0..1usize << m).map(|_| rng.random_range(-9..10)).collect();
        let mut fast = v.clone();
        fwht_in_place(&mut fast).unwrap();
        let r = res(m);
        for n in [0usize, 1, 77, 4096, 8191] {
            let slow: i64 = (0..r.dim()).map(|i| v[i] * walsh_sign(n, i, r) as i64).sum();
            assert_eq!(fast[n], slow, "n = {n}");
        }
    }

    #[test]
    fn rademacher_examples() {
        assert_eq!(rademacher_value(0, 0, res(1)).unwrap(), 1);
        assert_eq!(rademacher_value(0, 1, res(1)).unwrap(), -1);
        let r1: Vec<i8> = (0..4).map(|i| rademacher_value(1, i, res(2)).unwrap()).collect();
        assert_eq!(r1, vec![1, -1, 1, -1]);
        assert_eq!(rademacher_value(0, 2, res(2)).unwrap(), -1);
    }

    #[test]
    fn rademacher_matches_sine_sign_at_cell_midpoints() {
        let r = res(6);
        for k in 0..6 {
            for cell in 0..r.dim() {
                let x = (cell as f64 + 0.5) / r.dim() as f64;
                let s = (2f64.powi(k as i32 + 1) * std::f64::consts::PI * x).sin().signum() as i8;
                assert_eq!(rademacher_value(k, cell, r).unwrap(), s, "k={k} cell={cell}");
            }
        }
    }

    #[test]
    fn rademacher_rejects_coarse_resolution() {
        assert_eq!(rademacher_value(2, 0, res(2)), Err(WalshError::ResolutionTooCoarse { level: 2, m: 2 }));
    }

    #[test]
    fn walsh_examples() {
        let r = res(2);
        for cell in 0..4 {
            assert_eq!(walsh_value(0, cell, r).unwrap(), 1);
        }
        let w3: Vec<i8> = (0..4).map(|i| walsh_value(3, i, r).unwrap()).collect();
        assert_eq!(w3, vec![1, -1, -1, 1]);
        assert!(walsh_value(4, 0, r).is_err());
    }

    #[test]
    fn walsh_is_product_of_rademachers() {
        let r = res(5);
        for n in 0..r.dim() {
            for cell in 0..r.dim() {
                let prod: i8 =
                    (0..5).filter(|k| (n >> k) & 1 == 1).map(|k| rademacher_value(k, cell, r).unwrap()).product();
                assert_eq!(walsh_value(n, cell, r).unwrap(), prod);
            }
        }
    }

    #[test]
    fn fwht_is_involutive_up_to_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = res(10);
        let v = random_vector(r.dim(), &mut rng);
        let twice = fwht(&fwht(&v).unwrap()).unwrap();
        let n = r.dim() as f64;
        let err = v.iter().zip(&twice).map(|(a, b)| (a * n - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12 * n, "err={err}");
    }

    #[test]
    fn fwht_of_ones() {
        let out = fwht(&vec![c(1.0); 16]).unwrap();
        assert_eq!(out[0], c(16.0));
        assert!(out[1..].iter().all(|v| *v == c(0.0)));
    }

    #[test]
    fn fwht_rejects_bad_length() {
        assert_eq!(fwht(&[c(1.0); 3]), Err(WalshError::NotPowerOfTwo(3)));
        let mut empty: Vec<Scalar> = Vec::new();
        assert!(fwht_in_place(&mut empty).is_err());
    }

    #[test]
    fn fwht_integer_exact() {
        let mut v: Vec<i64> = (0..64).map(|i| (i * 7 % 11) as i64 - 5).collect();
        let orig = v.clone();
        fwht_in_place(&mut v).unwrap();
        fwht_in_place(&mut v).unwrap();
        assert!(v.iter().zip(&orig).all(|(a, b)| *a == 64 * b));
    }

    #[test]
    fn analysis_examples() {
        let r = res(3);
        let one = StepFunction::constant(r, c(1.0));
        assert_eq!(analysis(&one), CoeffVector::unit(0, r).unwrap());
        let w5 = StepFunction::walsh(5, r).unwrap();
        assert_eq!(analysis(&w5), CoeffVector::unit(5, r).unwrap());
    }

    #[test]
    fn synthesis_examples() {
        let r = res(4);
        assert_eq!(synthesis(&CoeffVector::unit(0, r).unwrap()), StepFunction::constant(r, c(1.0)));
        for n in 0..r.dim() {
            assert_eq!(synthesis(&CoeffVector::unit(n, r).unwrap()), StepFunction::walsh(n, r).unwrap());
        }
    }

    #[test]
    fn analysis_synthesis_are_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = res(8);
        let coeffs = CoeffVector::random(r, &mut rng);
        assert!(analysis(&synthesis(&coeffs)).max_abs_diff(&coeffs) < 1e-12);
        let f = StepFunction::random(r, &mut rng);
        assert!(synthesis(&analysis(&f)).max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn resolution_serde_rejects_large_m() {
        assert!(serde_json::from_str::<Resolution>("31").is_err());
        assert_eq!(serde_json::from_str::<Resolution>("4").unwrap().dim(), 16);
    }
}
