//! Finite Fourier series on the unit circle with values in `C^d`, the Riesz
//! projections, harmonic extension into the disk and the reproducing kernels
//! of the Hardy space `H^2`.
//!
//! A [`TrigPolynomial`] stores the coefficient vectors `f^(n)` densely over a
//! contiguous frequency window `[n_min, n_max]`. Every operation here is exact
//! coefficient arithmetic; nothing is sampled.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default target for the squared tail `|λ|^{2(N+1)}` of a truncated kernel.
pub const DEFAULT_KERNEL_TAIL: f64 = 1e-14;
/// Hard cap on the automatically chosen kernel truncation degree.
pub const MAX_KERNEL_DEGREE: usize = 1 << 14;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "Complex64")]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if value.re.is_finite() && value.im.is_finite() && value.norm_sqr() < 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::OutsideDisk {
                re: value.re,
                im: value.im,
            })
        }
    }

    pub fn from_re_im(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(r, theta))
    }

    pub const fn origin() -> Self {
        Self(ZERO)
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        self.0.norm()
    }
}

impl From<DiskPoint> for Complex64 {
    fn from(p: DiskPoint) -> Self {
        p.0
    }
}

impl TryFrom<Complex64> for DiskPoint {
    type Error = Error;
    fn try_from(value: Complex64) -> Result<Self> {
        Self::new(value)
    }
}

impl<'de> Deserialize<'de> for DiskPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let z = Complex64::deserialize(d)?;
        DiskPoint::new(z).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.0.re, self.0.im)
    }
}

/// Which Riesz projection to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Onto `H^2`: frequencies `n >= 0`.
    Plus,
    /// Onto `H^2_-`: frequencies `n <= -1`.
    Minus,
}

/// Vector-valued trigonometric polynomial `Σ_n f^(n) z^n`, `f^(n) ∈ C^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TrigPolynomialRepr", into = "TrigPolynomialRepr")]
pub struct TrigPolynomial {
    dim: usize,
    n_min: i64,
    // frequency-major, `dim` entries per frequency
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrigPolynomialRepr {
    dim: usize,
    n_min: i64,
    coeffs: Vec<Vec<Complex64>>,
}

impl TryFrom<TrigPolynomialRepr> for TrigPolynomial {
    type Error = Error;
    fn try_from(r: TrigPolynomialRepr) -> Result<Self> {
        TrigPolynomial::new(r.dim, r.n_min, r.coeffs)
    }
}

impl From<TrigPolynomial> for TrigPolynomialRepr {
    fn from(p: TrigPolynomial) -> Self {
        TrigPolynomialRepr {
            dim: p.dim,
            n_min: p.n_min,
            coeffs: p.coeffs.chunks(p.dim).map(<[_]>::to_vec).collect(),
        }
    }
}

impl TrigPolynomial {
    /// Builds a polynomial from one `dim`-vector per frequency, starting at `n_min`.
    pub fn new(dim: usize, n_min: i64, coeffs: Vec<Vec<Complex64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let mut flat = Vec::with_capacity(coeffs.len() * dim);
        for c in coeffs {
            if c.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.len(),
                });
            }
            flat.extend(c);
        }
        Self::from_flat(dim, n_min, flat)
    }

    pub fn from_flat(dim: usize, n_min: i64, coeffs: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || !coeffs.len().is_multiple_of(dim) {
            return Err(Error::InvalidArgument(format!(
                "flat coefficient length {} is not a multiple of dim {dim}",
                coeffs.len()
            )));
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFinite {
                what: "trigonometric polynomial",
            });
        }
        Ok(Self { dim, n_min, coeffs }.trimmed())
    }

    /// Scalar polynomial with `coeffs[i]` at frequency `n_min + i`.
    pub fn scalar(n_min: i64, coeffs: Vec<Complex64>) -> Self {
        Self {
            dim: 1,
            n_min,
            coeffs,
        }
        .trimmed()
    }

    /// Scalar analytic polynomial `Σ_{k>=0} coeffs[k] z^k`.
    pub fn analytic(coeffs: Vec<Complex64>) -> Self {
        Self::scalar(0, coeffs)
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            n_min: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::scalar(0, vec![c])
    }

    /// `c z^n` (scalar).
    pub fn monomial(n: i64, c: Complex64) -> Self {
        Self::scalar(n, vec![c])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored frequencies.
    pub fn len(&self) -> usize {
        self.coeffs.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest stored frequency, `None` for the zero polynomial.
    pub fn n_min(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.n_min)
    }

    pub fn n_max(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.n_min + self.len() as i64 - 1)
    }

    /// Largest `|n|` with a nonzero coefficient (0 for the zero polynomial).
    pub fn max_abs_frequency(&self) -> u64 {
        match (self.n_min(), self.n_max()) {
            (Some(lo), Some(hi)) => lo.unsigned_abs().max(hi.unsigned_abs()),
            _ => 0,
        }
    }

    /// Analytic degree; `None` for zero, error if negative frequencies are present.
    pub fn degree(&self) -> Result<Option<usize>> {
        self.require_analytic()?;
        Ok(self.n_max().map(|n| n as usize))
    }

    pub fn is_analytic(&self) -> bool {
        self.n_min().is_none_or(|n| n >= 0)
    }

    pub fn require_analytic(&self) -> Result<()> {
        match self.n_min() {
            Some(n) if n < 0 => Err(Error::NotAnalytic { n_min: n }),
            _ => Ok(()),
        }
    }

    /// The coefficient vector at frequency `n`, or `None` when it is zero by support.
    pub fn coeff(&self, n: i64) -> Option<&[Complex64]> {
        let off = n - self.n_min;
        if self.is_zero() || off < 0 || off as usize >= self.len() {
            return None;
        }
        let i = off as usize * self.dim;
        Some(&self.coeffs[i..i + self.dim])
    }

    /// Coordinate `i` of `f^(n)`.
    pub fn coeff_at(&self, n: i64, i: usize) -> Complex64 {
        self.coeff(n).map_or(ZERO, |c| c[i])
    }

    /// Iterates `(n, f^(n))` over the stored window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &[Complex64])> + '_ {
        self.coeffs
            .chunks(self.dim)
            .enumerate()
            .map(move |(i, c)| (self.n_min + i as i64, c))
    }

    /// Coordinate function `i` as a scalar polynomial.
    pub fn component(&self, i: usize) -> TrigPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .skip(i)
            .step_by(self.dim)
            .copied()
            .collect();
        Self::scalar(self.n_min, coeffs)
    }

    /// Reassembles a vector polynomial from scalar coordinate functions.
    pub fn from_components(parts: &[TrigPolynomial]) -> Result<Self> {
        let dim = parts.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("need at least one component".into()));
        }
        if let Some(p) = parts.iter().find(|p| p.dim != 1) {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: p.dim,
            });
        }
        let lo = parts.iter().filter_map(|p| p.n_min()).min();
        let hi = parts.iter().filter_map(|p| p.n_max()).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Ok(Self::zero(dim));
        };
        let mut flat = vec![ZERO; (hi - lo + 1) as usize * dim];
        for (i, p) in parts.iter().enumerate() {
            for (n, c) in p.iter() {
                flat[(n - lo) as usize * dim + i] = c[0];
            }
        }
        Ok(Self {
            dim,
            n_min: lo,
            coeffs: flat,
        }
        .trimmed())
    }

    fn trimmed(mut self) -> Self {
        let d = self.dim;
        let lead = self
            .coeffs
            .chunks(d)
            .take_while(|c| c.iter().all(|x| *x == ZERO))
            .count();
        let trail = self
            .coeffs
            .chunks(d)
            .rev()
            .take_while(|c| c.iter().all(|x| *x == ZERO))
            .count();
        let len = self.len();
        if lead == len {
            return Self::zero(d);
        }
        self.coeffs.truncate((len - trail) * d);
        self.coeffs.drain(..lead * d);
        self.n_min += lead as i64;
        self
    }

    /// Restriction of the coefficient window to `[lo, hi]`.
    pub fn truncate(&self, lo: i64, hi: i64) -> TrigPolynomial {
        if self.is_zero() || hi < lo {
            return Self::zero(self.dim);
        }
        let a = lo.max(self.n_min);
        let b = hi.min(self.n_max().unwrap());
        if b < a {
            return Self::zero(self.dim);
        }
        let s = (a - self.n_min) as usize * self.dim;
        let e = (b - self.n_min + 1) as usize * self.dim;
        Self {
            dim: self.dim,
            n_min: a,
            coeffs: self.coeffs[s..e].to_vec(),
        }
        .trimmed()
    }

    pub fn riesz_project(&self, side: Side) -> TrigPolynomial {
        match side {
            Side::Plus => self.truncate(0, i64::MAX / 2),
            Side::Minus => self.truncate(i64::MIN / 2, -1),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        self.check_dim(other)?;
        let d = self.dim;
        let lo = match (self.n_min(), other.n_min()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return Ok(Self::zero(d)),
        };
        let hi = self.n_max().into_iter().chain(other.n_max()).max().unwrap();
        let mut out = Vec::with_capacity((hi - lo + 1) as usize * d);
        for n in lo..=hi {
            for i in 0..d {
                out.push(op(self.coeff_at(n, i), other.coeff_at(n, i)));
            }
        }
        Ok(Self {
            dim: d,
            n_min: lo,
            coeffs: out,
        }
        .trimmed())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            n_min: self.n_min,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
        .trimmed()
    }

    /// `f ⊗ v`: scalar polynomial `self` times a constant vector `v ∈ C^d`.
    pub fn outer(&self, v: &[Complex64]) -> Result<Self> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.dim,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .flat_map(|c| v.iter().map(move |x| c * x))
            .collect();
        Self::from_flat(v.len(), self.n_min, coeffs)
    }

    /// Pointwise product on the circle of a scalar polynomial `self` and a
    /// vector polynomial `g`, i.e. the finite convolution of the coefficient
    /// sequences.
    pub fn multiply(&self, g: &Self) -> Result<Self> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.dim,
            });
        }
        let d = g.dim;
        if self.is_zero() || g.is_zero() {
            return Ok(Self::zero(d));
        }
        let (la, lb) = (self.len(), g.len());
        let mut out = vec![ZERO; (la + lb - 1) * d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            for (j, b) in g.coeffs.chunks(d).enumerate() {
                let dst = &mut out[(i + j) * d..(i + j + 1) * d];
                for (o, x) in dst.iter_mut().zip(b) {
                    *o += a * x;
                }
            }
        }
        Ok(Self {
            dim: d,
            n_min: self.n_min + g.n_min,
            coeffs: out,
        }
        .trimmed())
    }

    /// Coordinatewise complex conjugation of the function on the circle:
    /// the coefficient at `n` becomes the conjugate of the coefficient at `-n`.
    pub fn conjugate(&self) -> Self {
        if self.is_zero() {
            return Self::zero(self.dim);
        }
        let d = self.dim;
        let coeffs = self
            .coeffs
            .chunks(d)
            .rev()
            .flat_map(|c| c.iter().map(|x| x.conj()))
            .collect();
        Self {
            dim: d,
            n_min: -self.n_max().unwrap(),
            coeffs,
        }
    }

    /// `(f, g) = Σ_n <f^(n), g^(n)>_E`, conjugate-linear in `g`.
    pub fn inner_product(&self, g: &Self) -> Result<Complex64> {
        self.check_dim(g)?;
        let (Some(lo), Some(hi)) = (self.n_min(), self.n_max()) else {
            return Ok(ZERO);
        };
        let mut acc = ZERO;
        for n in lo.max(g.n_min)..=hi {
            if let (Some(a), Some(b)) = (self.coeff(n), g.coeff(n)) {
                acc += a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x * y.conj())
                    .sum::<Complex64>();
            }
        }
        Ok(acc)
    }

    /// `||f||_2^2` by Parseval.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Poisson extension at `λ`: `Σ_{n>=0} f^(n) λ^n + Σ_{n<0} f^(n) conj(λ)^{-n}`.
    pub fn harmonic_extension(&self, lambda: DiskPoint) -> Vec<Complex64> {
        let d = self.dim;
        let z = lambda.value();
        let zc = z.conj();
        let mut acc = vec![ZERO; d];
        let (Some(lo), Some(hi)) = (self.n_min(), self.n_max()) else {
            return acc;
        };
        // analytic part by Horner in λ
        if hi >= 0 {
            for n in (0..=hi).rev() {
                match self.coeff(n) {
                    Some(c) => {
                        for (a, x) in acc.iter_mut().zip(c) {
                            *a = *a * z + x;
                        }
                    }
                    None => acc.iter_mut().for_each(|a| *a *= z),
                }
            }
        }
        // antianalytic part by Horner in conj(λ)
        if lo < 0 {
            let mut anti = vec![ZERO; d];
            for n in lo..=hi.min(-1) {
                let c = self.coeff(n).unwrap();
                for (a, x) in anti.iter_mut().zip(c) {
                    *a = (*a + x) * zc;
                }
            }
            // Horner above yields Σ c_n conj(λ)^{hi'-n+1}; fix the power offset.
            let top = hi.min(-1);
            if top < -1 {
                let shift = zc.powi((-1 - top) as i32);
                for a in anti.iter_mut() {
                    *a *= shift;
                }
            }
            for (a, x) in acc.iter_mut().zip(anti) {
                *a += x;
            }
        }
        acc
    }

    /// Value of the function at `e^{it}` on the circle (used for sampling checks).
    pub fn eval_circle(&self, t: f64) -> Vec<Complex64> {
        let mut acc = vec![ZERO; self.dim];
        for (n, c) in self.iter() {
            let e = Complex64::from_polar(1.0, n as f64 * t);
            for (a, x) in acc.iter_mut().zip(c) {
                *a += x * e;
            }
        }
        acc
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

/// Truncation degree `N` for which the kernel tail `|λ|^{2(N+1)}` drops below `tail`.
pub fn kernel_degree_for_tail(lambda: DiskPoint, tail: f64) -> usize {
    let r = lambda.modulus();
    if r == 0.0 {
        return 0;
    }
    let n = (tail.ln() / (2.0 * r.ln())).ceil();
    if !n.is_finite() || n <= 0.0 {
        return 0;
    }
    (n as usize).min(MAX_KERNEL_DEGREE)
}

/// Degree-`N` truncation of the normalized kernel
/// `k_λ(z) = (1-|λ|^2)^{1/2} / (1 - conj(λ) z)` and the exact squared tail
/// `||k_λ - truncation||_2^2 = |λ|^{2(N+1)}`.
pub fn reproducing_kernel(lambda: DiskPoint, degree: usize) -> (TrigPolynomial, f64) {
    let z = lambda.value();
    let r2 = z.norm_sqr();
    let c = (1.0 - r2).sqrt();
    kernel_series(z.conj(), Complex64::new(c, 0.0), degree, r2)
}

/// Degree-`N` truncation of the unnormalized kernel `K_λ = 1/(1 - conj(λ) z)`
/// with its squared tail `|λ|^{2(N+1)} / (1-|λ|^2)`.
pub fn unnormalized_kernel(lambda: DiskPoint, degree: usize) -> (TrigPolynomial, f64) {
    let z = lambda.value();
    let r2 = z.norm_sqr();
    let (k, tail) = kernel_series(z.conj(), Complex64::new(1.0, 0.0), degree, r2);
    (k, tail / (1.0 - r2))
}

fn kernel_series(
    ratio: Complex64,
    lead: Complex64,
    degree: usize,
    r2: f64,
) -> (TrigPolynomial, f64) {
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut cur = lead;
    for _ in 0..=degree {
        coeffs.push(cur);
        cur *= ratio;
    }
    let tail = r2.powi(degree as i32 + 1) * lead.norm_sqr();
    (TrigPolynomial::analytic(coeffs), tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::from_re_im(re, im).unwrap()
    }

    #[test]
    fn disk_point_rejects_boundary() {
        assert!(DiskPoint::from_re_im(1.0, 0.0).is_err());
        assert!(DiskPoint::from_re_im(0.6, 0.8).is_err());
        assert!(DiskPoint::from_re_im(f64::NAN, 0.0).is_err());
        assert!(DiskPoint::from_re_im(0.6, 0.79).is_ok());
    }

    #[test]
    fn harmonic_extension_examples() {
        let z = TrigPolynomial::monomial(1, c(1.0, 0.0));
        let v = z.harmonic_extension(pt(0.3, 0.4));
        assert!((v[0] - c(0.3, 0.4)).norm() < 1e-15);

        let k = TrigPolynomial::constant(c(2.0, -1.0));
        assert_eq!(k.harmonic_extension(pt(-0.7, 0.1))[0], c(2.0, -1.0));

        // |zbar + zbar^2|^2 = 2 + z + zbar on the circle
        let f = TrigPolynomial::scalar(-1, vec![c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        let v = f.harmonic_extension(pt(0.5, 0.0))[0];
        assert!((v - c(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn harmonic_extension_matches_poisson_quadrature() {
        let f = TrigPolynomial::scalar(-1, vec![c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        let lambda = pt(0.5, 0.0);
        let n = 512;
        let r2 = 0.25;
        let mut acc = ZERO;
        for j in 0..n {
            let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let e = Complex64::from_polar(1.0, t);
            let poisson = (1.0 - r2) / (e - lambda.value()).norm_sqr();
            acc += f.eval_circle(t)[0] * poisson;
        }
        acc /= n as f64;
        assert!((acc - c(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn harmonic_extension_deep_antianalytic() {
        // zbar^3 evaluated at λ is conj(λ)^3
        let f = TrigPolynomial::monomial(-3, c(2.0, 1.0));
        let l = pt(0.2, -0.5);
        let want = c(2.0, 1.0) * l.value().conj().powi(3);
        assert!((f.harmonic_extension(l)[0] - want).norm() < 1e-15);
        assert_eq!(f.harmonic_extension(DiskPoint::origin())[0], ZERO);
    }

    #[test]
    fn riesz_projection_examples() {
        let f = TrigPolynomial::scalar(-1, vec![c(1.0, 0.0); 3]);
        assert_eq!(
            f.riesz_project(Side::Minus),
            TrigPolynomial::monomial(-1, c(1.0, 0.0))
        );
        let g = TrigPolynomial::monomial(3, c(1.0, 0.0));
        assert!(g.riesz_project(Side::Minus).is_zero());
        let sum = f
            .riesz_project(Side::Plus)
            .add(&f.riesz_project(Side::Minus))
            .unwrap();
        assert_eq!(sum, f);
    }

    #[test]
    fn toeplitz_eigenvector_small_case() {
        // P_+(zbar k_λ) = conj(λ) k_λ up to the truncation edge
        let l = pt(0.5, 0.0);
        let (k, _) = reproducing_kernel(l, 40);
        let phi = TrigPolynomial::monomial(-1, c(1.0, 0.0));
        let p = phi.multiply(&k).unwrap().riesz_project(Side::Plus);
        let want = k.scale(c(0.5, 0.0)).truncate(0, 39);
        assert!(p.sub(&want).unwrap().norm() < 1e-15);
    }

    #[test]
    fn kernel_examples() {
        let (k, tail) = reproducing_kernel(DiskPoint::origin(), 5);
        assert_eq!(k, TrigPolynomial::constant(c(1.0, 0.0)));
        assert_eq!(tail, 0.0);

        let (k, _) = reproducing_kernel(pt(0.5, 0.0), 8);
        for n in 0..=8 {
            let want = 0.75f64.sqrt() * 0.5f64.powi(n);
            assert!((k.coeff_at(n as i64, 0) - c(want, 0.0)).norm() < 1e-16);
        }

        let l = pt(0.6, 0.0);
        let (big, tail) = unnormalized_kernel(l, 64);
        let total = big.norm_sqr() + tail;
        assert!((total - 1.0 / (1.0 - 0.36)).abs() < 1e-12);
    }

    #[test]
    fn kernel_degree_rule() {
        assert_eq!(kernel_degree_for_tail(DiskPoint::origin(), 1e-14), 0);
        let l = pt(0.5, 0.0);
        let n = kernel_degree_for_tail(l, 1e-14);
        let (_, tail) = reproducing_kernel(l, n);
        assert!(tail <= 1e-14);
        // the rule is conservative by at most one degree
        let (_, prev) = reproducing_kernel(l, n - 2);
        assert!(prev > 1e-14);
        let near = pt(0.999999, 0.0);
        assert_eq!(kernel_degree_for_tail(near, 1e-14), MAX_KERNEL_DEGREE);
    }

    #[test]
    fn inner_product_examples() {
        let one = c(1.0, 0.0);
        for n in -3..4 {
            for m in -3..4 {
                let ip = TrigPolynomial::monomial(n, one)
                    .inner_product(&TrigPolynomial::monomial(m, one))
                    .unwrap();
                assert_eq!(ip, if n == m { one } else { ZERO });
            }
        }
        let l = pt(0.3, -0.6);
        let f =
            TrigPolynomial::analytic(vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(0.25, 0.25)]);
        let (big, _) = unnormalized_kernel(l, 3);
        let ip = f.inner_product(&big).unwrap();
        assert!((ip - f.harmonic_extension(l)[0]).norm() < 1e-14);

        let (k, _) = reproducing_kernel(l, 20);
        let want = 1.0 - l.value().norm_sqr().powi(21);
        assert!((k.inner_product(&k).unwrap() - c(want, 0.0)).norm() < 1e-14);

        let v = TrigPolynomial::zero(2);
        assert!(matches!(
            f.inner_product(&v),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn multiply_examples() {
        let one = c(1.0, 0.0);
        let g = TrigPolynomial::new(2, -1, vec![vec![one, c(0.0, 1.0)], vec![c(2.0, 0.0), ZERO]])
            .unwrap();
        assert_eq!(TrigPolynomial::constant(one).multiply(&g).unwrap(), g);
        let zz = TrigPolynomial::monomial(1, one)
            .multiply(&TrigPolynomial::monomial(-1, one))
            .unwrap();
        assert_eq!(zz, TrigPolynomial::constant(one));
        let a = TrigPolynomial::scalar(-2, vec![one, one, ZERO]);
        let b = TrigPolynomial::scalar(1, vec![one, one]);
        let want = TrigPolynomial::scalar(-1, vec![one, c(2.0, 0.0), one]);
        assert_eq!(a.multiply(&b).unwrap(), want);
        assert!(g.multiply(&g).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let one = c(1.0, 0.0);
        let z = TrigPolynomial::monomial(1, one);
        assert_eq!(z.conjugate(), TrigPolynomial::monomial(-1, one));
        let h = TrigPolynomial::analytic(vec![one, c(2.0, 0.0), c(-3.0, 0.0)]);
        let hc = h.conjugate();
        assert_eq!(hc.n_min(), Some(-2));
        assert_eq!(hc.n_max(), Some(0));
    }

    #[test]
    fn components_round_trip() {
        let g = TrigPolynomial::new(
            2,
            -1,
            vec![
                vec![c(1.0, 0.0), ZERO],
                vec![ZERO, c(0.0, 2.0)],
                vec![c(3.0, 0.0), ZERO],
            ],
        )
        .unwrap();
        let parts: Vec<_> = (0..2).map(|i| g.component(i)).collect();
        assert_eq!(TrigPolynomial::from_components(&parts).unwrap(), g);
    }

    #[test]
    fn json_format() {
        let g = TrigPolynomial::new(2, -1, vec![vec![c(1.0, 0.5), ZERO]]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"dim":2,"n_min":-1,"coeffs":[[[1.0,0.5],[0.0,0.0]]]}"#
        );
        let back: TrigPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<TrigPolynomial>(
            r#"{"dim":2,"n_min":0,"coeffs":[[[1,0]]]}"#
        )
        .is_err());
        assert!(
            serde_json::from_str::<TrigPolynomial>(r#"{"dim":1,"n_min":0,"coeffs":[],"x":1}"#)
                .is_err()
        );
    }
}
