use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hardy::TrigPolynomial;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Polynomial `Σ c_{p,q} z^p zbar^q` on the closed disk with `c_{p,q} ∈ C^d`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyZZbar {
    dim: usize,
    terms: BTreeMap<(u32, u32), Vec<Complex64>>,
}

impl PolyZZbar {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// Scalar monomial `c z^p zbar^q`.
    pub fn monomial(p: u32, q: u32, c: Complex64) -> Self {
        let mut out = Self::zero(1);
        out.add_term(p, q, &[c]);
        out
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `Σ_n f^(n) z^n` for an analytic polynomial `f`.
    pub fn from_analytic(f: &TrigPolynomial) -> Result<Self> {
        f.require_analytic()?;
        Ok(Self::from_harmonic(f))
    }

    /// Harmonic extension of a trigonometric polynomial: `z^n` for `n >= 0`,
    /// `zbar^{-n}` for `n < 0`.
    pub fn from_harmonic(f: &TrigPolynomial) -> Self {
        let mut out = Self::zero(f.dim());
        for (n, c) in f.iter() {
            if n >= 0 {
                out.add_term(n as u32, 0, c);
            } else {
                out.add_term(0, (-n) as u32, c);
            }
        }
        out
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: u32, q: u32) -> Option<&[Complex64]> {
        self.terms.get(&(p, q)).map(Vec::as_slice)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &[Complex64])> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn add_term(&mut self, p: u32, q: u32, c: &[Complex64]) {
        assert_eq!(c.len(), self.dim, "term dimension");
        let entry = self
            .terms
            .entry((p, q))
            .or_insert_with(|| vec![ZERO; c.len()]);
        for (e, x) in entry.iter_mut().zip(c) {
            *e += x;
        }
        if entry.iter().all(|x| *x == ZERO) {
            self.terms.remove(&(p, q));
        }
    }

    /// Largest `p + q`.
    pub fn radial_degree(&self) -> u32 {
        self.terms.keys().map(|(p, q)| p + q).max().unwrap_or(0)
    }

    /// Largest `|p - q|`, the top angular frequency on circles `|z| = r`.
    pub fn max_angular_frequency(&self) -> usize {
        self.terms
            .keys()
            .map(|(p, q)| p.abs_diff(*q) as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for ((p, q), c) in other.terms() {
            out.add_term(p, q, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.dim);
        for ((p, q), v) in self.terms() {
            let scaled: Vec<_> = v.iter().map(|x| x * c).collect();
            out.add_term(p, q, &scaled);
        }
        out
    }

    /// Product of the scalar polynomial `self` with a vector polynomial.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.dim,
            });
        }
        let mut out = Self::zero(other.dim);
        let mut buf = vec![ZERO; other.dim];
        for ((p1, q1), a) in self.terms() {
            for ((p2, q2), b) in other.terms() {
                for (o, x) in buf.iter_mut().zip(b) {
                    *o = a[0] * x;
                }
                out.add_term(p1 + p2, q1 + q2, &buf);
            }
        }
        Ok(out)
    }

    /// Bilinear pairing `Σ_i a_i b_i` (no conjugation), giving a scalar polynomial.
    pub fn dot(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(1);
        for ((p1, q1), a) in self.terms() {
            for ((p2, q2), b) in other.terms() {
                let s: Complex64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                out.add_term(p1 + p2, q1 + q2, &[s]);
            }
        }
        Ok(out)
    }

    /// Pointwise complex conjugate: `c z^p zbar^q ↦ conj(c) z^q zbar^p`.
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|((p, q), v)| ((*q, *p), v.iter().map(|x| x.conj()).collect()))
                .collect(),
        }
    }

    /// `||F(z)||_E^2` as a scalar polynomial.
    pub fn norm_sqr(&self) -> Self {
        self.dot(&self.conj()).expect("same dimension")
    }

    /// Wirtinger `∂`.
    pub fn d_z(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for ((p, q), v) in self.terms().filter(|((p, _), _)| *p > 0) {
            let f = p as f64;
            let c: Vec<_> = v.iter().map(|x| x * f).collect();
            out.add_term(p - 1, q, &c);
        }
        out
    }

    /// Wirtinger `∂̄`.
    pub fn d_zbar(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for ((p, q), v) in self.terms().filter(|((_, q), _)| *q > 0) {
            let f = q as f64;
            let c: Vec<_> = v.iter().map(|x| x * f).collect();
            out.add_term(p, q - 1, &c);
        }
        out
    }

    /// `∂∂̄`; the Laplacian is `4 ∂∂̄`.
    pub fn ddbar(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for ((p, q), v) in self.terms().filter(|((p, q), _)| *p > 0 && *q > 0) {
            let f = (p * q) as f64;
            let c: Vec<_> = v.iter().map(|x| x * f).collect();
            out.add_term(p - 1, q - 1, &c);
        }
        out
    }

    pub fn laplacian(&self) -> Self {
        self.ddbar().scale(Complex64::new(4.0, 0.0))
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        let mut acc = vec![ZERO; self.dim];
        if self.terms.is_empty() {
            return acc;
        }
        let top_p = self.terms.keys().map(|k| k.0).max().unwrap() as usize;
        let top_q = self.terms.keys().map(|k| k.1).max().unwrap() as usize;
        let zp = powers(z, top_p);
        let zq = powers(z.conj(), top_q);
        for ((p, q), v) in self.terms() {
            let m = zp[p as usize] * zq[q as usize];
            for (a, x) in acc.iter_mut().zip(v) {
                *a += m * x;
            }
        }
        acc
    }

    pub fn value_at_origin(&self) -> Vec<Complex64> {
        self.coeff(0, 0)
            .map_or_else(|| vec![ZERO; self.dim], <[_]>::to_vec)
    }

    /// Restriction to the circle, where `zbar = 1/z`.
    pub fn restrict_to_circle(&self) -> TrigPolynomial {
        let mut by_freq: BTreeMap<i64, Vec<Complex64>> = BTreeMap::new();
        for ((p, q), v) in self.terms() {
            let e = by_freq
                .entry(p as i64 - q as i64)
                .or_insert_with(|| vec![ZERO; self.dim]);
            for (a, x) in e.iter_mut().zip(v) {
                *a += x;
            }
        }
        let (Some(&lo), Some(&hi)) = (by_freq.keys().next(), by_freq.keys().next_back()) else {
            return TrigPolynomial::zero(self.dim);
        };
        let coeffs = (lo..=hi)
            .map(|n| by_freq.remove(&n).unwrap_or_else(|| vec![ZERO; self.dim]))
            .collect();
        TrigPolynomial::new(self.dim, lo, coeffs).expect("consistent dimension")
    }

    /// `(1/2π) ∫_T F |dz|`, i.e. the sum of the diagonal coefficients `c_{p,p}`.
    pub fn circle_mean(&self) -> Vec<Complex64> {
        let mut acc = vec![ZERO; self.dim];
        for ((p, q), v) in self.terms() {
            if p == q {
                for (a, x) in acc.iter_mut().zip(v) {
                    *a += x;
                }
            }
        }
        acc
    }

    /// `max |c_{p,q} - conj(c_{q,p})|`; zero exactly when the polynomial is real on the disk.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for ((p, q), v) in self.terms() {
            let mirror = self.coeff(q, p);
            for (i, x) in v.iter().enumerate() {
                let y = mirror.map_or(ZERO, |m| m[i]);
                worst = worst.max((x - y.conj()).norm());
            }
        }
        worst
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

fn powers(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        out.push(cur);
        cur *= z;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn ddbar_examples() {
        assert_eq!(
            PolyZZbar::monomial(1, 1, c(1.0)).ddbar(),
            PolyZZbar::constant(c(1.0))
        );
        assert_eq!(
            PolyZZbar::monomial(2, 1, c(1.0)).ddbar(),
            PolyZZbar::monomial(1, 0, c(2.0))
        );
        assert_eq!(
            PolyZZbar::monomial(2, 1, c(1.0)).laplacian(),
            PolyZZbar::monomial(1, 0, c(8.0))
        );
        let analytic = PolyZZbar::monomial(5, 0, c(3.0))
            .add(&PolyZZbar::monomial(2, 0, c(1.0)))
            .unwrap();
        assert!(analytic.ddbar().is_zero());
    }

    #[test]
    fn wirtinger_factorization() {
        let u = PolyZZbar::monomial(3, 2, Complex64::new(1.0, 2.0))
            .add(&PolyZZbar::monomial(1, 4, c(-0.5)))
            .unwrap();
        assert_eq!(u.d_z().d_zbar(), u.ddbar());
        assert_eq!(u.d_zbar().d_z(), u.ddbar());
    }

    #[test]
    fn restriction_and_mean() {
        // |z|^2 + z^2 zbar = 1 + z on the circle
        let u = PolyZZbar::monomial(1, 1, c(1.0))
            .add(&PolyZZbar::monomial(2, 1, c(1.0)))
            .unwrap();
        let t = u.restrict_to_circle();
        assert_eq!(t, TrigPolynomial::analytic(vec![c(1.0), c(1.0)]));
        assert_eq!(u.circle_mean(), vec![c(1.0)]);
        assert_eq!(u.value_at_origin(), vec![c(0.0)]);
    }

    #[test]
    fn eval_and_conj() {
        let u = PolyZZbar::monomial(2, 1, Complex64::new(0.0, 1.0));
        let z = Complex64::new(0.3, -0.2);
        let want = Complex64::new(0.0, 1.0) * z * z * z.conj();
        assert!((u.eval(z)[0] - want).norm() < 1e-16);
        assert!((u.conj().eval(z)[0] - want.conj()).norm() < 1e-16);
        let m = u.norm_sqr();
        assert_eq!(m.hermitian_defect(), 0.0);
        assert!((m.eval(z)[0] - c(want.norm_sqr())).norm() < 1e-16);
        assert!(u.hermitian_defect() > 0.0);
    }

    #[test]
    fn mul_requires_scalar_left() {
        let mut v = PolyZZbar::zero(2);
        v.add_term(1, 0, &[c(1.0), c(2.0)]);
        assert!(v.mul(&v).is_err());
        let w = PolyZZbar::monomial(0, 1, c(2.0)).mul(&v).unwrap();
        assert_eq!(w.coeff(1, 1), Some(&[c(2.0), c(4.0)][..]));
    }
}
