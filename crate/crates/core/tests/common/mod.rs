#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rkt_core::disk::PolyZZbar;
use rkt_core::rkt::complex_gaussian;
use rkt_core::{DiskPoint, TrigPolynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the disk of radius `r_max` (uniform in area).
pub fn disk_point(rng: &mut impl Rng, r_max: f64) -> DiskPoint {
    let r = r_max * rng.random::<f64>().sqrt();
    let t = rng.random::<f64>() * std::f64::consts::TAU;
    DiskPoint::from_polar(r, t).unwrap()
}

/// Analytic polynomial of exact degree `deg` with Gaussian coefficients.
pub fn analytic_poly(rng: &mut impl Rng, deg: usize, dim: usize) -> TrigPolynomial {
    let coeffs = (0..=deg)
        .map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect())
        .collect();
    TrigPolynomial::new(dim, 0, coeffs).unwrap()
}

/// Scalar `Σ c_{pq} z^p zbar^q` with `terms` random monomials of radial degree
/// `≤ max_deg`, always including one of degree exactly `max_deg`.
pub fn poly_zzbar(rng: &mut impl Rng, max_deg: u32, terms: usize) -> PolyZZbar {
    let mut u = PolyZZbar::zero(1);
    for i in 0..terms {
        let total = if i == 0 {
            max_deg
        } else {
            rng.random_range(0..=max_deg)
        };
        let p = rng.random_range(0..=total);
        u.add_term(p, total - p, &[complex_gaussian(rng)]);
    }
    u
}

/// Harmonic polynomial: only pure `z^p` and `zbar^q` terms.
pub fn harmonic_poly(rng: &mut impl Rng, max_deg: u32) -> PolyZZbar {
    let mut u = PolyZZbar::zero(1);
    for k in 0..=max_deg {
        u.add_term(k, 0, &[complex_gaussian(rng)]);
        if k > 0 {
            u.add_term(0, k, &[complex_gaussian(rng)]);
        }
    }
    u
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
