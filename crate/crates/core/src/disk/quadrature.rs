use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::PolyZZbar;

/// Default number of radial nodes.
pub const DEFAULT_RADIAL_NODES: usize = 64;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, t);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (t * p1 - p0) / (t * t - 1.0))
}

/// Product rule on the unit disk for the measure `(1/2π) ln(1/|z|) dA(z)`.
///
/// Radial nodes come from Gauss–Legendre in `s` under `r = s^3`; the cubic
/// grading flattens the `r ln(1/r)` endpoint behaviour so that polynomial
/// integrands of radial degree up to ~130 integrate to roundoff at 64 nodes.
/// Angles are uniform, which is exact for trigonometric polynomials whose
/// frequencies stay below the node count.
#[derive(Debug, Clone, Serialize)]
pub struct DiskQuadrature {
    radii: Vec<f64>,
    // Gauss weight × Jacobian × r ln(1/r)
    radial_weights: Vec<f64>,
    angular: Option<usize>,
}

impl Default for DiskQuadrature {
    fn default() -> Self {
        Self::new(DEFAULT_RADIAL_NODES)
    }
}

impl DiskQuadrature {
    pub fn new(n_r: usize) -> Self {
        assert!(n_r >= 1, "need at least one radial node");
        let (x, w) = gauss_legendre(n_r);
        let mut radii = Vec::with_capacity(n_r);
        let mut radial_weights = Vec::with_capacity(n_r);
        for (xi, wi) in x.into_iter().zip(w) {
            let s = 0.5 * (xi + 1.0);
            let r = s * s * s;
            let jac = 0.5 * wi * 3.0 * s * s;
            radii.push(r);
            radial_weights.push(jac * r * (1.0 / r).ln());
        }
        Self {
            radii,
            radial_weights,
            angular: None,
        }
    }

    /// Fixes the number of angular nodes instead of choosing it per integrand.
    pub fn with_angular_nodes(mut self, n_t: usize) -> Self {
        assert!(n_t >= 1, "need at least one angular node");
        self.angular = Some(n_t);
        self
    }

    pub fn radial_nodes(&self) -> usize {
        self.radii.len()
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// `Σ_i a_i r_i ln(1/r_i)`, which approximates `∫_0^1 r ln(1/r) dr = 1/4`.
    pub fn total_radial_weight(&self) -> f64 {
        self.radial_weights.iter().sum()
    }

    /// Angular node count used for an integrand of the given maximal angular frequency.
    pub fn angular_nodes(&self, max_frequency: usize) -> usize {
        self.angular.unwrap_or(2 * max_frequency + 8)
    }

    /// Nodes `z` with their combined weights `w` so that `Σ w F(z) ≈ ∫ F ln(1/|z|) dA`.
    pub fn nodes(&self, max_frequency: usize) -> Vec<(Complex64, f64)> {
        let n_t = self.angular_nodes(max_frequency);
        let dt = 2.0 * PI / n_t as f64;
        self.radii
            .iter()
            .zip(&self.radial_weights)
            .flat_map(|(&r, &a)| {
                (0..n_t).map(move |j| (Complex64::from_polar(r, j as f64 * dt), a * dt))
            })
            .collect()
    }

    /// `(1/2π) ∫_D F(z) ln(1/|z|) dA(z)` for each coordinate of `F`.
    pub fn integrate(&self, f: &PolyZZbar) -> Vec<Complex64> {
        let d = f.dim();
        if f.is_zero() {
            return vec![Complex64::new(0.0, 0.0); d];
        }
        let n_t = self.angular_nodes(f.max_angular_frequency());
        let dt = 2.0 * PI / n_t as f64;
        // one partial sum per radius, reduced in fixed order
        let per_radius: Vec<Vec<Complex64>> = self
            .radii
            .par_iter()
            .zip(&self.radial_weights)
            .map(|(&r, &a)| {
                let mut acc = vec![Complex64::new(0.0, 0.0); d];
                for j in 0..n_t {
                    let v = f.eval(Complex64::from_polar(r, j as f64 * dt));
                    for (s, x) in acc.iter_mut().zip(v) {
                        *s += x;
                    }
                }
                let scale = a / n_t as f64;
                acc.into_iter().map(|x| x * scale).collect()
            })
            .collect();
        let mut total = vec![Complex64::new(0.0, 0.0); d];
        for part in per_radius {
            for (t, x) in total.iter_mut().zip(part) {
                *t += x;
            }
        }
        total
    }
}
