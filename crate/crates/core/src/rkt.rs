//! Reproducing-kernel testing bound `A = sup_λ ||Γk_λ||`, the exact norm
//! `||Γ||`, and the check `||Γ|| ≤ 2√e·A` on individual symbols.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::disk::PolyZZbar;
use crate::error::{Error, Result};
use crate::hankel::{GarsiaTable, HankelSymbol};
use crate::hardy::{DiskPoint, TrigPolynomial};

/// `2√e`.
pub fn rkt_constant() -> f64 {
    2.0 * std::f64::consts::E.sqrt()
}

/// Slack added to `2√e` to absorb underestimation of the sup by the grid.
pub const BOUND_SLACK: f64 = 0.01;
/// `A ≤ ||Γ||` always; this is the roundoff allowance on `ratio ≥ 1`.
pub const RATIO_FLOOR_TOL: f64 = 1e-9;

// Points closer to the circle than this are never proposed by the ascent.
const MAX_RADIUS: f64 = 1.0 - 1e-9;

/// Discretization of the open disk used to estimate suprema over `λ`.
///
/// Each radius `r` carries `clamp(ceil(angle_scale / (1 - r)), min_angles, max_angles)`
/// equally spaced angles (a single point at `r = 0`). The best `candidates`
/// grid points are then polished by a compass search with `refine_steps`
/// iterations, starting at `initial_step` and shrinking by `shrink` whenever
/// no neighbour improves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LambdaGrid {
    pub radii: Vec<f64>,
    pub angle_scale: f64,
    pub min_angles: usize,
    pub max_angles: usize,
    pub candidates: usize,
    pub refine_steps: usize,
    pub initial_step: f64,
    pub shrink: f64,
}

impl Default for LambdaGrid {
    fn default() -> Self {
        Self {
            radii: vec![0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99],
            angle_scale: 5.12,
            min_angles: 32,
            max_angles: 512,
            candidates: 5,
            refine_steps: 40,
            initial_step: 0.05,
            shrink: 0.7,
        }
    }
}

impl LambdaGrid {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(format!("grid: {m}")));
        if self.radii.is_empty() {
            return bad("at least one radius required");
        }
        if self.radii.iter().any(|r| !(0.0..1.0).contains(r)) {
            return bad("radii must lie in [0, 1)");
        }
        if self.min_angles == 0 || self.max_angles < self.min_angles {
            return bad("angle counts must satisfy 1 <= min_angles <= max_angles");
        }
        if !(self.angle_scale.is_finite()
            && self.angle_scale > 0.0
            && self.initial_step.is_finite()
            && self.initial_step > 0.0)
        {
            return bad("angle_scale and initial_step must be positive");
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return bad("shrink must lie in (0, 1)");
        }
        Ok(())
    }

    pub fn angles_at(&self, r: f64) -> usize {
        if r == 0.0 {
            return 1;
        }
        let n = (self.angle_scale / (1.0 - r)).ceil() as usize;
        n.clamp(self.min_angles, self.max_angles)
    }

    /// Grid points in radius-major, then angle order.
    pub fn points(&self) -> Vec<DiskPoint> {
        let mut out = Vec::new();
        for &r in &self.radii {
            let n = self.angles_at(r);
            for j in 0..n {
                let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                out.push(DiskPoint::from_polar(r, t).expect("radius below 1"));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.radii.iter().map(|&r| self.angles_at(r)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

/// Result of maximizing a real function over the disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskMax {
    pub value: f64,
    pub argmax: DiskPoint,
    pub grid_value: f64,
    pub grid_points: usize,
}

/// Grid search followed by compass-search refinement from the best grid points.
/// Never returns less than the grid maximum.
pub fn maximize_on_disk<F>(f: F, grid: &LambdaGrid) -> DiskMax
where
    F: Fn(DiskPoint) -> f64 + Sync,
{
    let points = grid.points();
    let values: Vec<f64> = points.par_iter().map(|&p| f(p)).collect();

    let mut order: Vec<usize> = (0..points.len()).collect();
    // stable sort keeps index order on ties
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let grid_best = order[0];

    let mut best = (values[grid_best], points[grid_best]);
    for &start in order.iter().take(grid.candidates.max(1)) {
        let (v, p) = refine(&f, points[start], values[start], grid);
        if v > best.0 {
            best = (v, p);
        }
    }
    DiskMax {
        value: best.0,
        argmax: best.1,
        grid_value: values[grid_best],
        grid_points: points.len(),
    }
}

fn refine<F: Fn(DiskPoint) -> f64>(
    f: &F,
    start: DiskPoint,
    value: f64,
    grid: &LambdaGrid,
) -> (f64, DiskPoint) {
    const D: f64 = std::f64::consts::FRAC_1_SQRT_2;
    const DIRS: [(f64, f64); 8] = [
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (D, D),
        (-D, D),
        (D, -D),
        (-D, -D),
    ];
    let mut cur = (value, start);
    let mut h = grid.initial_step;
    for _ in 0..grid.refine_steps {
        let mut next = cur;
        for (dx, dy) in DIRS {
            let z = cur.1.value() + Complex64::new(dx * h, dy * h);
            if z.norm() >= MAX_RADIUS {
                continue;
            }
            let p = DiskPoint::new(z).expect("inside disk");
            let v = f(p);
            if v > next.0 {
                next = (v, p);
            }
        }
        if next.0 > cur.0 {
            cur = next;
        } else {
            h *= grid.shrink;
        }
    }
    cur
}

/// `A = sup_λ ||Γk_λ||_2` estimated on `grid`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GarsiaSup {
    /// Refined estimate of `A`.
    pub value: f64,
    pub argmax: DiskPoint,
    /// `A` restricted to the raw grid.
    pub grid_value: f64,
    pub grid_points: usize,
}

pub fn sup_garsia(s: &HankelSymbol, grid: &LambdaGrid) -> GarsiaSup {
    let table = GarsiaTable::new(s);
    let m = maximize_on_disk(|l| table.value(l), grid);
    GarsiaSup {
        value: m.value.max(0.0).sqrt(),
        argmax: m.argmax,
        grid_value: m.grid_value.max(0.0).sqrt(),
        grid_points: m.grid_points,
    }
}

/// Garsia values on every grid point, radius-major then angle.
pub fn garsia_heatmap(s: &HankelSymbol, grid: &LambdaGrid) -> Vec<(DiskPoint, f64)> {
    let table = GarsiaTable::new(s);
    grid.points()
        .into_par_iter()
        .map(|p| (p, table.value(p)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSummary {
    pub points: usize,
    pub radii: Vec<f64>,
    pub candidates: usize,
    pub refine_steps: usize,
    pub shrink: f64,
}

impl From<&LambdaGrid> for GridSummary {
    fn from(g: &LambdaGrid) -> Self {
        Self {
            points: g.len(),
            radii: g.radii.clone(),
            candidates: g.candidates,
            refine_steps: g.refine_steps,
            shrink: g.shrink,
        }
    }
}

/// Outcome of testing `||Γ|| ≤ 2√e·A` on one symbol.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RktReport {
    pub norm: f64,
    /// Residual `||M^* u - σ v||` of the singular triple behind `norm`.
    pub norm_residual: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "A_grid")]
    pub a_grid: f64,
    pub argmax: DiskPoint,
    pub ratio: f64,
    pub bound: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub grid: GridSummary,
    pub symbol_hash: String,
    pub m: usize,
    pub dim: usize,
}

pub fn verify_rkt(s: &HankelSymbol, grid: &LambdaGrid) -> Result<RktReport> {
    if s.is_zero() {
        return Err(Error::ZeroSymbol);
    }
    let top = s.top_singular();
    let sup = sup_garsia(s, grid);
    let ratio = top.sigma / sup.value;
    let bound = rkt_constant();
    let pass = ratio <= bound + BOUND_SLACK && ratio >= 1.0 - RATIO_FLOOR_TOL;
    Ok(RktReport {
        norm: top.sigma,
        norm_residual: top.residual,
        a: sup.value,
        a_grid: sup.grid_value,
        argmax: sup.argmax,
        ratio,
        bound,
        tolerance: BOUND_SLACK,
        pass,
        grid: grid.into(),
        symbol_hash: s.fingerprint(),
        m: s.m(),
        dim: s.dim(),
    })
}

/// Standard complex Gaussian: independent real and imaginary parts of variance 1/2.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `γ_k` with i.i.d. standard complex Gaussian coordinates scaled by `k^{-decay}`.
pub fn random_symbol(seed: u64, m: usize, d: usize, decay: f64) -> Result<HankelSymbol> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_symbol_with(&mut rng, m, d, decay)
}

pub fn random_symbol_with<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    d: usize,
    decay: f64,
) -> Result<HankelSymbol> {
    if m == 0 || d == 0 {
        return Err(Error::InvalidArgument(
            "random_symbol needs m >= 1 and d >= 1".into(),
        ));
    }
    if decay.is_nan() || decay < 0.0 {
        return Err(Error::InvalidArgument("decay must be nonnegative".into()));
    }
    let mut gamma = Vec::with_capacity(m * d);
    for k in 1..=m {
        let w = (k as f64).powf(-decay);
        for _ in 0..d {
            gamma.push(complex_gaussian(rng) * w);
        }
    }
    HankelSymbol::from_flat(d, gamma)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Analytic polynomial of exact degree `degree` with standard complex Gaussian coordinates.
pub fn random_analytic<R: Rng + ?Sized>(rng: &mut R, degree: usize, dim: usize) -> TrigPolynomial {
    let dim = dim.max(1);
    let coeffs = (0..(degree + 1) * dim)
        .map(|_| complex_gaussian(rng))
        .collect();
    TrigPolynomial::from_flat(dim, 0, coeffs).expect("finite coefficients")
}

/// Scalar `Σ c_{pq} z^p zbar^q` with `terms` Gaussian monomials of radial
/// degree `p + q ≤ max_degree`; the first term has degree exactly `max_degree`.
pub fn random_disk_poly<R: Rng + ?Sized>(rng: &mut R, max_degree: u32, terms: usize) -> PolyZZbar {
    let mut u = PolyZZbar::zero(1);
    for i in 0..terms {
        let total = if i == 0 {
            max_degree
        } else {
            rng.random_range(0..=max_degree)
        };
        let p = rng.random_range(0..=total);
        u.add_term(p, total - p, &[complex_gaussian(rng)]);
    }
    u
}

/// Harmonic polynomial: Gaussian `z^k` and `zbar^k` terms for `k ≤ max_degree`.
pub fn random_harmonic_poly<R: Rng + ?Sized>(rng: &mut R, max_degree: u32) -> PolyZZbar {
    let mut u = PolyZZbar::zero(1);
    for k in 0..=max_degree {
        u.add_term(k, 0, &[complex_gaussian(rng)]);
        if k > 0 {
            u.add_term(0, k, &[complex_gaussian(rng)]);
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = LambdaGrid::default();
        assert_eq!(g.angles_at(0.0), 1);
        assert_eq!(g.angles_at(0.99), 512);
        assert_eq!(g.angles_at(0.1), 32);
        let pts = g.points();
        assert_eq!(pts.len(), g.len());
        assert!(pts.iter().all(|p| p.modulus() < 1.0));
        // radius-major order
        let radii: Vec<f64> = pts.iter().map(|p| p.modulus()).collect();
        assert!(radii.windows(2).all(|w| w[1] >= w[0] - 1e-12));
    }

    #[test]
    fn rank_one_sup() {
        let s = HankelSymbol::real(&[1.0]);
        let sup = sup_garsia(&s, &LambdaGrid::default());
        assert_eq!(sup.value, 1.0);
        assert_eq!(sup.argmax, DiskPoint::origin());
        let r = verify_rkt(&s, &LambdaGrid::default()).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn zero_symbol() {
        let s = HankelSymbol::zero(1, 2);
        assert_eq!(sup_garsia(&s, &LambdaGrid::default()).value, 0.0);
        assert_eq!(
            verify_rkt(&s, &LambdaGrid::default()),
            Err(Error::ZeroSymbol)
        );
    }

    #[test]
    fn refinement_dominates_grid() {
        for seed in 0..10 {
            let s = random_symbol(seed, 6, 2, 0.5).unwrap();
            let sup = sup_garsia(&s, &LambdaGrid::default());
            assert!(sup.value >= sup.grid_value);
        }
    }

    #[test]
    fn random_symbol_is_deterministic() {
        let a = random_symbol(42, 5, 3, 1.0).unwrap();
        assert_eq!(a, random_symbol(42, 5, 3, 1.0).unwrap());
        assert_ne!(a, random_symbol(43, 5, 3, 1.0).unwrap());
        assert_eq!((a.m(), a.dim()), (5, 3));
        let one = random_symbol(1, 1, 1, 0.0).unwrap();
        assert_eq!(one.m(), 1);
        assert!(random_symbol(1, 0, 1, 0.0).is_err());
        assert!(random_symbol(1, 1, 1, -1.0).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(LambdaGrid::default().validate().is_ok());
        let g = LambdaGrid {
            radii: vec![1.0],
            ..LambdaGrid::default()
        };
        assert!(g.validate().is_err());
        let g = LambdaGrid {
            shrink: 1.0,
            ..LambdaGrid::default()
        };
        assert!(g.validate().is_err());
    }
}
