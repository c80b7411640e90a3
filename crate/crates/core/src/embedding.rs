//! Model-space projections `P_θ` for finite Blaschke products and the
//! embedding estimate `Σ_i w_i ||P_{θ_i} f||^2 ≤ C ||f||^2` for finite atomic
//! measures, together with the reproducing-kernel test `C ≤ 4e·A` and the
//! dyadic Carleson box constant.

use std::collections::HashMap;
use std::f64::consts::{E, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::{
    kernel_degree_for_tail, reproducing_kernel, DiskPoint, TrigPolynomial, DEFAULT_KERNEL_TAIL,
};
use crate::linalg::hermitian_max_eigenvalue;
use crate::rkt::{maximize_on_disk, LambdaGrid};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Agreement required between the two formulas for `P_θ f`.
pub const CROSS_CHECK_TOL: f64 = 1e-9;
/// Relative slack on `4e` for roundoff.
pub const EMBEDDING_REL_TOL: f64 = 1e-6;
/// Multiplicative allowance for the grid underestimating `A`.
pub const EMBEDDING_GRID_SLACK: f64 = 0.01;
const MAX_GRID: usize = 1 << 22;

/// `4e`.
pub fn embedding_constant() -> f64 {
    4.0 * E
}

/// `θ(z) = c Π_j (z - a_j) / (1 - conj(a_j) z)` with `|c| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    zeros: Vec<DiskPoint>,
    front: Complex64,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<DiskPoint>, front: Complex64) -> Result<Self> {
        let modulus = front.norm();
        if (modulus - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnimodular { modulus });
        }
        Ok(Self { zeros, front })
    }

    pub fn from_zeros(zeros: Vec<DiskPoint>) -> Self {
        Self {
            zeros,
            front: Complex64::new(1.0, 0.0),
        }
    }

    /// `(z - λ) / (1 - conj(λ) z)`.
    pub fn elementary(lambda: DiskPoint) -> Self {
        Self::from_zeros(vec![lambda])
    }

    pub fn constant(front: Complex64) -> Result<Self> {
        Self::new(Vec::new(), front)
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn zeros(&self) -> &[DiskPoint] {
        &self.zeros
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros.iter().fold(self.front, |acc, a| {
            let a = a.value();
            acc * (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
        })
    }

    /// `||P_θ k_a||^2 = 1 - |θ(a)|^2`.
    pub fn kernel_projection_norm_sqr(&self, a: DiskPoint) -> f64 {
        1.0 - self.eval(a.value()).norm_sqr()
    }

    fn max_zero_modulus(&self) -> f64 {
        self.zeros.iter().map(|z| z.modulus()).fold(0.0, f64::max)
    }
}

// Number of circle samples needed so that aliasing of the geometrically
// decaying coefficients of conj(θ) f stays below roundoff.
fn grid_size(theta: &BlaschkeProduct, deg_f: usize, n: usize) -> usize {
    let rho = theta.max_zero_modulus();
    let decay = if rho == 0.0 || theta.degree() == 0 {
        0
    } else {
        // n^k ρ^n with multiplicity ≤ degree
        let base = (1e-18f64).ln() / rho.ln();
        (base * (1.0 + 0.25 * theta.degree() as f64)).ceil() as usize
    };
    let need = 2 * (n + deg_f + theta.degree() + decay) + 8;
    need.next_power_of_two().clamp(16, MAX_GRID)
}

/// Frequency of DFT bin `j` on a grid of size `len`, in `(-len/2, len/2]`.
fn bin_frequency(j: usize, len: usize) -> i64 {
    if j <= len / 2 {
        j as i64
    } else {
        j as i64 - len as i64
    }
}

/// `P_θ f` truncated to degrees `0..=N`, computed from `P_θ f = θ P_-(conj(θ) f)`
/// on an oversampled circle grid and cross-checked against `f - θ P_+(conj(θ) f)`.
pub fn model_projection(
    theta: &BlaschkeProduct,
    f: &TrigPolynomial,
    n: usize,
) -> Result<TrigPolynomial> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.dim(),
        });
    }
    let deg_f = f.degree()?.unwrap_or(0);
    if n < deg_f {
        return Err(Error::InvalidArgument(format!(
            "truncation degree {n} is below deg f = {deg_f}"
        )));
    }
    if theta.degree() == 0 || f.is_zero() {
        return Ok(TrigPolynomial::zero(1));
    }
    let len = grid_size(theta, deg_f, n);
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(len);
    let inv = planner.plan_fft_inverse(len);

    let angles: Vec<Complex64> = (0..len)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / len as f64))
        .collect();
    let theta_s: Vec<Complex64> = angles.iter().map(|&z| theta.eval(z)).collect();
    let f_s: Vec<Complex64> = angles.iter().map(|&z| eval_analytic(f, z)).collect();

    // coefficients of conj(θ) f
    let mut h: Vec<Complex64> = theta_s
        .iter()
        .zip(&f_s)
        .map(|(t, x)| t.conj() * x)
        .collect();
    fwd.process(&mut h);
    let norm = 1.0 / len as f64;
    let (mut minus, mut plus) = (vec![ZERO; len], vec![ZERO; len]);
    for (j, c) in h.iter().enumerate() {
        if bin_frequency(j, len) < 0 {
            minus[j] = c * norm;
        } else {
            plus[j] = c * norm;
        }
    }
    inv.process(&mut minus);
    inv.process(&mut plus);

    // θ P_-(conj θ f) and f - θ P_+(conj θ f), sampled
    let mut via_minus: Vec<Complex64> = minus.iter().zip(&theta_s).map(|(x, t)| x * t).collect();
    let mut via_plus: Vec<Complex64> = plus
        .iter()
        .zip(&theta_s)
        .zip(&f_s)
        .map(|((x, t), fv)| fv - x * t)
        .collect();
    fwd.process(&mut via_minus);
    fwd.process(&mut via_plus);

    let mut defect = 0.0f64;
    let mut coeffs = vec![ZERO; n + 1];
    for j in 0..len {
        let a = via_minus[j] * norm;
        let b = via_plus[j] * norm;
        defect = defect.max((a - b).norm());
        let k = bin_frequency(j, len);
        if k < 0 {
            // the projection lies in H^2: negative frequencies must vanish
            defect = defect.max(a.norm());
        } else if (k as usize) <= n {
            coeffs[k as usize] = a;
        }
    }
    if defect > CROSS_CHECK_TOL {
        return Err(Error::InsufficientResolution { defect, n });
    }
    Ok(TrigPolynomial::analytic(coeffs))
}

fn eval_analytic(f: &TrigPolynomial, z: Complex64) -> Complex64 {
    let hi = f.n_max().unwrap_or(0);
    (0..=hi)
        .rev()
        .fold(ZERO, |acc, k| acc * z + f.coeff_at(k, 0))
}

/// `P_θ f = (1-|λ|^2)^{1/2} f(λ) k_λ` for `θ` elementary at `λ`, with `k_λ`
/// truncated at `degree`.
pub fn elementary_projection_truncated(
    lambda: DiskPoint,
    f: &TrigPolynomial,
    degree: usize,
) -> Result<TrigPolynomial> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.dim(),
        });
    }
    f.require_analytic()?;
    let value = f.harmonic_extension(lambda)[0];
    let (k, _) = reproducing_kernel(lambda, degree);
    Ok(k.scale(value * (1.0 - lambda.value().norm_sqr()).sqrt()))
}

/// [`elementary_projection_truncated`] at the certified-tail degree.
pub fn elementary_projection(lambda: DiskPoint, f: &TrigPolynomial) -> Result<TrigPolynomial> {
    elementary_projection_truncated(
        lambda,
        f,
        kernel_degree_for_tail(lambda, DEFAULT_KERNEL_TAIL),
    )
}

/// `||P_θ f||^2 = (1-|λ|^2) |f(λ)|^2` for `θ` elementary at `λ`.
pub fn elementary_projection_norm_sqr(lambda: DiskPoint, f: &TrigPolynomial) -> f64 {
    (1.0 - lambda.value().norm_sqr()) * f.harmonic_extension(lambda)[0].norm_sqr()
}

/// Matrix of `P_N P_θ P_N` on polynomials of degree `≤ N` in the monomial basis.
pub fn projection_matrix(theta: &BlaschkeProduct, n: usize) -> Result<DMatrix<Complex64>> {
    let mut m = DMatrix::zeros(n + 1, n + 1);
    for j in 0..=n {
        let col = model_projection(
            theta,
            &TrigPolynomial::monomial(j as i64, Complex64::new(1.0, 0.0)),
            n,
        )?;
        for (k, c) in col.iter() {
            m[(k as usize, j)] = c[0];
        }
    }
    Ok(m)
}

/// One atom: location, weight and the inner function attached to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atom {
    pub lambda: DiskPoint,
    pub weight: f64,
    /// Zeros of `θ`; defaults to the elementary factor at `lambda`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_zeros: Option<Vec<DiskPoint>>,
}

impl Atom {
    pub fn theta(&self) -> BlaschkeProduct {
        match &self.theta_zeros {
            Some(z) => BlaschkeProduct::from_zeros(z.clone()),
            None => BlaschkeProduct::elementary(self.lambda),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscreteMeasure {
    pub atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        let m = Self { atoms };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self
            .atoms
            .iter()
            .any(|a| !(a.weight.is_finite() && a.weight >= 0.0))
        {
            return Err(Error::InvalidArgument(
                "atom weights must be finite and nonnegative".into(),
            ));
        }
        Ok(())
    }

    pub fn family(&self) -> Vec<BlaschkeProduct> {
        self.atoms.iter().map(Atom::theta).collect()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    weight: a.weight * c,
                    ..a.clone()
                })
                .collect(),
        }
    }
}

/// Largest `C` with `Σ_i w_i ||P_N P_{θ_i} f||^2 ≤ C ||f||^2` over polynomials
/// of degree `≤ N`; a lower bound for the full embedding constant.
pub fn embedding_norm(mu: &DiscreteMeasure, family: &[BlaschkeProduct], n: usize) -> Result<f64> {
    if family.len() != mu.atoms.len() {
        return Err(Error::InvalidArgument(format!(
            "{} inner functions for {} atoms",
            family.len(),
            mu.atoms.len()
        )));
    }
    mu.validate()?;
    let mut gram = DMatrix::<Complex64>::zeros(n + 1, n + 1);
    for (atom, theta) in mu.atoms.iter().zip(family) {
        if atom.weight == 0.0 {
            continue;
        }
        let p = projection_matrix(theta, n)?;
        gram += (p.adjoint() * &p).scale(atom.weight);
    }
    Ok(hermitian_max_eigenvalue(&gram).max(0.0))
}

/// `A_test = sup_a Σ_i w_i ||P_{θ_i} k_a||^2` estimated on `grid`.
pub fn kernel_test_sup(
    mu: &DiscreteMeasure,
    family: &[BlaschkeProduct],
    grid: &LambdaGrid,
) -> (f64, DiskPoint) {
    if mu.atoms.is_empty() {
        return (0.0, DiskPoint::origin());
    }
    let test = |a: DiskPoint| {
        mu.atoms
            .iter()
            .zip(family)
            .map(|(atom, t)| atom.weight * t.kernel_projection_norm_sqr(a))
            .sum::<f64>()
    };
    let m = maximize_on_disk(test, grid);
    (m.value, m.argmax)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingReport {
    #[serde(rename = "C_est")]
    pub c_est: f64,
    #[serde(rename = "A_test")]
    pub a_test: f64,
    pub argmax: DiskPoint,
    pub ratio: f64,
    pub bound: f64,
    pub pass: bool,
    /// `C_est ≥ A_test` up to the kernel truncation tail.
    pub lower_bound_consistent: bool,
    #[serde(rename = "N")]
    pub truncation: usize,
    pub atoms: usize,
}

pub fn rkt_embedding_test(
    mu: &DiscreteMeasure,
    family: &[BlaschkeProduct],
    grid: &LambdaGrid,
    n: usize,
) -> Result<EmbeddingReport> {
    let c_est = embedding_norm(mu, family, n)?;
    let (a_test, argmax) = kernel_test_sup(mu, family, grid);
    let bound = embedding_constant();
    let allowed = bound * a_test * (1.0 + EMBEDDING_REL_TOL) * (1.0 + EMBEDDING_GRID_SLACK);
    let ratio = if a_test > 0.0 { c_est / a_test } else { 0.0 };
    let total_weight: f64 = mu.atoms.iter().map(|a| a.weight).sum();
    Ok(EmbeddingReport {
        c_est,
        a_test,
        argmax,
        ratio,
        bound,
        pass: c_est <= allowed || (a_test == 0.0 && c_est == 0.0),
        lower_bound_consistent: c_est >= a_test - 1e-6 * (1.0 + total_weight),
        truncation: n,
        atoms: mu.atoms.len(),
    })
}

/// Dyadic Carleson box constant of `ν = Σ_i w_i (1-|λ_i|^2) δ_{λ_i}`.
///
/// The box over the dyadic arc `I_{k,j} = [2πj/2^k, 2π(j+1)/2^k)` is
/// `{r e^{it} : t ∈ I, 1 - 2^{-k} ≤ r < 1}`; its mass is divided by the
/// normalized arc length `2^{-k}`. Generations run down to the finest one
/// that still contains an atom.
pub fn carleson_box_constant(mu: &DiscreteMeasure) -> f64 {
    let mut boxes: HashMap<(u32, u64), f64> = HashMap::new();
    for atom in &mu.atoms {
        let z = atom.lambda.value();
        let r = z.norm();
        let mass = atom.weight * (1.0 - r * r);
        if mass == 0.0 {
            continue;
        }
        let t = z.im.atan2(z.re).rem_euclid(2.0 * PI);
        // finest k with 1 - 2^{-k} <= r
        let finest = if r == 0.0 {
            0
        } else {
            (-(1.0 - r).log2()).floor().min(62.0) as u32
        };
        for k in 0..=finest {
            let cells = 1u64 << k;
            let j = ((t / (2.0 * PI) * cells as f64).floor() as u64).min(cells - 1);
            *boxes.entry((k, j)).or_default() += mass;
        }
    }
    boxes
        .into_iter()
        .map(|((k, _), m)| m * (1u64 << k) as f64)
        .fold(0.0, f64::max)
}
