//! Hankel operators `Γ : H^2 → H^2_-(E)` with finite antianalytic symbol
//! `φ_- = Σ_{k=1}^m γ_k zbar^k`, `γ_k ∈ E = C^d`.
//!
//! Because `γ_k = 0` for `k > m`, the infinite matrix `{γ_{j+k+1}}` has only
//! finitely many nonzero blocks and the `m·d × m` truncation is exact.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hardy::{reproducing_kernel, DiskPoint, Side, TrigPolynomial};
use crate::linalg::{top_singular, TopSingular};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymbolRepr", into = "SymbolRepr")]
pub struct HankelSymbol {
    dim: usize,
    // γ_1..γ_m, `dim` entries each
    gamma: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolRepr {
    dim: usize,
    gamma: Vec<Vec<Complex64>>,
}

impl TryFrom<SymbolRepr> for HankelSymbol {
    type Error = Error;
    fn try_from(r: SymbolRepr) -> Result<Self> {
        HankelSymbol::new(r.dim, r.gamma)
    }
}

impl From<HankelSymbol> for SymbolRepr {
    fn from(s: HankelSymbol) -> Self {
        SymbolRepr {
            dim: s.dim,
            gamma: s.gamma.chunks(s.dim).map(<[_]>::to_vec).collect(),
        }
    }
}

impl HankelSymbol {
    pub fn new(dim: usize, gamma: Vec<Vec<Complex64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "symbol dimension must be positive".into(),
            ));
        }
        let mut flat = Vec::with_capacity(gamma.len() * dim);
        for g in gamma {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            flat.extend(g);
        }
        Self::from_flat(dim, flat)
    }

    pub fn from_flat(dim: usize, gamma: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || !gamma.len().is_multiple_of(dim) {
            return Err(Error::InvalidArgument(
                "coefficient count is not a multiple of dim".into(),
            ));
        }
        if gamma.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite {
                what: "Hankel symbol",
            });
        }
        Ok(Self { dim, gamma })
    }

    /// Scalar symbol from `γ_1, …, γ_m`.
    pub fn scalar(gamma: Vec<Complex64>) -> Self {
        Self { dim: 1, gamma }
    }

    /// Scalar symbol with real coefficients.
    pub fn real(gamma: &[f64]) -> Self {
        Self::scalar(gamma.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(dim: usize, m: usize) -> Self {
        Self {
            dim,
            gamma: vec![ZERO; dim * m],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Highest index `m`.
    #[inline]
    pub fn m(&self) -> usize {
        self.gamma.len() / self.dim
    }

    /// `γ_k` for `1 <= k <= m`.
    pub fn gamma(&self, k: usize) -> &[Complex64] {
        assert!(
            k >= 1 && k <= self.m(),
            "gamma index {k} out of range 1..={}",
            self.m()
        );
        &self.gamma[(k - 1) * self.dim..k * self.dim]
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.gamma
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(|c| *c == ZERO)
    }

    /// Hilbert-type coefficients `γ_k = 1/k`.
    pub fn hilbert(m: usize) -> Self {
        Self::scalar(
            (1..=m)
                .map(|k| Complex64::new(1.0 / k as f64, 0.0))
                .collect(),
        )
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            gamma: self.gamma.iter().map(|x| x * c).collect(),
        }
    }

    /// `γ_k ↦ e^{ikα} γ_k`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let gamma = self
            .gamma
            .chunks(self.dim)
            .enumerate()
            .flat_map(|(i, g)| {
                let e = Complex64::from_polar(1.0, (i + 1) as f64 * alpha);
                g.iter().map(move |x| x * e)
            })
            .collect();
        Self {
            dim: self.dim,
            gamma,
        }
    }

    /// `Σ_k ||γ_k||^2 = ||Γ1||_2^2`.
    pub fn energy(&self) -> f64 {
        self.gamma.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Short stable fingerprint of the coefficients.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.dim as u64).to_le_bytes());
        h.update((self.m() as u64).to_le_bytes());
        for c in &self.gamma {
            h.update(c.re.to_le_bytes());
            h.update(c.im.to_le_bytes());
        }
        h.finalize()[..8]
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// `φ_-` as a trigonometric polynomial supported in `[-m, -1]`.
    pub fn antianalytic_symbol(&self) -> TrigPolynomial {
        let m = self.m();
        if m == 0 {
            return TrigPolynomial::zero(self.dim);
        }
        let coeffs = (1..=m)
            .rev()
            .flat_map(|k| self.gamma(k).iter().copied())
            .collect();
        TrigPolynomial::from_flat(self.dim, -(m as i64), coeffs).expect("validated symbol")
    }

    /// `||φ_-||_E^2` restricted to the circle: coefficient at `n` is
    /// `Σ_{k-j=n} <γ_j, γ_k>_E`.
    pub fn modulus_squared(&self) -> TrigPolynomial {
        let m = self.m() as i64;
        if m == 0 {
            return TrigPolynomial::zero(1);
        }
        let mut c = vec![ZERO; (2 * m - 1) as usize];
        for j in 1..=m {
            for k in 1..=m {
                let ip: Complex64 = self
                    .gamma(j as usize)
                    .iter()
                    .zip(self.gamma(k as usize))
                    .map(|(a, b)| a * b.conj())
                    .sum();
                c[(k - j + m - 1) as usize] += ip;
            }
        }
        TrigPolynomial::scalar(1 - m, c)
    }

    pub fn build_matrix(&self) -> HankelMatrix {
        let (m, d) = (self.m(), self.dim);
        let mut mat = DMatrix::zeros(m * d, m);
        for j in 0..m {
            for k in 0..m - j {
                let g = self.gamma(j + k + 1);
                for (i, x) in g.iter().enumerate() {
                    mat[(j * d + i, k)] = *x;
                }
            }
        }
        HankelMatrix {
            dim: d,
            m,
            matrix: mat,
        }
    }

    /// `Γf = P_-(φ_- f)` for a scalar analytic polynomial `f`.
    pub fn apply(&self, f: &TrigPolynomial) -> Result<TrigPolynomial> {
        if f.dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: f.dim(),
            });
        }
        f.require_analytic()?;
        Ok(f.multiply(&self.antianalytic_symbol())?
            .riesz_project(Side::Minus))
    }

    /// `||Γ||` as the largest singular value of the exact finite matrix.
    pub fn operator_norm(&self) -> f64 {
        self.top_singular().sigma
    }

    /// Largest singular triple with its a-posteriori residual.
    pub fn top_singular(&self) -> TopSingular {
        top_singular(&self.build_matrix().matrix)
    }

    /// `||Γk_λ||_2^2 = (1-|λ|^2) Σ_{j=1}^m ||Σ_{k=j}^m γ_k conj(λ)^{k-j}||^2`.
    pub fn kernel_image_norm_direct(&self, lambda: DiskPoint) -> f64 {
        let d = self.dim;
        let lc = lambda.value().conj();
        let mut acc = vec![ZERO; d];
        let mut total = 0.0;
        for j in (1..=self.m()).rev() {
            for (a, g) in acc.iter_mut().zip(self.gamma(j)) {
                *a = *a * lc + g;
            }
            total += acc.iter().map(|x| x.norm_sqr()).sum::<f64>();
        }
        (1.0 - lambda.value().norm_sqr()) * total
    }

    /// `|φ|^2(λ) - |φ(λ)|^2`; builds a [`GarsiaTable`] on each call, prefer the
    /// table for sweeps.
    pub fn garsia_value(&self, lambda: DiskPoint) -> f64 {
        GarsiaTable::new(self).value(lambda)
    }

    /// Distance between `P_+(φ k_λ)` (degrees `0..=N`) and `φ(λ) k_λ`, both with
    /// the kernel truncated so that no retained coefficient is affected.
    pub fn toeplitz_eigen_residual(&self, lambda: DiskPoint, degree: usize) -> f64 {
        let phi = self.antianalytic_symbol();
        let (k_long, _) = reproducing_kernel(lambda, degree + self.m());
        let lhs = k_long
            .multiply(&phi)
            .expect("kernel is scalar")
            .riesz_project(Side::Plus)
            .truncate(0, degree as i64);
        let (k, _) = reproducing_kernel(lambda, degree);
        let rhs = k
            .outer(&phi.harmonic_extension(lambda))
            .expect("kernel is scalar");
        lhs.sub(&rhs).expect("same dimension").norm()
    }
}

/// Precomputed `φ_-` and `||φ_-||^2` for fast Garsia evaluations.
#[derive(Debug, Clone)]
pub struct GarsiaTable {
    phi: TrigPolynomial,
    modulus_sq: TrigPolynomial,
}

impl GarsiaTable {
    pub fn new(s: &HankelSymbol) -> Self {
        Self {
            phi: s.antianalytic_symbol(),
            modulus_sq: s.modulus_squared(),
        }
    }

    pub fn value(&self, lambda: DiskPoint) -> f64 {
        let outer = self.modulus_sq.harmonic_extension(lambda)[0].re;
        let inner: f64 = self
            .phi
            .harmonic_extension(lambda)
            .iter()
            .map(|x| x.norm_sqr())
            .sum();
        outer - inner
    }
}

/// The finite block-Hankel matrix; block row `j` holds `γ_{j+k+1}` in column `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelMatrix {
    pub dim: usize,
    pub m: usize,
    pub matrix: DMatrix<Complex64>,
}

impl HankelMatrix {
    pub fn block(&self, j: usize, k: usize) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| self.matrix[(j * self.dim + i, k)])
            .collect()
    }

    /// Acts on the coefficient vector of `f` (degrees `0..m`), returning the
    /// coefficients of `Γf` at frequencies `-1, -2, …, -m`.
    pub fn apply_coeffs(&self, f: &[Complex64]) -> Vec<Complex64> {
        let mut x = nalgebra::DVector::zeros(self.m);
        for (i, c) in f.iter().take(self.m).enumerate() {
            x[i] = *c;
        }
        (&self.matrix * x).iter().copied().collect()
    }
}
