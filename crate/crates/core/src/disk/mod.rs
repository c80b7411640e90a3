//! Calculus on the unit disk: polynomials in `(z, zbar)`, quadrature against
//! `(1/2π) ln(1/|z|) dA(z)`, and executable forms of Green's formula, the
//! Littlewood–Paley identity, the Uchiyama-type bound and the boundary/area
//! identity behind the Hankel norm estimate.

mod poly;
mod quadrature;

pub use poly::PolyZZbar;
pub use quadrature::{gauss_legendre, DiskQuadrature, DEFAULT_RADIAL_NODES};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hankel::HankelSymbol;
use crate::hardy::TrigPolynomial;
use crate::rkt::{sup_garsia, LambdaGrid};

/// Allowed excess of the measured Garsia sup over 1 for a normalized symbol.
pub const NORMALIZATION_SLACK: f64 = 1e-9;

const HERMITIAN_TOL: f64 = 1e-12;

/// One line of a checker report: which identity, its residual, the tolerance, verdict.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct IdentityCheck {
    pub identity: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn new(identity: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            identity: identity.into(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
        }
    }
}

pub fn ddbar(u: &PolyZZbar) -> PolyZZbar {
    u.ddbar()
}

/// `(1/2π) ∫_D F ln(1/|z|) dA` for a scalar real-valued polynomial.
pub fn integrate_log(f: &PolyZZbar, q: &DiskQuadrature) -> Result<f64> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.dim(),
        });
    }
    let scale = f.terms().map(|(_, c)| c[0].norm()).fold(1.0, f64::max);
    let defect = f.hermitian_defect();
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { defect });
    }
    Ok(q.integrate(f)[0].re)
}

/// Complex-valued version of [`integrate_log`], one entry per coordinate.
pub fn integrate_log_complex(f: &PolyZZbar, q: &DiskQuadrature) -> Vec<Complex64> {
    q.integrate(f)
}

/// `|(1/2π)∫_T U - U(0) - (1/2π)∫_D ΔU ln(1/|z|) dA|`; the left side is read
/// off the coefficients, the right side goes through the quadrature.
pub fn green_residual(u: &PolyZZbar, q: &DiskQuadrature) -> f64 {
    let mean = u.circle_mean();
    let origin = u.value_at_origin();
    let area = q.integrate(&u.laplacian());
    mean.iter()
        .zip(&origin)
        .zip(&area)
        .map(|((m, o), a)| (m - o - a).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `(2/π) ∫_D ||f'||^2 ln(1/|z|) dA` for an analytic polynomial.
pub fn derivative_energy(f: &TrigPolynomial, q: &DiskQuadrature) -> Result<f64> {
    let p = PolyZZbar::from_analytic(f)?;
    let d = p.d_z();
    let integrand = d.norm_sqr().scale(Complex64::new(4.0, 0.0));
    integrate_log(&integrand, q)
}

/// `| ||f||^2 - (2/π)∫ ||f'||^2 ln(1/|z|) dA - ||f(0)||^2 |`.
pub fn littlewood_paley_residual(f: &TrigPolynomial, q: &DiskQuadrature) -> Result<f64> {
    let area = derivative_energy(f, q)?;
    let at_origin: f64 = f
        .coeff(0)
        .map_or(0.0, |c| c.iter().map(|x| x.norm_sqr()).sum());
    Ok((f.norm_sqr() - area - at_origin).abs())
}

/// `||g||^2 - (2/π)∫ ||g'||^2 ln(1/|z|) dA`, which equals `||g(0)||^2`.
pub fn int1_slack(g: &TrigPolynomial, q: &DiskQuadrature) -> Result<f64> {
    Ok(g.norm_sqr() - derivative_energy(g, q)?)
}

/// `φ(z) = Σ γ_k zbar^k` extended into the disk.
pub fn symbol_on_disk(s: &HankelSymbol) -> PolyZZbar {
    PolyZZbar::from_harmonic(&s.antianalytic_symbol())
}

/// `u = 1 + ||φ(z)||^2 - ||φ||^2(z)`; `Δu = 4 ||∂̄φ||^2` and `0 <= u <= 1`
/// when the Garsia sup is at most 1.
pub fn subharmonic_weight(s: &HankelSymbol) -> PolyZZbar {
    let phi = symbol_on_disk(s);
    let outer = PolyZZbar::from_harmonic(&s.modulus_squared());
    PolyZZbar::constant(Complex64::new(1.0, 0.0))
        .add(&phi.norm_sqr())
        .and_then(|p| p.add(&outer.scale(Complex64::new(-1.0, 0.0))))
        .expect("scalar polynomials")
}

/// Precomputed `4 ||∂̄φ||^2` for a symbol that passed the normalization check.
#[derive(Debug, Clone)]
pub struct UchiyamaWeight {
    laplacian_u: PolyZZbar,
    measured_sup: f64,
}

impl UchiyamaWeight {
    /// Checks `sup_λ garsia_value ≤ 1` on `grid` before accepting the symbol.
    pub fn new(s: &HankelSymbol, grid: &LambdaGrid) -> Result<Self> {
        let sup = sup_garsia(s, grid).value.powi(2);
        if sup > 1.0 + NORMALIZATION_SLACK {
            return Err(Error::NotNormalized { measured_sup: sup });
        }
        Ok(Self::new_unchecked(s, sup))
    }

    fn new_unchecked(s: &HankelSymbol, measured_sup: f64) -> Self {
        let dphi = symbol_on_disk(s).d_zbar();
        Self {
            laplacian_u: dphi.norm_sqr().scale(Complex64::new(4.0, 0.0)),
            measured_sup,
        }
    }

    pub fn measured_sup(&self) -> f64 {
        self.measured_sup
    }

    pub fn laplacian_u(&self) -> &PolyZZbar {
        &self.laplacian_u
    }

    /// `[(1/2π) ∫ Δu ||f||^2 ln(1/|z|) dA] / ||f||^2`.
    pub fn ratio(&self, f: &TrigPolynomial, q: &DiskQuadrature) -> Result<f64> {
        if f.is_zero() {
            return Err(Error::InvalidArgument("f must be nonzero".into()));
        }
        let fm = PolyZZbar::from_analytic(f)?.norm_sqr();
        let integrand = self.laplacian_u.mul(&fm)?;
        Ok(integrate_log(&integrand, q)? / f.norm_sqr())
    }
}

/// [`UchiyamaWeight::ratio`] with the normalization checked on the default grid.
pub fn uchiyama_ratio(s: &HankelSymbol, f: &TrigPolynomial, q: &DiskQuadrature) -> Result<f64> {
    UchiyamaWeight::new(s, &LambdaGrid::default())?.ratio(f, q)
}

/// Boundary and area evaluations of `(Γf, gbar)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProofIdentity {
    pub boundary: Complex64,
    pub area: Complex64,
}

impl ProofIdentity {
    pub fn residual(&self) -> f64 {
        (self.boundary - self.area).norm()
    }
}

/// Evaluates `(Γf, gbar)` twice: as the Parseval pairing of `Γf` with `gbar`,
/// and as `(2/π) ∫_D ((f ∂̄φ, gbar')_E + (f' ∂̄φ, gbar)_E) ln(1/|z|) dA`.
pub fn proof_identity(
    s: &HankelSymbol,
    f: &TrigPolynomial,
    g: &TrigPolynomial,
    q: &DiskQuadrature,
) -> Result<ProofIdentity> {
    if g.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: g.dim(),
        });
    }
    g.require_analytic()?;
    if g.coeff(0)
        .is_some_and(|c| c.iter().any(|x| x.norm_sqr() != 0.0))
    {
        return Err(Error::NonzeroAtOrigin { what: "g" });
    }
    let boundary = s.apply(f)?.inner_product(&g.conjugate())?;

    let dphi = symbol_on_disk(s).d_zbar();
    let fp = PolyZZbar::from_analytic(f)?;
    let gp = PolyZZbar::from_analytic(g)?;
    let first = fp.mul(&dphi)?.dot(&gp.d_z())?;
    let second = fp.d_z().mul(&dphi)?.dot(&gp)?;
    let integrand = first.add(&second)?.scale(Complex64::new(4.0, 0.0));
    let area = q.integrate(&integrand)[0];
    Ok(ProofIdentity { boundary, area })
}

pub fn proof_identity_residual(
    s: &HankelSymbol,
    f: &TrigPolynomial,
    g: &TrigPolynomial,
    q: &DiskQuadrature,
) -> Result<f64> {
    proof_identity(s, f, g, q).map(|p| p.residual())
}
