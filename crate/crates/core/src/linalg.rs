//! Dense largest-singular-value and largest-eigenvalue helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

/// Largest singular triple `M v = σ u` of a dense complex matrix together with
/// the a-posteriori residual `||M^* u - σ v||`.
#[derive(Debug, Clone)]
pub struct TopSingular {
    pub sigma: f64,
    pub u: DVector<Complex64>,
    pub v: DVector<Complex64>,
    pub residual: f64,
}

pub fn top_singular(m: &DMatrix<Complex64>) -> TopSingular {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 || m.iter().all(|x| x.norm_sqr() == 0.0) {
        return TopSingular {
            sigma: 0.0,
            u: DVector::zeros(rows),
            v: DVector::zeros(cols),
            residual: 0.0,
        };
    }
    let real = m.iter().all(|x| x.im == 0.0);
    let (sigma, u, v) = if real && rows == cols && is_symmetric(m) {
        real_symmetric_top(m)
    } else {
        complex_svd_top(m)
    };
    let residual = (m.adjoint() * &u - v.scale(sigma)).norm();
    TopSingular {
        sigma,
        u,
        v,
        residual,
    }
}

fn is_symmetric(m: &DMatrix<Complex64>) -> bool {
    let n = m.nrows();
    (0..n).all(|i| (0..i).all(|j| m[(i, j)] == m[(j, i)]))
}

// For a real symmetric matrix the largest singular value is the largest |eigenvalue|.
fn real_symmetric_top(m: &DMatrix<Complex64>) -> (f64, DVector<Complex64>, DVector<Complex64>) {
    let re = m.map(|x| x.re);
    let eig = SymmetricEigen::new(re);
    let (idx, lam) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, l)| (i, *l))
        .unwrap();
    let v: DVector<Complex64> = eig.eigenvectors.column(idx).map(|x| Complex64::new(x, 0.0));
    let u = v.scale(lam.signum());
    (lam.abs(), u, v)
}

fn complex_svd_top(m: &DMatrix<Complex64>) -> (f64, DVector<Complex64>, DVector<Complex64>) {
    let svd = m.clone().svd(true, true);
    let (idx, sigma) = svd
        .singular_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, s)| (i, *s))
        .unwrap();
    let u = svd.u.as_ref().unwrap().column(idx).into_owned();
    let v = svd.v_t.as_ref().unwrap().row(idx).adjoint();
    (sigma, u, v)
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn hermitian_max_eigenvalue(h: &DMatrix<Complex64>) -> f64 {
    if h.is_empty() {
        return 0.0;
    }
    if h.iter().all(|x| x.im == 0.0) {
        let eig = SymmetricEigen::new(h.map(|x| x.re));
        return eig
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
    }
    let eig = SymmetricEigen::new(h.clone());
    eig.eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn golden_ratio_matrix() {
        let m =
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let t = top_singular(&m);
        assert!((t.sigma - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!(t.residual < 1e-13);
    }

    #[test]
    fn rectangular_complex() {
        // rank one: u v^* scaled by 3
        let m = DMatrix::from_row_slice(
            3,
            2,
            &[
                c(0.0, 3.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
            ],
        );
        let t = top_singular(&m);
        assert!((t.sigma - 3.0).abs() < 1e-14);
        assert!(t.residual < 1e-13);
        assert!((&m * &t.v - t.u.scale(t.sigma)).norm() < 1e-13);
    }

    #[test]
    fn hermitian_eigen() {
        let h =
            DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        assert!((hermitian_max_eigenvalue(&h) - 3.0).abs() < 1e-13);
        assert_eq!(hermitian_max_eigenvalue(&DMatrix::zeros(0, 0)), 0.0);
    }
}
