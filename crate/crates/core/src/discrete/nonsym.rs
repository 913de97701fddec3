use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Enclosures of the real and imaginary parts of an eigenvalue `k₀` of a
/// (possibly non-symmetric) operator whose eigenvector is real and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonsymBounds {
    pub re_lower: f64,
    pub re_upper: f64,
    pub im_lower: f64,
    pub im_upper: f64,
}

impl NonsymBounds {
    pub fn encloses(&self, k0: Complex64, slack: f64) -> bool {
        self.re_lower - slack <= k0.re
            && k0.re <= self.re_upper + slack
            && self.im_lower - slack <= k0.im
            && k0.im <= self.im_upper + slack
    }
}

/// Extrema over `q` of `Re(K*φ)_q / φ_q` and `-Im(K*φ)_q / φ_q`, where `K*`
/// is the conjugate transpose.
pub fn nonsym_bounds(k: &Matrix<Complex64>, phi: &[f64]) -> Result<NonsymBounds> {
    if !k.is_square() {
        return Err(Error::NotSquare {
            rows: k.rows(),
            cols: k.cols(),
        });
    }
    let n = k.rows();
    if phi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: phi.len(),
        });
    }
    if let Some((index, &value)) = phi.iter().enumerate().find(|(_, &p)| !(p > 0.0)) {
        return Err(Error::NonPositiveTestVector { index, value });
    }
    let mut out = NonsymBounds {
        re_lower: f64::INFINITY,
        re_upper: f64::NEG_INFINITY,
        im_lower: f64::INFINITY,
        im_upper: f64::NEG_INFINITY,
    };
    for q in 0..n {
        let adjoint: Complex64 = (0..n).map(|p| k.get(p, q).conj() * phi[p]).sum();
        let re = adjoint.re / phi[q];
        // adding 0.0 turns -0.0 into 0.0
        let im = -adjoint.im / phi[q] + 0.0;
        out.re_lower = out.re_lower.min(re);
        out.re_upper = out.re_upper.max(re);
        out.im_lower = out.im_lower.min(im);
        out.im_upper = out.im_upper.max(im);
    }
    Ok(out)
}

pub fn nonsym_bounds_real(k: &Matrix<f64>, phi: &[f64]) -> Result<NonsymBounds> {
    let complex = Matrix::new(
        k.rows(),
        k.cols(),
        k.data().iter().map(|&x| Complex64::new(x, 0.0)).collect(),
    )?;
    nonsym_bounds(&complex, phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let b = nonsym_bounds_real(&Matrix::identity(2), &[1.0, 1.0]).unwrap();
        assert_eq!(
            (b.re_lower, b.re_upper, b.im_lower, b.im_upper),
            (1.0, 1.0, 0.0, 0.0)
        );
    }

    #[test]
    fn two_by_two_perron() {
        let k = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 1.0]]).unwrap();
        let b = nonsym_bounds_real(&k, &[1.0, 1.0]).unwrap();
        assert_eq!((b.re_lower, b.re_upper), (3.0, 4.0));
        assert_eq!((b.im_lower, b.im_upper), (0.0, 0.0));
        assert!(b.encloses(Complex64::new(1.0 + 6f64.sqrt(), 0.0), 0.0));
    }

    #[test]
    fn complex_shift_of_positive_matrix() {
        // K = P + i c I keeps the Perron vector; k0 = rho(P) + i c
        let c = 0.7;
        let p = [[2.0, 1.0, 0.5], [0.3, 1.0, 2.0], [1.0, 1.0, 1.0]];
        let rows: Vec<Vec<Complex64>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| Complex64::new(p[i][j], if i == j { c } else { 0.0 }))
                    .collect()
            })
            .collect();
        let k = Matrix::from_rows(&rows).unwrap();
        let b = nonsym_bounds(&k, &[1.0, 2.0, 0.5]).unwrap();
        assert!((b.im_lower - c).abs() < 1e-15 && (b.im_upper - c).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        let rect = Matrix::<Complex64>::zeros(2, 3);
        assert!(matches!(
            nonsym_bounds(&rect, &[1.0, 1.0]),
            Err(Error::NotSquare { .. })
        ));
        let sq = Matrix::<Complex64>::zeros(2, 2);
        assert!(matches!(
            nonsym_bounds(&sq, &[1.0, -1.0]),
            Err(Error::NonPositiveTestVector { .. })
        ));
    }
}
