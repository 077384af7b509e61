use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Result};

/// `log2 det(I + rho H H^†)` in bits per channel use.
///
/// Works on the smaller of `H H^†` and `H^† H`; both have the same nonzero
/// spectrum.
pub fn logdet_capacity(h: &DMatrix<Complex64>, rho: f64) -> Result<f64> {
    if !rho.is_finite() || rho < 0.0 {
        return invalid(format!("SNR must be finite and >= 0, got {rho}"));
    }
    if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return invalid("channel matrix has non-finite entries");
    }
    let gram = if h.ncols() <= h.nrows() {
        h.adjoint() * h
    } else {
        h * h.adjoint()
    };
    Ok(logdet_identity_plus(&gram, rho))
}

/// `log2 det(I + rho G)` for a Hermitian positive semidefinite `G`.
pub(crate) fn logdet_identity_plus(gram: &DMatrix<Complex64>, rho: f64) -> f64 {
    let n = gram.nrows();
    let a = DMatrix::<Complex64>::identity(n, n) + gram * Complex64::from(rho);
    let bits = match a.clone().cholesky() {
        Some(chol) => 2.0 * chol.l().diagonal().iter().map(|d| d.re.log2()).sum::<f64>(),
        None => a.determinant().re.log2(),
    };
    bits.max(0.0)
}

/// Scalar shortcut for a vector channel: `log2(1 + rho |h|^2)`.
pub(crate) fn vector_capacity(norm_sqr: f64, rho: f64) -> f64 {
    (rho * norm_sqr).ln_1p() / std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basic_values() {
        let zero = DMatrix::<Complex64>::zeros(3, 2);
        assert_eq!(logdet_capacity(&zero, 10.0).unwrap(), 0.0);
        let one = DMatrix::from_element(1, 1, c(1.0));
        assert!((logdet_capacity(&one, 3.0).unwrap() - 2.0).abs() < 1e-12);
        let eye = DMatrix::<Complex64>::identity(2, 2);
        assert!((logdet_capacity(&eye, 1.0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let mut h = DMatrix::<Complex64>::identity(2, 2);
        h[(0, 1)] = Complex64::new(f64::NAN, 0.0);
        assert!(logdet_capacity(&h, 1.0).is_err());
        assert!(logdet_capacity(&DMatrix::identity(2, 2), -1.0).is_err());
    }

    #[test]
    fn wide_and_tall_agree() {
        let h = DMatrix::from_row_slice(
            2,
            3,
            &[
                Complex64::new(0.3, -1.2),
                Complex64::new(0.7, 0.1),
                Complex64::new(-0.4, 0.9),
                Complex64::new(1.1, 0.2),
                Complex64::new(-0.5, -0.6),
                Complex64::new(0.05, 0.4),
            ],
        );
        let a = logdet_capacity(&h, 7.5).unwrap();
        let b = logdet_capacity(&h.adjoint(), 7.5).unwrap();
        assert!((a - b).abs() < 1e-12);
        // cross-check against the determinant directly
        let direct = (DMatrix::<Complex64>::identity(2, 2) + &h * h.adjoint() * c(7.5))
            .determinant()
            .re
            .log2();
        assert!((a - direct).abs() < 1e-10);
    }

    #[test]
    fn vector_shortcut_matches() {
        let h = DMatrix::from_column_slice(2, 1, &[Complex64::new(0.6, 0.8), Complex64::new(-1.0, 0.5)]);
        let full = logdet_capacity(&h, 4.0).unwrap();
        assert!((vector_capacity(h.norm_squared(), 4.0) - full).abs() < 1e-12);
    }
}
