//! Inverse eigenvalue problem for Jacobi matrices: rebuild `T` from its
//! spectrum and the first (or last) components of its eigenvectors.

use super::dense::{dense_eig, SymmetricDense};
use super::tridiag::SymTridiag;
use crate::error::{Error, Result};

fn check_input(lambda: &[f64], w: &[f64]) -> Result<()> {
    if lambda.len() < 2 || lambda.len() != w.len() {
        return Err(Error::InvalidInput(format!(
            "need matching spectrum and weights with n >= 2 (got {} and {})",
            lambda.len(),
            w.len()
        )));
    }
    if lambda.windows(2).any(|p| !(p[0] < p[1])) {
        return Err(Error::InvalidInput(
            "spectrum must be strictly increasing".into(),
        ));
    }
    if w.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::InvalidInput("weights must be strictly positive".into()));
    }
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "weights must have unit norm, got {norm}"
        )));
    }
    Ok(())
}

/// The unique Jacobi matrix (positive subdiagonal) with eigenvalues `lambda`
/// whose normalized eigenvectors have first components `w`.
///
/// Runs Lanczos on `diag(lambda)` from `w`, with full reorthogonalization
/// applied twice per step.
pub fn lanczos_from_spectrum(lambda: &[f64], w: &[f64]) -> Result<SymTridiag> {
    check_input(lambda, w)?;
    let n = lambda.len();
    let scale = lambda.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    let floor = f64::MIN_POSITIVE.sqrt() * scale;

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n - 1);
    basis.push(w.to_vec());

    for j in 0..n {
        let q = &basis[j];
        let mut r: Vec<f64> = q.iter().zip(lambda).map(|(x, l)| x * l).collect();
        let a: f64 = r.iter().zip(q).map(|(x, y)| x * y).sum();
        alpha.push(a);
        if j + 1 == n {
            break;
        }
        for _ in 0..2 {
            for v in &basis {
                let proj: f64 = r.iter().zip(v).map(|(x, y)| x * y).sum();
                for (x, y) in r.iter_mut().zip(v) {
                    *x -= proj * y;
                }
            }
        }
        let b = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if b <= floor {
            return Err(Error::Breakdown { step: j, beta: b });
        }
        beta.push(b);
        basis.push(r.into_iter().map(|x| x / b).collect());
    }
    SymTridiag::new(alpha, beta)
}

/// The Jacobi matrix with eigenvalues `lambda` whose eigenvectors have last
/// components `z`. This is the index reversal of [`lanczos_from_spectrum`].
pub fn jacobi_from_last_components(lambda: &[f64], z: &[f64]) -> Result<SymTridiag> {
    let t = lanczos_from_spectrum(lambda, z)?;
    let diag = t.diag().iter().rev().copied().collect();
    let sub = t.sub().iter().rev().copied().collect();
    SymTridiag::new(diag, sub)
}

/// Spectral data of `T`: ascending eigenvalues and the absolute first
/// components of the unit eigenvectors.
pub fn spectral_data(t: &SymTridiag) -> Result<(Vec<f64>, Vec<f64>)> {
    let eig = dense_eig(&SymmetricDense::from_lower(&t.to_dense()))?;
    let w = (0..t.n()).map(|k| eig.vectors[(0, k)].abs()).collect();
    Ok((eig.values, w))
}

/// Like [`spectral_data`] but returns last components.
pub fn spectral_data_last(t: &SymTridiag) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = t.n();
    let eig = dense_eig(&SymmetricDense::from_lower(&t.to_dense()))?;
    let z = (0..n).map(|k| eig.vectors[(n - 1, k)].abs()).collect();
    Ok((eig.values, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn two_by_two_by_hand() {
        let h = 0.5f64.sqrt();
        let t = lanczos_from_spectrum(&[-1.0, 1.0], &[h, h]).unwrap();
        assert_abs_diff_eq!(t.diag()[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.diag()[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.sub()[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn concentrated_weights_nearly_reduce() {
        let lambda = [1.0, 2.0, 4.0];
        let mut last = f64::INFINITY;
        for &eps in &[1e-2f64, 1e-4, 1e-6, 1e-8] {
            let rest = (eps / 2.0).sqrt();
            let w = [(1.0 - eps).sqrt(), rest, rest];
            let t = lanczos_from_spectrum(&lambda, &w).unwrap();
            assert!(t.sub()[0] < last);
            last = t.sub()[0];
        }
        assert!(last < 1e-3);
    }

    #[test]
    fn round_trip_through_oracle() {
        let lambda = [-1.0, 0.0, 0.3, 1.0];
        let w = [0.4, 0.5, 0.6, (1.0f64 - 0.16 - 0.25 - 0.36).sqrt()];
        let t = lanczos_from_spectrum(&lambda, &w).unwrap();
        let (l2, w2) = spectral_data(&t).unwrap();
        for k in 0..4 {
            assert_abs_diff_eq!(l2[k], lambda[k], epsilon = 1e-10);
            assert_abs_diff_eq!(w2[k], w[k], epsilon = 1e-9);
        }
        let r = jacobi_from_last_components(&lambda, &w).unwrap();
        let (_, z) = spectral_data_last(&r).unwrap();
        for k in 0..4 {
            assert_abs_diff_eq!(z[k], w[k], epsilon = 1e-9);
        }
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(lanczos_from_spectrum(&[1.0, 2.0], &[1.0, 0.0]).is_err());
        assert!(lanczos_from_spectrum(&[2.0, 1.0], &[0.6, 0.8]).is_err());
        assert!(lanczos_from_spectrum(&[1.0, 2.0], &[0.6, 0.6]).is_err());
    }
}
