//! Seeded random sampling of isospectral Jacobi matrices.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::Result;
use crate::linalg::{lanczos_from_spectrum, SignMatrix, SymTridiag};

/// Generator for trajectory `stream` of a run seeded with `seed`. Streams are
/// independent, so trajectories do not depend on evaluation order.
pub fn trajectory_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Point of the open simplex drawn from a symmetric Dirichlet(alpha).
pub fn dirichlet<R: Rng + ?Sized>(rng: &mut R, n: usize, alpha: f64) -> Vec<f64> {
    let gamma = Gamma::new(alpha, 1.0).expect("alpha > 0");
    loop {
        let g: Vec<f64> = (0..n).map(|_| gamma.sample(rng)).collect();
        let total: f64 = g.iter().sum();
        if total > 0.0 && g.iter().all(|&x| x > 0.0) {
            return g.into_iter().map(|x| x / total).collect();
        }
    }
}

/// Unit weight vector whose squares are Dirichlet(alpha) distributed.
pub fn unit_weights<R: Rng + ?Sized>(rng: &mut R, n: usize, alpha: f64) -> Vec<f64> {
    dirichlet(rng, n, alpha).into_iter().map(f64::sqrt).collect()
}

/// Random Jacobi matrix with spectrum `lambda`; squared first eigenvector
/// components are Dirichlet(alpha).
pub fn random_jacobi<R: Rng + ?Sized>(rng: &mut R, lambda: &[f64], alpha: f64) -> Result<SymTridiag> {
    let w = unit_weights(rng, lambda.len(), alpha);
    lanczos_from_spectrum(lambda, &w)
}

/// `n` increasing eigenvalues above `-n` with consecutive gaps in `[0.2, 2)`.
pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut x = -(n as f64);
    (0..n)
        .map(|_| {
            x += rng.random_range(0.2..2.0);
            x
        })
        .collect()
}

/// Random element of `ℰ`.
pub fn random_signs<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SignMatrix {
    SignMatrix::from_bits(n, rng.random())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let (mut r1, mut r2) = (trajectory_rng(7, 1), trajectory_rng(7, 1));
        let a: Vec<u64> = (0..4).map(|_| r1.random()).collect();
        let b: Vec<u64> = (0..4).map(|_| r2.random()).collect();
        assert_eq!(a, b);
        let x: u64 = trajectory_rng(7, 1).random();
        let y: u64 = trajectory_rng(7, 2).random();
        assert_ne!(x, y);
    }

    #[test]
    fn weights_are_unit_and_positive() {
        let mut rng = trajectory_rng(1, 0);
        for _ in 0..50 {
            let w = unit_weights(&mut rng, 5, 1.0);
            assert!(w.iter().all(|&x| x > 0.0));
            let norm: f64 = w.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-14);
        }
    }
}
