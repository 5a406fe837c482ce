//! Randomized invariants of the signed step and its companions.

use proptest::prelude::*;
use tridiag_shift::dynamics::{phi_star, step, step_inverse};
use tridiag_shift::linalg::{
    eigenvalues, lanczos_from_spectrum, qr_star, spectral_data, DenseMatrix, SignMatrix,
    SymTridiag,
};
use tridiag_shift::strategy::{wilkinson, ShiftStrategy, StrategyKind, C_WILKINSON};

/// Unreduced tridiagonal matrices of size `lo..=hi` with entries of order one.
fn unreduced(lo: usize, hi: usize) -> impl Strategy<Value = SymTridiag> {
    (lo..=hi).prop_flat_map(|n| {
        (
            prop::collection::vec(-4.0..4.0f64, n),
            prop::collection::vec((0.05..2.0f64, any::<bool>()), n - 1),
        )
            .prop_map(|(d, s)| {
                let sub = s.into_iter().map(|(x, neg)| if neg { -x } else { x }).collect();
                SymTridiag::new(d, sub).unwrap()
            })
    })
}

fn kind() -> impl Strategy<Value = StrategyKind> {
    prop_oneof![
        Just(StrategyKind::Rayleigh),
        Just(StrategyKind::Wilkinson),
        (1e-4..0.5f64).prop_map(|epsilon| StrategyKind::Mixed { epsilon }),
    ]
}

fn shifted_dense(t: &SymTridiag, s: f64) -> DenseMatrix {
    let mut a = t.to_dense();
    for k in 0..t.n() {
        a[(k, k)] -= s;
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn signed_factorization_reconstructs(t in unreduced(2, 8), s in -5.0..5.0f64) {
        let (q, r) = qr_star(&t, s).unwrap();
        let (qd, rd) = (q.to_dense(), r.to_dense());
        let n = t.n();
        let scale = t.norm() + s.abs();
        prop_assert!(qd.matmul(&rd).sub(&shifted_dense(&t, s)).max_abs() <= 1e-13 * scale);
        prop_assert!(qd.transpose().matmul(&qd).sub(&DenseMatrix::identity(n)).max_abs() <= 1e-14);
        prop_assert!((qd.det() - 1.0).abs() <= 1e-12);
        for i in 0..n - 1 {
            prop_assert!(r.main[i] > 0.0);
        }
    }

    #[test]
    fn fiber_ratio_law(t in unreduced(2, 8), s in -5.0..5.0f64) {
        let r = phi_star(&t, s).unwrap();
        let predicted = r.ratio_last * t.b();
        prop_assert!((r.next.b() - predicted).abs() <= 1e-12 * (1.0 + predicted.abs()));
        let lambda = eigenvalues(&t).unwrap();
        let after = eigenvalues(&r.next).unwrap();
        for (a, b) in lambda.iter().zip(&after) {
            prop_assert!((a - b).abs() <= 1e-10 * t.norm());
        }
    }

    #[test]
    fn sign_equivariance_is_exhaustive_for_small_n(t in unreduced(2, 5), kind in kind()) {
        let n = t.n();
        let ft = kind.step(&t).unwrap().next;
        for bits in 0..1u64 << n {
            let e = SignMatrix::from_bits(n, bits);
            let lhs = kind.step(&e.conjugate(&t)).unwrap().next;
            prop_assert!(lhs.max_diff(&e.conjugate(&ft)) <= 1e-12);
        }
    }

    #[test]
    fn inverse_undoes_the_step(t in unreduced(2, 8), s in -5.0..5.0f64) {
        let lambda = eigenvalues(&t).unwrap();
        prop_assume!(lambda.iter().all(|l| (l - s).abs() > 1e-3));
        let back = step_inverse(&step(&t, s).unwrap(), s).unwrap();
        prop_assert!(back.dist(&t) <= 1e-10 * t.norm());
    }

    #[test]
    fn b_after_a_step_is_flat_on_the_deflation_set(
        t in unreduced(3, 7),
        dirs in prop::collection::vec(prop::collection::vec(-1.0..1.0f64, 15), 10),
    ) {
        let n = t.n();
        let base = t.with_sub(n - 2, 0.0);
        let s0 = base.corner();
        // higher-order terms scale like 1 / (R⋆)_{n-1,n-1}
        let (_, r) = qr_star(&base, s0).unwrap();
        prop_assume!(r.main[..n - 1].iter().all(|&x| x > 0.1));
        let h = 1e-5;
        let b_after = |sign: f64, v: &[f64]| -> f64 {
            let d: Vec<f64> = (0..n).map(|k| base.diag()[k] + sign * h * v[k]).collect();
            let sub: Vec<f64> = (0..n - 1).map(|k| base.sub()[k] + sign * h * v[n + k]).collect();
            let p = SymTridiag::new(d, sub).unwrap();
            phi_star(&p, s0 + sign * h * v[2 * n - 1]).unwrap().next.b()
        };
        for v in &dirs {
            let fd = (b_after(1.0, v) - b_after(-1.0, v)) / (2.0 * h);
            prop_assert!(fd.abs() <= 1e-6, "directional derivative {fd}");
        }
    }

    #[test]
    fn lanczos_inverts_spectral_data(t in unreduced(2, 8)) {
        let jacobi = SymTridiag::new(
            t.diag().to_vec(),
            t.sub().iter().map(|x| x.abs()).collect(),
        ).unwrap();
        let (lambda, w) = spectral_data(&jacobi).unwrap();
        let gaps = lambda.windows(2).map(|p| p[1] - p[0]).fold(f64::INFINITY, f64::min);
        prop_assume!(gaps > 1e-3 && w.iter().all(|&x| x > 1e-4));
        let back = lanczos_from_spectrum(&lambda, &w).unwrap();
        prop_assert!(back.max_diff(&jacobi) <= 1e-8 * jacobi.norm());
    }

    #[test]
    fn wilkinson_is_close_to_the_spectrum(t in unreduced(2, 8)) {
        let w = wilkinson(&t);
        let dist = eigenvalues(&t)
            .unwrap()
            .iter()
            .map(|l| (w - l).abs())
            .fold(f64::INFINITY, f64::min);
        prop_assert!(dist <= C_WILKINSON * t.b().abs() + 1e-12);
        let flipped = wilkinson(&SignMatrix::e_n(t.n()).conjugate(&t));
        prop_assert_eq!(w, flipped);
    }
}
