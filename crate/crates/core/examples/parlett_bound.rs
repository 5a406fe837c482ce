//! |b1_k|³ against |b1_0² b2_0| / √2^(k-1) along Wilkinson runs.

use tridiag_shift::diagnostics::{iterate, parlett_check, uniform_deflation_bound, IterateOptions};
use tridiag_shift::sampling::{random_jacobi, random_spectrum, trajectory_rng};
use tridiag_shift::strategy::StrategyKind;

fn main() -> tridiag_shift::Result<()> {
    for j in 0..8 {
        let mut rng = trajectory_rng(0, j);
        let n = 3 + j as usize % 6;
        let lambda = random_spectrum(&mut rng, n);
        let t = random_jacobi(&mut rng, &lambda, 1.0)?;
        let tr = iterate(&t, &StrategyKind::Wilkinson, &IterateOptions::with_max_steps(40))?;
        let m = t.b().powi(2) * t.b2().unwrap_or(0.0).abs();
        println!(
            "n {n}: deflated at {:?}, bound {:.1}, worst slack {:.3e}",
            tr.terminal.deflated_at,
            uniform_deflation_bound(m, 1e-14 * t.norm()),
            parlett_check(&tr, &t)?
        );
    }
    Ok(())
}
