//! H_i along an in-tube Wilkinson run, and the δ_H that separates the
//! deflation set from the tube boundary.

use tridiag_shift::diagnostics::{calibrate_delta_h, height, HeightSpec};
use tridiag_shift::geometry::{sample_tube, SpectrumInfo};
use tridiag_shift::sampling::trajectory_rng;
use tridiag_shift::strategy::{ShiftStrategy, StrategyKind};

fn main() -> tridiag_shift::Result<()> {
    let info = SpectrumInfo::new(&[1.0, 2.0, 4.0])?;
    let omega = StrategyKind::Wilkinson;
    let i = 2;
    let spec = HeightSpec::with_default_weights(3, 1e-2 * info.gap * info.gap, i)?;
    let mut t = sample_tube(&mut trajectory_rng(0, 0), &info, i, 0.05, 1, &omega)?.remove(0).t;
    while t.offdiag_mass() > 1e-8 {
        println!("off-diagonal {:.3e}  H = {:.12}", t.offdiag_mass(), height(&t, &spec, &info)?);
        t = omega.step(&t)?.next;
    }

    // the separating δ_H shrinks like exp(-c (γ/ε)²) and leaves f64 by ε = 0.05
    for eps in [0.2, 0.1, 0.05] {
        match calibrate_delta_h(&info, i, eps, 50, 0) {
            Ok(c) => println!(
                "ε = {eps}: δ_H = {:.1e}  max H on |b| = ε {:.4}  min H on the base {:.4}",
                c.delta_h, c.max_boundary, c.min_base
            ),
            Err(e) => println!("ε = {eps}: {e}"),
        }
    }
    Ok(())
}
