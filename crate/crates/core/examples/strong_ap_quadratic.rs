//! Spectrum (-1, 0, 1): the fiber through [[0,1],[1,0]] ⊕ [0] has a
//! quadratic one-step response, and shooting on the start angle finds
//! orbits that stay quadratic for several steps.

use tridiag_shift::diagnostics::{iterate, IterateOptions};
use tridiag_shift::experiments::{
    fiber_exponent, fiber_response, quadratic_episode, rotated_witness_base, witness_candidates,
    witness_start,
};
use tridiag_shift::geometry::SpectrumInfo;
use tridiag_shift::strategy::StrategyKind;

fn main() -> tridiag_shift::Result<()> {
    let info = SpectrumInfo::new(&[-1.0, 0.0, 1.0])?;
    let omega = StrategyKind::Wilkinson;
    let pts = fiber_response(&rotated_witness_base(0.0), &info, 1, &[1e-2, 1e-3, 1e-4, 1e-5], &omega)?;
    for p in &pts {
        println!("b {:.0e}  b' {:.3e}  b'/b² {:.4}  b'/b³ {:.3e}", p.b, p.b_next, p.ratio2, p.ratio3);
    }
    println!("one-step exponent {:.4}", fiber_exponent(&pts).unwrap_or(f64::NAN));

    let b0 = 0.5;
    let phi = witness_candidates(b0)?[0];
    let tr = iterate(&witness_start(phi, b0)?, &omega, &IterateOptions::with_max_steps(10))?;
    println!("\nshot angle φ = {phi:.12}");
    for s in &tr.steps {
        println!("k {:>2}  |b| {:.3e}  b'/b² {:.5}  T22 - T33 {:+.3e}", s.k, s.b1, s.ratio2, s.subcorner - s.corner);
    }
    if let Some(ep) = quadratic_episode(&tr, 0) {
        println!("quadratic for {} steps, b'/b³ grows {:.2e}x", ep.length, ep.ratio3_growth);
    }
    Ok(())
}
