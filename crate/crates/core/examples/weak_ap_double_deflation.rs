//! Spectrum (-1, 0, 0.3, 1): after the corner deflates, keep stepping until
//! the next subdiagonal entry dies and the subcorner settles on the
//! eigenvalue nearest the corner's.

use tridiag_shift::diagnostics::{iterate, rate_exponents_in, IterateOptions, RateBand};
use tridiag_shift::geometry::SpectrumInfo;
use tridiag_shift::sampling::{random_jacobi, trajectory_rng};
use tridiag_shift::strategy::StrategyKind;

fn main() -> tridiag_shift::Result<()> {
    let info = SpectrumInfo::new(&[-1.0, 0.0, 0.3, 1.0])?;
    for j in 0..6 {
        let t0 = random_jacobi(&mut trajectory_rng(0, j), &info.lambda, 1.0)?;
        let opts = IterateOptions {
            info: Some(info.clone()),
            track_double_until: Some(1e-8),
            ..IterateOptions::with_max_steps(100)
        };
        let tr = iterate(&t0, &StrategyKind::Wilkinson, &opts)?;
        let i = tr.terminal.component.expect("deflated");
        let c = info.nearest[i].expect("weak a.p. has unique neighbours");
        let tail = rate_exponents_in(&tr, 4, RateBand { lo: 1e-140, hi: 0.1 })?.tail();
        println!(
            "run {j}: corner -> λ = {:>4}, steps {:>2}, |b2| {:.1e}, subcorner - λ_c {:+.1e}, tail {:.3}",
            info.lambda[i],
            tr.steps.len() - 1,
            tr.last.b2().unwrap_or(0.0).abs(),
            tr.last.subcorner() - info.lambda[c],
            tail.unwrap_or(f64::NAN),
        );
    }
    Ok(())
}
