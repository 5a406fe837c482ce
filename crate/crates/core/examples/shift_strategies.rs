//! Rayleigh, Wilkinson and mixed shifts on the same start, with the axiom
//! checks for each.

use tridiag_shift::diagnostics::{iterate, IterateOptions};
use tridiag_shift::linalg::eigenvalues;
use tridiag_shift::strategy::{axiom_check, ShiftStrategy, StrategyKind};
use tridiag_shift::SymTridiag;

fn main() -> tridiag_shift::Result<()> {
    let t = SymTridiag::new(vec![1.0, 3.0], vec![1.0])?;
    let lambda = eigenvalues(&t)?;
    for kind in [
        StrategyKind::Rayleigh,
        StrategyKind::Wilkinson,
        StrategyKind::Mixed { epsilon: 0.5 },
    ] {
        let a = axiom_check(&t, &kind, &lambda);
        println!(
            "{kind:<12} shift {:.10}  |σ(E_n T E_n) - σ(T)| {:.1e}  dist/|b| {:.4}",
            kind.shift(&t),
            a.axiom1_residual,
            a.observed_constant
        );
    }

    let t = SymTridiag::new(vec![0.0, 1.0, 2.0, 3.0], vec![1.0, 1.0, 1.0])?;
    println!();
    for kind in [StrategyKind::Rayleigh, StrategyKind::Wilkinson] {
        let tr = iterate(&t, &kind, &IterateOptions::with_max_steps(30))?;
        let b: Vec<String> = tr.steps.iter().map(|s| format!("{:.1e}", s.b1)).collect();
        println!("{kind:<10} |b_k|: {}", b.join(" "));
    }
    Ok(())
}
