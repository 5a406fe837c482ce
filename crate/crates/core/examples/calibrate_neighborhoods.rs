//! Deflation-neighbourhood radii for a few spectra and strategies.

use tridiag_shift::geometry::{calibrate_neighborhoods, SpectrumInfo};
use tridiag_shift::strategy::StrategyKind;

fn main() -> tridiag_shift::Result<()> {
    for lambda in [vec![1.0, 2.0, 4.0], vec![-1.0, 0.0, 0.3, 1.0], vec![-1.0, 0.0, 1.0]] {
        let info = SpectrumInfo::new(&lambda)?;
        println!("{lambda:?}  γ = {}  {:?}", info.gap, info.ap_class);
        for kind in [StrategyKind::Rayleigh, StrategyKind::Wilkinson] {
            match calibrate_neighborhoods(&info, &kind, 100, 0) {
                Ok(p) => println!(
                    "  {kind:<10} tub {:.3e} inv {:.3e} ap {:.3e} σ {:.3e}  C_b {:.3}  C_quad {:.3}",
                    p.eps_tub, p.eps_inv, p.eps_ap, p.eps_sigma, p.c_b, p.c_quadratic
                ),
                Err(e) => println!("  {kind:<10} {e}"),
            }
        }
    }
    Ok(())
}
