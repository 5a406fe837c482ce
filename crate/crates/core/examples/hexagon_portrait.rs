//! The n = 3 phase portrait for two spectra; writes CSVs to the temp dir.

use tridiag_shift::experiments::{cmd_hexagon, ExperimentConfig};

fn main() -> tridiag_shift::Result<()> {
    for spectrum in [vec![1.0, 2.0, 4.0], vec![-1.0, 0.0, 1.0]] {
        let h = cmd_hexagon(&ExperimentConfig {
            spectrum: spectrum.clone(),
            ..ExperimentConfig::default()
        })?;
        let s = &h.summary;
        println!("{spectrum:?}: {} points", h.csv.rows());
        for e in &s.edges {
            println!(
                "  edge {} {} split {:>3}  ends {:?}  motion {:.2e}  escape {:.1e}",
                e.id,
                if e.deflation { "b1=0" } else { "b2=0" },
                e.split,
                e.ends,
                e.max_motion,
                e.max_escape
            );
        }
        println!(
            "  cycle {:?} alternating {}  bottom edge {} fixed {}",
            s.cycle, s.alternating, s.bottom_edge, s.bottom_edge_fixed
        );
        let path = std::env::temp_dir().join(format!("hexagon_{}.csv", spectrum[0]));
        std::fs::write(&path, h.csv.as_str()).map_err(tridiag_shift::Error::from)?;
        println!("  wrote {}", path.display());
    }
    Ok(())
}
