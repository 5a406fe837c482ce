//! Seeded ensemble on an a.p.-free spectrum: deflation counts, tail
//! exponents and exceptions to the cubic bound.

use tridiag_shift::experiments::{cmd_rate_scan, ExperimentConfig};
use tridiag_shift::strategy::StrategyKind;

fn main() -> tridiag_shift::Result<()> {
    for strategy in [StrategyKind::Wilkinson, StrategyKind::Rayleigh] {
        let cfg = ExperimentConfig {
            spectrum: vec![1.0, 2.0, 4.0],
            strategy,
            trials: 200,
            ..ExperimentConfig::default()
        };
        let scan = cmd_rate_scan(&cfg)?;
        let m = &scan.meta;
        let tails: Vec<f64> = m.summaries.iter().filter_map(|s| s.tail_exponent).collect();
        let mean = tails.iter().sum::<f64>() / tails.len() as f64;
        let worst = m.summaries.iter().map(|s| s.exceptions).max().unwrap_or(0);
        println!(
            "{strategy:<10} deflated {}/{}  C = {:.3}  mean tail {mean:.3}  max exceptions {worst}",
            m.deflated, m.trials, m.cubic_constant
        );
    }
    Ok(())
}
