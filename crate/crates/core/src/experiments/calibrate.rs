//! `calibrate`: deflation-neighbourhood radii as JSON.

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::Result;
use crate::geometry::{calibrate_neighborhoods, ApClass, NeighborhoodParams, SpectrumInfo};
use crate::strategy::ShiftStrategy;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub spectrum: Vec<f64>,
    pub gap: f64,
    pub ap_class: ApClass,
    pub strategy: String,
    pub params: NeighborhoodParams,
}

pub fn cmd_calibrate(cfg: &ExperimentConfig) -> Result<CalibrationReport> {
    let info = SpectrumInfo::new(&cfg.spectrum)?;
    let params = calibrate_neighborhoods(&info, &cfg.strategy, cfg.samples, cfg.seed)?;
    Ok(CalibrationReport {
        spectrum: info.lambda.clone(),
        gap: info.gap,
        ap_class: info.ap_class,
        strategy: cfg.strategy.name(),
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn duplicate_spectrum_is_rejected() {
        let cfg = ExperimentConfig {
            spectrum: vec![1.0, 1.0, 2.0],
            ..ExperimentConfig::default()
        };
        assert!(matches!(cmd_calibrate(&cfg), Err(Error::DuplicateEigenvalue { .. })));
    }
}
