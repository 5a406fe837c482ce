//! Experiment configuration: flat `key = value` files overridden by flags.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::format::parse_reals;
use crate::error::{Error, Result};
use crate::strategy::StrategyKind;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub spectrum: Vec<f64>,
    #[serde(with = "strategy_name")]
    pub strategy: StrategyKind,
    pub seed: u64,
    pub trials: usize,
    pub max_steps: usize,
    /// `None` means `1e-14 · ‖T0‖`.
    pub deflate_tol: Option<f64>,
    pub output: Option<PathBuf>,
    /// Fiber values for witness scans.
    pub fiber_grid: Vec<f64>,
    /// Barycentric subdivisions per side for the hexagon sampler.
    pub hexagon_grid: usize,
    /// Samples per component for calibration.
    pub samples: usize,
    /// Rate-estimation window.
    pub window: usize,
    /// Keep iterating after deflation until `|b2|` drops below this.
    pub track_double: Option<f64>,
    /// `C` in the exception count; fitted from fibers when unset.
    pub cubic_constant: Option<f64>,
    /// Rate-scan starts on fibers near the strong a.p. witness base.
    pub witness: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            spectrum: vec![1.0, 2.0, 4.0],
            strategy: StrategyKind::Wilkinson,
            seed: 0,
            trials: 20,
            max_steps: 40,
            deflate_tol: None,
            output: None,
            fiber_grid: vec![1e-2, 1e-3, 1e-4, 1e-5],
            hexagon_grid: 12,
            samples: 100,
            window: 4,
            track_double: None,
            cubic_constant: None,
            witness: false,
        }
    }
}

mod strategy_name {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::strategy::StrategyKind;

    pub fn serialize<S: Serializer>(k: &StrategyKind, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&k.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<StrategyKind, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!("config line {}: expected key=value", lineno + 1))
        })?;
        map.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(map)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Parse(format!("config key `{key}`: bad value `{v}`")))
}

impl ExperimentConfig {
    /// Applies one setting by key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "spectrum" => self.spectrum = parse_reals(value)?,
            "strategy" => self.strategy = value.parse()?,
            "seed" => self.seed = parse_num(key, value)?,
            "trials" => self.trials = parse_num(key, value)?,
            "max_steps" => self.max_steps = parse_num(key, value)?,
            "deflate_tol" => self.deflate_tol = Some(parse_num(key, value)?),
            "out" | "output" => self.output = Some(PathBuf::from(value)),
            "fiber_grid" => self.fiber_grid = parse_reals(value)?,
            "hexagon_grid" => self.hexagon_grid = parse_num(key, value)?,
            "samples" => self.samples = parse_num(key, value)?,
            "window" => self.window = parse_num(key, value)?,
            "track_double" => self.track_double = Some(parse_num(key, value)?),
            "cubic_constant" => self.cubic_constant = Some(parse_num(key, value)?),
            "witness" => self.witness = parse_num(key, value)?,
            other => return Err(Error::Parse(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (k, v) in parse_key_values(text)? {
            cfg.set(&k, &v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.deflate_tol.is_some_and(|t| !(t > 0.0)) {
            return Err(Error::Parse("deflate_tol must be positive".into()));
        }
        if self.track_double.is_some_and(|t| !(t > 0.0)) {
            return Err(Error::Parse("track_double must be positive".into()));
        }
        if self.fiber_grid.iter().any(|b| !(b.abs() > 0.0)) {
            return Err(Error::Parse("fiber grid values must be nonzero".into()));
        }
        if self.cubic_constant.is_some_and(|c| !(c > 0.0)) {
            return Err(Error::Parse("cubic_constant must be positive".into()));
        }
        if self.hexagon_grid < 3 {
            return Err(Error::Parse("hexagon_grid must be at least 3".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_override() {
        let text = "# scan\nspectrum = -1, 0, 0.3, 1\nstrategy=mixed:1e-3\nmax-steps = 200\n";
        let mut cfg = ExperimentConfig::from_key_values(text).unwrap();
        assert_eq!(cfg.spectrum, vec![-1.0, 0.0, 0.3, 1.0]);
        assert_eq!(cfg.strategy, StrategyKind::Mixed { epsilon: 1e-3 });
        assert_eq!(cfg.max_steps, 200);
        cfg.set("strategy", "rayleigh").unwrap();
        assert_eq!(cfg.strategy, StrategyKind::Rayleigh);
    }

    #[test]
    fn bad_lines() {
        assert!(ExperimentConfig::from_key_values("spectrum").is_err());
        assert!(ExperimentConfig::from_key_values("colour = red").is_err());
        assert!(ExperimentConfig::from_key_values("deflate_tol = -1").is_err());
    }
}
