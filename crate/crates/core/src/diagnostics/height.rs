//! Height functions `H_i(T) = trace(W η_i(T))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{sample_base, tubular_inverse, SpectrumInfo};
use crate::linalg::{matrix_function, SymTridiag};
use crate::sampling::trajectory_rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightSpec {
    /// Strictly decreasing diagonal of `W`.
    pub weights: Vec<f64>,
    pub delta_h: f64,
    pub component: usize,
}

impl HeightSpec {
    pub fn new(weights: Vec<f64>, delta_h: f64, component: usize) -> Result<Self> {
        if weights.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(Error::InvalidInput("weights must strictly decrease".into()));
        }
        if !(delta_h > 0.0) {
            return Err(Error::InvalidInput("delta_h must be positive".into()));
        }
        Ok(Self {
            weights,
            delta_h,
            component,
        })
    }

    /// Weights `n, n-1, …, 1`.
    pub fn with_default_weights(n: usize, delta_h: f64, component: usize) -> Result<Self> {
        Self::new((0..n).map(|j| (n - j) as f64).collect(), delta_h, component)
    }

    /// `η_i(x) = log((x - λ_i)² + δ_H)`.
    pub fn eta(&self, x: f64, lambda_i: f64) -> f64 {
        ((x - lambda_i).powi(2) + self.delta_h).ln()
    }
}

pub fn height(t: &SymTridiag, spec: &HeightSpec, info: &SpectrumInfo) -> Result<f64> {
    if spec.weights.len() != t.n() || info.n() != t.n() || spec.component >= t.n() {
        return Err(Error::InvalidInput("height spec does not match the matrix".into()));
    }
    let li = info.lambda[spec.component];
    let values: Vec<f64> = info.lambda.iter().map(|&x| spec.eta(x, li)).collect();
    let f = matrix_function(t, &values)?;
    let f = f.as_dense();
    Ok((0..t.n()).map(|j| spec.weights[j] * f[(j, j)]).sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightCalibration {
    pub delta_h: f64,
    /// Largest sampled height on the shell `|b| = eps`.
    pub max_boundary: f64,
    /// Smallest sampled height on the deflation set.
    pub min_base: f64,
}

/// Picks the largest `δ_H = 10^{-2m}·γ²` for which every sampled point with
/// `|b| = eps` sits strictly below every sampled point of the deflation set.
///
/// The sweep starts at `1e-2, 1e-4, 1e-6` and keeps going down to `1e-300`:
/// the needed depth grows like `exp(c (γ/eps)²)`.
pub fn calibrate_delta_h(
    info: &SpectrumInfo,
    component: usize,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<HeightCalibration> {
    let n = info.n();
    let mut rng = trajectory_rng(seed, component as u64);
    let mut bases = Vec::with_capacity(samples);
    let mut shell = Vec::with_capacity(samples);
    for k in 0..samples {
        let base = sample_base(&mut rng, info, component)?;
        let b = if k % 2 == 0 { eps } else { -eps };
        shell.push(tubular_inverse(&base, b, info, component)?);
        bases.push(base);
    }
    let mut last = None;
    for m in 1..=150 {
        let factor = 10f64.powi(-2 * m);
        let spec = HeightSpec::with_default_weights(n, factor * info.gap * info.gap, component)?;
        let mut max_boundary = f64::NEG_INFINITY;
        for t in &shell {
            max_boundary = max_boundary.max(height(t, &spec, info)?);
        }
        let mut min_base = f64::INFINITY;
        for t in &bases {
            min_base = min_base.min(height(t, &spec, info)?);
        }
        let cal = HeightCalibration {
            delta_h: spec.delta_h,
            max_boundary,
            min_base,
        };
        if max_boundary < min_base {
            return Ok(cal);
        }
        last = Some(cal);
    }
    let cal = last.expect("sweep is non-empty");
    Err(Error::CalibrationFailed(format!(
        "no delta_h separates the shell (max {}) from the deflation set (min {})",
        cal.max_boundary, cal.min_base
    )))
}
