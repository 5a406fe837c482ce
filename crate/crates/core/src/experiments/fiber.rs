//! One-step response along fiber curves `b ↦ ζ⁻¹(base, b)`.

use serde::{Deserialize, Serialize};

use crate::diagnostics::ls_slope;
use crate::error::{Error, Result};
use crate::geometry::{sample_base, tubular_inverse, SpectrumInfo};
use crate::linalg::SymTridiag;
use crate::sampling::trajectory_rng;
use crate::strategy::ShiftStrategy;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberPoint {
    pub b: f64,
    /// `|b(F_σ(T))|`.
    pub b_next: f64,
    pub ratio2: f64,
    pub ratio3: f64,
    pub ss_dist: f64,
}

/// Steps `ζ⁻¹(base, b)` once for each `b` in the grid.
pub fn fiber_response<S: ShiftStrategy + ?Sized>(
    base: &SymTridiag,
    info: &SpectrumInfo,
    component: usize,
    grid: &[f64],
    strategy: &S,
) -> Result<Vec<FiberPoint>> {
    grid.iter()
        .map(|&b| {
            let t = tubular_inverse(base, b, info, component)?;
            let next = strategy.step(&t)?.next;
            let (x, y) = (t.b().abs(), next.b().abs());
            Ok(FiberPoint {
                b: x,
                b_next: y,
                ratio2: y / (x * x),
                ratio3: y / (x * x * x),
                ss_dist: strategy.singular_support_distance(&t),
            })
        })
        .collect()
}

/// Slope of `log|b'|` against `log|b|`.
pub fn fiber_exponent(points: &[FiberPoint]) -> Option<f64> {
    let pts: Vec<&FiberPoint> = points.iter().filter(|p| p.b_next > 0.0).collect();
    let x: Vec<f64> = pts.iter().map(|p| p.b.ln()).collect();
    let y: Vec<f64> = pts.iter().map(|p| p.b_next.ln()).collect();
    ls_slope(&x, &y)
}

/// `max ratio3 / min ratio3` along one fiber.
pub fn ratio3_spread(points: &[FiberPoint]) -> f64 {
    let r: Vec<f64> = points.iter().map(|p| p.ratio3).collect();
    let hi = r.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = r.iter().cloned().fold(f64::INFINITY, f64::min);
    hi / lo
}

/// Cubic one-step fit over fibers whose bases keep away from the singular
/// support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubicFit {
    /// Largest sampled `|b'| / |b|³`.
    pub c_k: f64,
    pub slope_min: f64,
    pub slope_max: f64,
    /// Largest per-fiber `ratio3` spread.
    pub max_spread: f64,
    pub fibers: usize,
    /// Smallest `ss_dist` over all sampled points.
    pub min_ss_dist: f64,
}

/// Samples bases of every component, keeps those with base `ss_dist ≥
/// min_ss_dist`, and fits the one-step exponent along each fiber.
pub fn cubic_fit<S: ShiftStrategy + ?Sized>(
    info: &SpectrumInfo,
    strategy: &S,
    grid: &[f64],
    bases_per_component: usize,
    min_ss_dist: f64,
    seed: u64,
) -> Result<CubicFit> {
    let mut fit = CubicFit {
        c_k: 0.0,
        slope_min: f64::INFINITY,
        slope_max: f64::NEG_INFINITY,
        max_spread: 0.0,
        fibers: 0,
        min_ss_dist: f64::INFINITY,
    };
    for i in 0..info.n() {
        let mut rng = trajectory_rng(seed, i as u64);
        let mut kept = 0;
        let mut tries = 0;
        while kept < bases_per_component && tries < 50 * bases_per_component {
            tries += 1;
            let base = sample_base(&mut rng, info, i)?;
            if strategy.singular_support_distance(&base) < min_ss_dist {
                continue;
            }
            kept += 1;
            let pts = fiber_response(&base, info, i, grid, strategy)?;
            let slope = fiber_exponent(&pts)
                .ok_or_else(|| Error::InsufficientData("degenerate fiber grid".into()))?;
            fit.slope_min = fit.slope_min.min(slope);
            fit.slope_max = fit.slope_max.max(slope);
            fit.max_spread = fit.max_spread.max(ratio3_spread(&pts));
            for p in &pts {
                fit.c_k = fit.c_k.max(p.ratio3);
                fit.min_ss_dist = fit.min_ss_dist.min(p.ss_dist);
            }
            fit.fibers += 1;
        }
    }
    if fit.fibers == 0 {
        return Err(Error::InsufficientData(
            "no sampled base is far enough from the singular support".into(),
        ));
    }
    Ok(fit)
}
