//! Convergence-rate estimates, exception counts and the Parlett bound.

use serde::{Deserialize, Serialize};

use super::trace::IterationTrace;
use crate::error::{Error, Result};
use crate::linalg::SymTridiag;

/// Pairs `(b_k, b_{k+1})` are usable when both lie strictly inside this band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateBand {
    pub lo: f64,
    pub hi: f64,
}

impl Default for RateBand {
    fn default() -> Self {
        Self { lo: 1e-140, hi: 0.1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    /// `(k, log|b_{k+1}| / log|b_k|)` for each usable pair.
    pub pointwise: Vec<(usize, f64)>,
    /// Least-squares slope of `log|b_{k+1}|` against `log|b_k|` over the
    /// trailing `window` usable pairs; `None` with fewer than two pairs.
    pub slope: Option<f64>,
}

impl RateEstimate {
    /// The slope when available, otherwise the last pointwise exponent.
    pub fn tail(&self) -> Option<f64> {
        self.slope.or_else(|| self.pointwise.last().map(|p| p.1))
    }
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Rate exponents of a magnitude sequence `b_0, b_1, …`.
pub fn rate_exponents_of(b: &[f64], window: usize, band: RateBand) -> Result<RateEstimate> {
    if b.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 iterates, got {}",
            b.len()
        )));
    }
    let inside = |x: f64| x > band.lo && x < band.hi;
    let pairs: Vec<(usize, f64, f64)> = b
        .windows(2)
        .enumerate()
        .filter(|(_, p)| inside(p[0].abs()) && inside(p[1].abs()))
        .map(|(k, p)| (k, p[0].abs().ln(), p[1].abs().ln()))
        .collect();
    if pairs.is_empty() {
        return Err(Error::InsufficientData(
            "no consecutive iterates inside the rate band".into(),
        ));
    }
    let pointwise = pairs.iter().map(|&(k, x, y)| (k, y / x)).collect();
    let tail = &pairs[pairs.len().saturating_sub(window.max(2))..];
    let xs: Vec<f64> = tail.iter().map(|p| p.1).collect();
    let ys: Vec<f64> = tail.iter().map(|p| p.2).collect();
    Ok(RateEstimate {
        pointwise,
        slope: ls_slope(&xs, &ys),
    })
}

pub fn rate_exponents(trace: &IterationTrace, window: usize) -> Result<RateEstimate> {
    rate_exponents_of(&trace.b1(), window, RateBand::default())
}

pub fn rate_exponents_in(
    trace: &IterationTrace,
    window: usize,
    band: RateBand,
) -> Result<RateEstimate> {
    rate_exponents_of(&trace.b1(), window, band)
}

/// Number of `k` with `|b_{k+1}| > C |b_k|³`.
pub fn exception_count_of(b: &[f64], c: f64) -> usize {
    b.windows(2)
        .filter(|p| p[1].abs() > c * p[0].abs().powi(3))
        .count()
}

pub fn exception_count(trace: &IterationTrace, c: f64) -> usize {
    exception_count_of(&trace.b1(), c)
}

/// `max_k (|b1_k|³ - |b1_0² b2_0| / √2^{k-1})` over `k ≥ 1`.
pub fn parlett_check(trace: &IterationTrace, t0: &SymTridiag) -> Result<f64> {
    if trace.strategy != "wilkinson" {
        return Err(Error::WrongStrategy(trace.strategy.clone()));
    }
    let b2_0 = t0.b2().unwrap_or(0.0).abs();
    let m = t0.b() * t0.b() * b2_0;
    Ok(trace
        .steps
        .iter()
        .skip(1)
        .map(|r| r.b1.powi(3) - m / std::f64::consts::SQRT_2.powi(r.k as i32 - 1))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Upper bound on the first `k` with `|b1_k| ≤ ε` implied by the Parlett
/// bound: `1 + 2 log2(M / ε³)`, `M = |b1_0² b2_0|`.
pub fn uniform_deflation_bound(m: f64, eps: f64) -> f64 {
    (1.0 + 2.0 * (m / eps.powi(3)).log2()).max(1.0)
}
