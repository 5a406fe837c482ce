//! Strictly quadratic orbits for the strong a.p. spectrum `(-1, 0, 1)`.
//!
//! Starts are `ζ⁻¹(B(φ), b0)` over the bases
//! `B(φ) = [[-sin 2φ, cos 2φ], [cos 2φ, sin 2φ]] ⊕ [0]`, which pass through
//! `[[0, 1], [1, 0]] ⊕ [0]` at `φ = 0`. Along an orbit the sign of
//! `T_{n-1,n-1} - T_{n,n}` flips wherever the Wilkinson tie is crossed, so the
//! sign sequences of nearby starts split the `φ` axis into cells. Bisecting
//! toward the deepest split converges to a start whose orbit keeps
//! `|T_{n-1,n-1} - T_{n,n}| ~ |b|` and converges strictly quadratically.

use super::rate_scan::quadratic_episode;
use crate::diagnostics::{iterate, IterateOptions};
use crate::error::{Error, Result};
use crate::geometry::{tubular_inverse, SpectrumInfo};
use crate::linalg::SymTridiag;
use crate::strategy::StrategyKind;

/// Steps followed when comparing sign sequences.
const HORIZON: usize = 8;

pub fn witness_spectrum() -> SpectrumInfo {
    SpectrumInfo::new(&[-1.0, 0.0, 1.0]).expect("simple spectrum")
}

/// `B(φ)`; `B(0) = [[0, 1], [1, 0]] ⊕ [0]`.
pub fn rotated_witness_base(phi: f64) -> SymTridiag {
    let (s, c) = (2.0 * phi).sin_cos();
    let lead = SymTridiag::new(vec![-s, s], vec![c]).expect("finite entries");
    SymTridiag::with_corner(&lead, 0.0)
}

pub fn witness_start(phi: f64, b0: f64) -> Result<SymTridiag> {
    tubular_inverse(&rotated_witness_base(phi), b0, &witness_spectrum(), 1)
}

fn sign_sequence(phi: f64, b0: f64) -> Result<Vec<bool>> {
    let t0 = witness_start(phi, b0)?;
    let opts = IterateOptions {
        deflate_tol: Some(1e-250),
        ..IterateOptions::with_max_steps(HORIZON)
    };
    let tr = iterate(&t0, &StrategyKind::Wilkinson, &opts)?;
    Ok(tr.steps.iter().map(|s| s.subcorner > s.corner).collect())
}

fn first_difference(x: &[bool], y: &[bool]) -> usize {
    x.iter().zip(y).position(|(a, b)| a != b).unwrap_or(usize::MAX)
}

/// Adjacent pairs of a uniform scan of `(lo, hi)` whose sign sequences differ.
pub fn witness_brackets(b0: f64, lo: f64, hi: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    let phis: Vec<f64> = (0..=points)
        .map(|j| lo + (hi - lo) * j as f64 / points as f64)
        .collect();
    let seqs = phis
        .iter()
        .map(|&p| sign_sequence(p, b0))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..points)
        .filter(|&j| seqs[j] != seqs[j + 1])
        .map(|j| (phis[j], phis[j + 1]))
        .collect())
}

/// Bisects `(a, c)` toward the deepest sign split and returns the angle.
pub fn shoot(b0: f64, bracket: (f64, f64)) -> Result<f64> {
    let (mut a, mut c) = bracket;
    let (mut sa, mut sc) = (sign_sequence(a, b0)?, sign_sequence(c, b0)?);
    if sa == sc {
        return Err(Error::InvalidInput("bracket ends have equal sign sequences".into()));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + c);
        if m == a || m == c {
            break;
        }
        let sm = sign_sequence(m, b0)?;
        let (ka, kc) = (first_difference(&sm, &sa), first_difference(&sm, &sc));
        if ka == usize::MAX || (kc != usize::MAX && ka > kc) {
            a = m;
            sa = sm;
        } else {
            c = m;
            sc = sm;
        }
    }
    Ok(a)
}

/// Length of the longest quadratic episode of the orbit from `φ`, with the
/// `ratio3` growth as tie-breaker.
pub fn episode_score(phi: f64, b0: f64) -> Result<(usize, f64)> {
    let t0 = witness_start(phi, b0)?;
    let tr = iterate(&t0, &StrategyKind::Wilkinson, &IterateOptions::with_max_steps(12))?;
    Ok(quadratic_episode(&tr, 0).map_or((0, 0.0), |e| (e.length, e.ratio3_growth)))
}

fn better(x: (usize, f64), y: (usize, f64)) -> bool {
    x.0 > y.0 || (x.0 == y.0 && x.1 > y.1)
}

/// Shoots from `bracket`, then rescans shrinking windows around the best
/// angle, scoring both the scan points and the angles shot from their splits.
pub fn shoot_refined(b0: f64, bracket: (f64, f64)) -> Result<(f64, (usize, f64))> {
    let mut best = shoot(b0, bracket)?;
    let mut score = episode_score(best, b0)?;
    let mut radius = 0.5 * (bracket.1 - bracket.0).abs();
    for _ in 0..6 {
        radius *= 0.01;
        let center = best;
        let points = 32;
        let phis: Vec<f64> = (0..=points)
            .map(|j| center - radius + 2.0 * radius * j as f64 / points as f64)
            .collect();
        let mut cands = phis.clone();
        for br in witness_brackets(b0, phis[0], phis[points], points)? {
            cands.push(shoot(b0, br)?);
        }
        for phi in cands {
            let sc = episode_score(phi, b0)?;
            if better(sc, score) {
                best = phi;
                score = sc;
            }
        }
    }
    Ok((best, score))
}

/// Refined shots from every split of a 64-point scan of `(0.01, 0.78)`, best
/// first.
pub fn witness_candidates(b0: f64) -> Result<Vec<f64>> {
    let mut shots = witness_brackets(b0, 0.01, 0.78, 64)?
        .into_iter()
        .map(|br| shoot_refined(b0, br))
        .collect::<Result<Vec<_>>>()?;
    shots.sort_by(|x, y| y.1 .0.cmp(&x.1 .0).then(y.1 .1.total_cmp(&x.1 .1)));
    Ok(shots.into_iter().map(|s| s.0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shot_orbit_is_strictly_quadratic() {
        let phi = witness_candidates(0.5).unwrap()[0];
        let t0 = witness_start(phi, 0.5).unwrap();
        let tr = iterate(&t0, &StrategyKind::Wilkinson, &IterateOptions::with_max_steps(10)).unwrap();
        let ep = quadratic_episode(&tr, 0).unwrap();
        assert!(ep.length >= 4, "{ep:?}");
        assert!(ep.ratio3_growth > 10.0, "{ep:?}");
        let r2 = tr.steps[ep.start + ep.length - 2].ratio2;
        assert!((r2 * 3f64.sqrt() - 1.0).abs() < 0.01, "{r2}");
    }
}
