//! Numerical search for the deflation-neighbourhood radii.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::projection::{deflation_component, tubular_coords, tubular_inverse};
use super::spectrum::SpectrumInfo;
use crate::error::{Error, Result};
use crate::linalg::SymTridiag;
use crate::sampling::{random_jacobi, trajectory_rng};
use crate::strategy::ShiftStrategy;

/// Calibrated radii, `eps_sigma ≤ eps_ap ≤ eps_inv ≤ eps_tub`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodParams {
    pub eps_tub: f64,
    pub eps_inv: f64,
    pub eps_ap: f64,
    pub eps_sigma: f64,
    /// Largest sampled `‖T - Π_i(T)‖ / |b(T)|`.
    pub c_b: f64,
    /// Axiom (II) constant used for `eps_sigma`.
    pub c_sigma: f64,
    /// Largest sampled `|b(F_σ T)| / |b(T)|²` at `eps_inv`.
    pub c_quadratic: f64,
    /// Components whose eigenvalue is a midpoint of two others; they are
    /// left out of `eps_ap`.
    pub ap_degenerate: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
}

/// Random point of `D^i_{Λ,0}`: a Jacobi leading block with the remaining
/// spectrum, then `λ_i` in the corner.
pub fn sample_base<R: Rng + ?Sized>(rng: &mut R, info: &SpectrumInfo, i: usize) -> Result<SymTridiag> {
    let rest = info.without(i);
    if rest.len() == 1 {
        return SymTridiag::new(vec![rest[0], info.lambda[i]], vec![0.0]);
    }
    let lead = random_jacobi(rng, &rest, 2.0)?;
    Ok(SymTridiag::with_corner(&lead, info.lambda[i]))
}

/// One sampled tube point and what a strategy step does to it.
#[derive(Debug, Clone)]
pub struct TubeSample {
    pub component: usize,
    pub base: SymTridiag,
    pub t: SymTridiag,
    pub b: f64,
    /// `‖T - Π_i(T)‖`.
    pub dist_to_base: f64,
    pub round_trip: f64,
    pub identified: bool,
    pub next: Option<SymTridiag>,
}

/// Samples `count` points of `D^i_{Λ,ε}` with `|b| ∈ [0.05ε, ε]`.
pub fn sample_tube<R: Rng + ?Sized, S: ShiftStrategy + ?Sized>(
    rng: &mut R,
    info: &SpectrumInfo,
    i: usize,
    eps: f64,
    count: usize,
    strategy: &S,
) -> Result<Vec<TubeSample>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let base = sample_base(rng, info, i)?;
        let mag = eps * rng.random_range(0.05..=1.0);
        let b = if rng.random_bool(0.5) { mag } else { -mag };
        let t = tubular_inverse(&base, b, info, i)?;
        let z = tubular_coords(&t, info, i)?;
        let round_trip = z.base.max_diff(&base).max((z.fiber - b).abs());
        let identified = deflation_component(&t, info, eps) == Some(i);
        let next = strategy.step(&t).ok().map(|r| r.next);
        out.push(TubeSample {
            component: i,
            dist_to_base: t.dist(&z.base),
            base,
            t,
            b,
            round_trip,
            identified,
            next,
        });
    }
    Ok(out)
}

fn tube_ok(samples: &[TubeSample]) -> bool {
    samples.iter().all(|s| s.round_trip <= 1e-8 && s.identified)
}

fn invariant(samples: &[TubeSample], info: &SpectrumInfo, eps: f64) -> bool {
    samples.iter().all(|s| match &s.next {
        Some(nx) => {
            nx.b().abs() <= 0.5 * s.b.abs()
                && deflation_component(nx, info, 0.5 * eps) == Some(s.component)
        }
        None => false,
    })
}

/// Halves `ε` from `γ/(4√2)` until every sampled tube point of every
/// component round-trips through `ζ` and is mapped by `F_σ` into the
/// half-radius tube with `|b|` at least halved.
pub fn calibrate_neighborhoods<S: ShiftStrategy + ?Sized>(
    info: &SpectrumInfo,
    strategy: &S,
    samples: usize,
    seed: u64,
) -> Result<NeighborhoodParams> {
    if samples < 100 {
        return Err(Error::InvalidInput("calibration needs at least 100 samples".into()));
    }
    let n = info.n();
    let floor = 1e-8 * info.gap;
    let mut eps = info.gap / (4.0 * std::f64::consts::SQRT_2);
    let mut eps_tub = None;
    let mut round = 0u64;

    let accepted = loop {
        if eps < floor {
            return Err(Error::CalibrationFailed(format!(
                "no radius above {floor:e} passes for strategy {}",
                strategy.name()
            )));
        }
        let mut all = Vec::new();
        let mut failed = false;
        for i in 0..n {
            let mut rng = trajectory_rng(seed, round * n as u64 + i as u64);
            match sample_tube(&mut rng, info, i, eps, samples, strategy) {
                Ok(s) => all.extend(s),
                Err(_) => {
                    failed = true;
                    break;
                }
            }
        }
        round += 1;
        if failed || !tube_ok(&all) {
            eps *= 0.5;
            continue;
        }
        eps_tub.get_or_insert(eps);
        if invariant(&all, info, eps) {
            break all;
        }
        eps *= 0.5;
    };
    let eps_inv = eps;
    let eps_tub = eps_tub.unwrap_or(eps);

    let c_b = accepted
        .iter()
        .map(|s| s.dist_to_base / s.b.abs())
        .fold(0.0, f64::max);
    let c_quadratic = accepted
        .iter()
        .filter_map(|s| s.next.as_ref().map(|nx| nx.b().abs() / (s.b * s.b)))
        .fold(0.0, f64::max);
    let observed_c = accepted
        .iter()
        .map(|s| (strategy.shift(&s.t) - info.lambda[s.component]).abs() / s.b.abs())
        .fold(0.0, f64::max);
    let c_sigma = strategy.c_sigma().unwrap_or(observed_c);

    let mut eps_ap = eps_inv;
    let mut ap_degenerate = Vec::new();
    for i in 0..n {
        let d = info.midpoint_distance(i);
        if d <= info.tol {
            ap_degenerate.push(i);
        } else {
            eps_ap = eps_ap.min(0.5 * d);
        }
    }

    Ok(NeighborhoodParams {
        eps_tub,
        eps_inv,
        eps_ap,
        eps_sigma: eps_ap / (1.0 + c_sigma),
        c_b,
        c_sigma,
        c_quadratic,
        ap_degenerate,
        samples,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::{ConstantShift, StrategyKind};

    #[test]
    fn wilkinson_on_an_ap_free_spectrum() {
        let info = SpectrumInfo::new(&[1.0, 2.0, 4.0]).unwrap();
        let p = calibrate_neighborhoods(&info, &StrategyKind::Wilkinson, 100, 3).unwrap();
        assert!(p.eps_tub < 1.0 / (2.0 * std::f64::consts::SQRT_2));
        assert!(p.eps_sigma <= p.eps_ap && p.eps_ap <= p.eps_inv && p.eps_inv <= p.eps_tub);
        assert!(p.c_b.is_finite() && p.c_b >= 1.0 - 1e-9);
    }

    #[test]
    fn constant_shift_fails() {
        let info = SpectrumInfo::new(&[1.0, 2.0, 4.0]).unwrap();
        let err = calibrate_neighborhoods(&info, &ConstantShift(3.0), 100, 3).unwrap_err();
        assert!(matches!(err, Error::CalibrationFailed(_)));
    }

    #[test]
    fn too_few_samples() {
        let info = SpectrumInfo::new(&[1.0, 2.0, 4.0]).unwrap();
        assert!(calibrate_neighborhoods(&info, &StrategyKind::Rayleigh, 10, 0).is_err());
    }
}
