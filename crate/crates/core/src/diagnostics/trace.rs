//! Iteration driver and per-step trace.

use serde::{Deserialize, Serialize};

use super::height::{height, HeightSpec};
use crate::error::{Error, Result};
use crate::geometry::{deflation_component, SpectrumInfo};
use crate::linalg::SymTridiag;
use crate::strategy::ShiftStrategy;

/// Ratios are only recorded while `|b1_k|` exceeds this.
pub const RATIO_FLOOR: f64 = 1e-150;

/// One row of a trace, describing `T_k = F_σ^k(T_0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub k: usize,
    pub b1: f64,
    /// `NaN` when `n = 2`.
    pub b2: f64,
    pub corner: f64,
    pub subcorner: f64,
    /// `σ(T_k)`.
    pub shift: f64,
    pub height: Option<f64>,
    /// `|b1_{k+1}| / b1_k²`, `NaN` on the last row or below the floor.
    pub ratio2: f64,
    /// `|b1_{k+1}| / |b1_k|³`.
    pub ratio3: f64,
    pub ss_dist: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Terminal {
    /// First `k` with `|b1_k| ≤ deflate_tol`.
    pub deflated_at: Option<usize>,
    /// Corner eigenvalue index at deflation, when a spectrum was supplied.
    pub component: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub strategy: String,
    pub steps: Vec<StepRecord>,
    pub terminal: Terminal,
    /// The last iterate.
    pub last: SymTridiag,
}

impl IterationTrace {
    pub fn b1(&self) -> Vec<f64> {
        self.steps.iter().map(|r| r.b1).collect()
    }
}

#[derive(Debug, Clone)]
pub struct IterateOptions {
    pub max_steps: usize,
    /// Defaults to `1e-14 · ‖T0‖`.
    pub deflate_tol: Option<f64>,
    pub height: Option<HeightSpec>,
    /// Spectrum used for heights and for naming the deflated component.
    pub info: Option<SpectrumInfo>,
    /// After deflation keep stepping until `|b2| ≤` this value.
    pub track_double_until: Option<f64>,
}

impl Default for IterateOptions {
    fn default() -> Self {
        Self {
            max_steps: 100,
            deflate_tol: None,
            height: None,
            info: None,
            track_double_until: None,
        }
    }
}

impl IterateOptions {
    pub fn with_max_steps(max_steps: usize) -> Self {
        Self {
            max_steps,
            ..Self::default()
        }
    }
}

fn record<S: ShiftStrategy + ?Sized>(
    k: usize,
    t: &SymTridiag,
    strategy: &S,
    opts: &IterateOptions,
) -> Result<StepRecord> {
    let h = match (&opts.height, &opts.info) {
        (Some(spec), Some(info)) => Some(height(t, spec, info)?),
        (Some(_), None) => {
            return Err(Error::InvalidInput("height needs a spectrum".into()));
        }
        _ => None,
    };
    Ok(StepRecord {
        k,
        b1: t.b().abs(),
        b2: t.b2().map_or(f64::NAN, f64::abs),
        corner: t.corner(),
        subcorner: t.subcorner(),
        shift: strategy.shift(t),
        height: h,
        ratio2: f64::NAN,
        ratio3: f64::NAN,
        ss_dist: strategy.singular_support_distance(t),
    })
}

/// Applies `F_σ` repeatedly from `t0`, recording every iterate.
pub fn iterate<S: ShiftStrategy + ?Sized>(
    t0: &SymTridiag,
    strategy: &S,
    opts: &IterateOptions,
) -> Result<IterationTrace> {
    let tol = opts.deflate_tol.unwrap_or(1e-14 * t0.norm());
    let mut t = t0.clone();
    let mut steps = vec![record(0, &t, strategy, opts)?];
    let mut terminal = Terminal::default();

    let mut k = 0;
    loop {
        if terminal.deflated_at.is_none() && t.b().abs() <= tol {
            terminal.deflated_at = Some(k);
            if let Some(info) = &opts.info {
                terminal.component = deflation_component(&t, info, tol.max(1e-8 * info.gap));
            }
        }
        let keep_going = match (terminal.deflated_at, opts.track_double_until) {
            (None, _) => true,
            (Some(_), Some(limit)) => t.b2().is_some_and(|b2| b2.abs() > limit),
            (Some(_), None) => false,
        };
        if !keep_going || k == opts.max_steps {
            break;
        }
        let next = strategy
            .step(&t)
            .map_err(|e| Error::StepFailure {
                k,
                source: Box::new(e),
            })?
            .next;
        k += 1;
        let prev = steps.last_mut().expect("trace is never empty");
        if prev.b1 > RATIO_FLOOR {
            let b = next.b().abs();
            prev.ratio2 = b / (prev.b1 * prev.b1);
            prev.ratio3 = b / (prev.b1 * prev.b1 * prev.b1);
        }
        t = next;
        steps.push(record(k, &t, strategy, opts)?);
    }

    Ok(IterationTrace {
        strategy: strategy.name(),
        steps,
        terminal,
        last: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::{ConstantShift, StrategyKind};

    #[test]
    fn diagonal_start_is_already_deflated() {
        let t = SymTridiag::diagonal(&[1.0, 2.0, 4.0]).unwrap();
        let tr = iterate(&t, &StrategyKind::Wilkinson, &IterateOptions::default()).unwrap();
        assert_eq!(tr.steps.len(), 1);
        assert_eq!(tr.terminal.deflated_at, Some(0));
    }

    #[test]
    fn eigenvalue_shift_deflates_in_one_step() {
        let t = SymTridiag::new(vec![1.0, 1.0], vec![1.0]).unwrap();
        let tr = iterate(&t, &ConstantShift(0.0), &IterateOptions::default()).unwrap();
        assert_eq!(tr.terminal.deflated_at, Some(1));
        assert!(tr.steps[0].ratio2.is_finite());
    }

    #[test]
    fn failures_carry_the_step() {
        // the first column of T - I vanishes
        let d = SymTridiag::new(vec![1.0, 3.0], vec![0.0]).unwrap();
        let s = 1.0;
        let opts = IterateOptions {
            deflate_tol: Some(-1.0),
            ..IterateOptions::with_max_steps(3)
        };
        let err = iterate(&d, &ConstantShift(s), &opts).unwrap_err();
        assert!(matches!(err, Error::StepFailure { k: 0, .. }));
    }
}
