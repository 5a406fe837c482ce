//! `rate-scan`: seeded random trajectories and their convergence statistics.

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::fiber::cubic_fit;
use super::format::{g17, CsvTable};
use crate::diagnostics::{
    exception_count, iterate, parlett_check, rate_exponents_in, IterateOptions, IterationTrace,
    RateBand,
};
use super::witness::{witness_candidates, witness_spectrum, witness_start};
use crate::error::{Error, Result};
use crate::geometry::{ApClass, SpectrumInfo};
use crate::linalg::SymTridiag;
use crate::sampling::{random_jacobi, trajectory_rng};
use crate::strategy::{ShiftStrategy, StrategyKind};

pub const RATE_SCAN_HEADER: [&str; 15] = [
    "kind",
    "trajectory",
    "k",
    "b1",
    "b2",
    "corner",
    "subcorner",
    "shift",
    "height",
    "ratio2",
    "ratio3",
    "ss_dist",
    "tail_exponent",
    "exceptions",
    "deflated_at",
];

/// Lower edge of the rate band used for tail exponents, relative to `‖T0‖`.
///
/// The Givens chain keeps `|b|` relatively accurate far below `ε ‖T0‖`; the
/// edge only keeps pairs clear of underflow.
pub const TAIL_BAND_REL: f64 = 1e-140;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySummary {
    pub trajectory: usize,
    pub steps: usize,
    pub deflated_at: Option<usize>,
    pub component: Option<usize>,
    pub tail_exponent: Option<f64>,
    pub exceptions: usize,
    /// Worst Parlett slack; only for Wilkinson.
    pub parlett_slack: Option<f64>,
    pub final_b2: Option<f64>,
    pub final_subcorner: f64,
    pub error: Option<String>,
}

/// Longest run of steps with `ratio2` within a factor 2 of its first value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticEpisode {
    pub trajectory: usize,
    pub start: usize,
    pub length: usize,
    pub ratio2: f64,
    /// `ratio3` at the end of the run over `ratio3` at its start.
    pub ratio3_growth: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateScanMeta {
    pub spectrum: Vec<f64>,
    pub ap_class: ApClass,
    pub strategy: String,
    pub seed: u64,
    pub trials: usize,
    pub max_steps: usize,
    pub deflate_tol: Option<f64>,
    pub cubic_constant: f64,
    pub witness: bool,
    pub deflated: usize,
    pub failures: usize,
    pub summaries: Vec<TrajectorySummary>,
    pub best_episode: Option<QuadraticEpisode>,
}

pub struct RateScan {
    pub csv: CsvTable,
    pub meta: RateScanMeta,
    pub traces: Vec<Option<IterationTrace>>,
}

/// Longest quadratic episode of one trace.
pub fn quadratic_episode(trace: &IterationTrace, trajectory: usize) -> Option<QuadraticEpisode> {
    let r: Vec<(f64, f64)> = trace
        .steps
        .iter()
        .map(|s| (s.ratio2, s.ratio3))
        .take_while(|p| p.0.is_finite() && p.0 > 0.0)
        .collect();
    let mut best: Option<QuadraticEpisode> = None;
    for start in 0..r.len() {
        let c = r[start].0;
        let len = r[start..]
            .iter()
            .take_while(|p| p.0 >= 0.5 * c && p.0 <= 2.0 * c)
            .count();
        if best.as_ref().is_none_or(|b| len > b.length) {
            best = Some(QuadraticEpisode {
                trajectory,
                start,
                length: len,
                ratio2: c,
                ratio3_growth: r[start + len - 1].1 / r[start].1,
            });
        }
    }
    best
}

/// Fiber heights used by witness starts, cycled over trajectories.
pub const WITNESS_HEIGHTS: [f64; 3] = [0.5, 0.3, 0.1];

/// Witness start for trajectory `j`: candidate `j / 3` at height
/// `WITNESS_HEIGHTS[j % 3]`.
fn witness_initial(j: usize, candidates: &[Vec<f64>]) -> Result<SymTridiag> {
    let h = j % WITNESS_HEIGHTS.len();
    let list = &candidates[h];
    if list.is_empty() {
        return Err(Error::InsufficientData("no witness candidate at this height".into()));
    }
    witness_start(list[(j / WITNESS_HEIGHTS.len()) % list.len()], WITNESS_HEIGHTS[h])
}

pub fn cmd_rate_scan(cfg: &ExperimentConfig) -> Result<RateScan> {
    let info = SpectrumInfo::new(&cfg.spectrum)?;
    if cfg.witness {
        witness_preconditions(&info)?;
    }
    let strategy = cfg.strategy;
    let cubic_constant = match cfg.cubic_constant {
        Some(c) => c,
        None => cubic_fit(&info, &strategy, &cfg.fiber_grid, 8, info.gap / 10.0, cfg.seed)?.c_k,
    };

    let candidates = if cfg.witness {
        WITNESS_HEIGHTS
            .iter()
            .map(|&b0| witness_candidates(b0))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };

    let mut csv = CsvTable::new(&RATE_SCAN_HEADER);
    let mut summaries = Vec::with_capacity(cfg.trials);
    let mut traces = Vec::with_capacity(cfg.trials);
    let mut best: Option<QuadraticEpisode> = None;

    for j in 0..cfg.trials {
        let start = if cfg.witness {
            witness_initial(j, &candidates)
        } else {
            random_jacobi(&mut trajectory_rng(cfg.seed, j as u64), &info.lambda, 1.0)
        };
        let outcome = start.and_then(|t0| {
            let opts = IterateOptions {
                max_steps: cfg.max_steps,
                deflate_tol: cfg.deflate_tol,
                height: None,
                info: Some(info.clone()),
                track_double_until: cfg.track_double,
            };
            iterate(&t0, &strategy, &opts).map(|tr| (t0, tr))
        });
        let (t0, trace) = match outcome {
            Ok(v) => v,
            Err(e) => {
                eprintln!("trajectory {j}: {e}");
                summaries.push(TrajectorySummary {
                    trajectory: j,
                    steps: 0,
                    deflated_at: None,
                    component: None,
                    tail_exponent: None,
                    exceptions: 0,
                    parlett_slack: None,
                    final_b2: None,
                    final_subcorner: f64::NAN,
                    error: Some(e.to_string()),
                });
                traces.push(None);
                continue;
            }
        };
        let band = RateBand {
            lo: TAIL_BAND_REL * t0.norm(),
            hi: 0.1,
        };
        let summary = TrajectorySummary {
            trajectory: j,
            steps: trace.steps.len() - 1,
            deflated_at: trace.terminal.deflated_at,
            component: trace.terminal.component,
            tail_exponent: rate_exponents_in(&trace, cfg.window, band)
                .ok()
                .and_then(|r| r.tail()),
            exceptions: exception_count(&trace, cubic_constant),
            parlett_slack: (strategy == StrategyKind::Wilkinson)
                .then(|| parlett_check(&trace, &t0).ok())
                .flatten(),
            final_b2: trace.last.b2().map(f64::abs),
            final_subcorner: trace.last.subcorner(),
            error: None,
        };
        for s in &trace.steps {
            csv.push(vec![
                "step".into(),
                j.to_string(),
                s.k.to_string(),
                g17(s.b1),
                g17(s.b2),
                g17(s.corner),
                g17(s.subcorner),
                g17(s.shift),
                s.height.map(g17).unwrap_or_default(),
                g17(s.ratio2),
                g17(s.ratio3),
                g17(s.ss_dist),
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
        let last = trace.steps.last().expect("trace is never empty");
        csv.push(vec![
            "summary".into(),
            j.to_string(),
            last.k.to_string(),
            g17(last.b1),
            g17(last.b2),
            g17(last.corner),
            g17(last.subcorner),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            summary.tail_exponent.map(g17).unwrap_or_default(),
            summary.exceptions.to_string(),
            summary.deflated_at.map(|k| k.to_string()).unwrap_or_default(),
        ]);
        if cfg.witness {
            if let Some(ep) = quadratic_episode(&trace, j) {
                if best.as_ref().is_none_or(|b| ep.length > b.length) {
                    best = Some(ep);
                }
            }
        }
        summaries.push(summary);
        traces.push(Some(trace));
    }

    let meta = RateScanMeta {
        spectrum: info.lambda.clone(),
        ap_class: info.ap_class,
        strategy: strategy.name(),
        seed: cfg.seed,
        trials: cfg.trials,
        max_steps: cfg.max_steps,
        deflate_tol: cfg.deflate_tol,
        cubic_constant,
        witness: cfg.witness,
        deflated: summaries.iter().filter(|s| s.deflated_at.is_some()).count(),
        failures: summaries.iter().filter(|s| s.error.is_some()).count(),
        summaries,
        best_episode: best,
    };
    Ok(RateScan { csv, meta, traces })
}

fn witness_preconditions(info: &SpectrumInfo) -> Result<()> {
    if info.lambda != witness_spectrum().lambda {
        return Err(Error::InvalidInput(
            "witness mode needs the spectrum -1,0,1".into(),
        ));
    }
    Ok(())
}
