//! `verify`: the property suites behind the library's guarantees.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagnostics::{height, iterate, parlett_check, HeightSpec, IterateOptions};
use crate::dynamics::{phi_star_variant, step, step_inverse, StepResult, StepVariant};
use crate::error::Result;
use crate::geometry::{sample_tube, SpectrumInfo};
use crate::linalg::{eigenvalues, SignMatrix, SymTridiag};
use crate::sampling::{random_jacobi, random_signs, random_spectrum, trajectory_rng};
use crate::strategy::{axiom_check, ShiftStrategy, StrategyKind};

pub const SUITES: [&str; 6] = [
    "isospectrality",
    "equivariance",
    "commutation",
    "parlett",
    "axioms",
    "height",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    /// Replaces every suite's tolerance.
    pub tolerance: Option<f64>,
    pub inject_bug: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 100,
            tolerance: None,
            inject_bug: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    /// Largest scaled residual seen.
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub options: VerifyOptions,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
    pub failing: Vec<String>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.suites {
            s.push_str(&format!(
                "{:<15} {}  worst {:.3e}  tol {:.1e}  ({} checks{})\n",
                r.name,
                if r.passed { "PASS" } else { "FAIL" },
                r.worst,
                r.tolerance,
                r.checks,
                if r.detail.is_empty() {
                    String::new()
                } else {
                    format!(", {}", r.detail)
                }
            ));
        }
        if self.passed {
            s.push_str("all suites passed\n");
        } else {
            s.push_str(&format!("failing suites: {}\n", self.failing.join(", ")));
        }
        s
    }
}

/// A strategy whose step can carry an injected defect.
#[derive(Debug, Clone, Copy)]
pub struct WithVariant {
    pub kind: StrategyKind,
    pub variant: StepVariant,
}

impl ShiftStrategy for WithVariant {
    fn shift(&self, t: &SymTridiag) -> f64 {
        self.kind.shift(t)
    }

    fn c_sigma(&self) -> Option<f64> {
        self.kind.c_sigma()
    }

    fn singular_support_distance(&self, t: &SymTridiag) -> f64 {
        self.kind.singular_support_distance(t)
    }

    fn name(&self) -> String {
        self.kind.name()
    }

    fn step(&self, t: &SymTridiag) -> Result<StepResult> {
        phi_star_variant(t, self.shift(t), self.variant)
    }
}

struct Acc {
    worst: f64,
    checks: usize,
    errors: usize,
}

impl Acc {
    fn new() -> Self {
        Self {
            worst: 0.0,
            checks: 0,
            errors: 0,
        }
    }

    fn see(&mut self, x: f64) {
        self.checks += 1;
        // NaN counts as a failure
        self.worst = if x.is_nan() { f64::INFINITY } else { self.worst.max(x) };
    }

    fn finish(self, name: &str, tol: f64, extra: String) -> SuiteResult {
        let mut detail = extra;
        if self.errors > 0 {
            if !detail.is_empty() {
                detail.push_str(", ");
            }
            detail.push_str(&format!("{} numerical errors", self.errors));
        }
        SuiteResult {
            name: name.into(),
            passed: self.errors == 0 && self.worst <= tol,
            checks: self.checks,
            worst: self.worst,
            tolerance: tol,
            detail,
        }
    }
}

fn random_matrix<R: Rng>(rng: &mut R, n_lo: usize, n_hi: usize) -> Result<SymTridiag> {
    let n = rng.random_range(n_lo..=n_hi);
    let lambda = random_spectrum(rng, n);
    let t = random_jacobi(rng, &lambda, 1.0)?;
    Ok(random_signs(rng, n).conjugate(&t))
}

fn strategy(opts: &VerifyOptions, kind: StrategyKind) -> WithVariant {
    WithVariant {
        kind,
        variant: if opts.inject_bug {
            StepVariant::AbsLastSine
        } else {
            StepVariant::Correct
        },
    }
}

const KINDS: [StrategyKind; 3] = [
    StrategyKind::Rayleigh,
    StrategyKind::Wilkinson,
    StrategyKind::Mixed { epsilon: 1e-3 },
];

fn isospectrality(opts: &VerifyOptions) -> SuiteResult {
    let tol = opts.tolerance.unwrap_or(1e-10);
    let mut acc = Acc::new();
    for j in 0..opts.samples {
        let mut rng = trajectory_rng(opts.seed, j as u64);
        let mut run = || -> Result<f64> {
            let t = random_matrix(&mut rng, 2, 8)?;
            let next = strategy(opts, KINDS[j % 3]).step(&t)?.next;
            let (a, b) = (eigenvalues(&t)?, eigenvalues(&next)?);
            let drift = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            Ok(drift / t.norm())
        };
        match run() {
            Ok(x) => acc.see(x),
            Err(_) => acc.errors += 1,
        }
    }
    acc.finish("isospectrality", tol, "drift / ‖T‖".into())
}

fn equivariance(opts: &VerifyOptions) -> SuiteResult {
    let tol = opts.tolerance.unwrap_or(1e-12);
    let mut acc = Acc::new();
    for j in 0..opts.samples {
        let mut rng = trajectory_rng(opts.seed, 1 << 32 | j as u64);
        let t = match random_matrix(&mut rng, 2, 6) {
            Ok(t) => t,
            Err(_) => {
                acc.errors += 1;
                continue;
            }
        };
        let n = t.n();
        let signs: Vec<SignMatrix> = if n <= 5 {
            (0..1u64 << n).map(|bits| SignMatrix::from_bits(n, bits)).collect()
        } else {
            (0..16).map(|_| random_signs(&mut rng, n)).collect()
        };
        for kind in KINDS {
            let f = strategy(opts, kind);
            let Ok(ft) = f.step(&t) else {
                acc.errors += 1;
                continue;
            };
            for e in &signs {
                match f.step(&e.conjugate(&t)) {
                    Ok(r) => acc.see(r.next.max_diff(&e.conjugate(&ft.next))),
                    Err(_) => acc.errors += 1,
                }
            }
        }
    }
    acc.finish("equivariance", tol, String::new())
}

fn commutation(opts: &VerifyOptions) -> SuiteResult {
    let tol_c = opts.tolerance.unwrap_or(1e-9);
    let tol_i = opts.tolerance.unwrap_or(1e-10);
    let mut comm = Acc::new();
    let mut inv = Acc::new();
    for j in 0..opts.samples {
        let mut rng = trajectory_rng(opts.seed, 2 << 32 | j as u64);
        let Ok(t) = random_matrix(&mut rng, 2, 8) else {
            comm.errors += 1;
            continue;
        };
        let lambda = eigenvalues(&t).unwrap_or_default();
        // shifts kept away from the spectrum
        let mut shift = || loop {
            let s = rng.random_range(lambda[0] - 1.0..lambda[lambda.len() - 1] + 1.0);
            if lambda.iter().all(|l| (l - s).abs() > 1e-2) {
                return s;
            }
        };
        let (s0, s1) = (shift(), shift());
        let norm = t.norm();
        let a = step(&t, s1).and_then(|x| step(&x, s0));
        let b = step(&t, s0).and_then(|x| step(&x, s1));
        match (a, b) {
            (Ok(a), Ok(b)) => comm.see(a.dist(&b) / norm),
            _ => comm.errors += 1,
        }
        match step(&t, s0).and_then(|x| step_inverse(&x, s0)) {
            Ok(back) => inv.see(back.dist(&t) / norm),
            Err(_) => inv.errors += 1,
        }
    }
    let inv_worst = inv.worst;
    let inv_ok = inv.errors == 0 && inv.worst <= tol_i;
    let mut r = comm.finish(
        "commutation",
        tol_c,
        format!("inverse worst {inv_worst:.3e} vs {tol_i:.1e}"),
    );
    r.passed &= inv_ok;
    r.checks += inv.checks;
    r
}

fn parlett(opts: &VerifyOptions) -> SuiteResult {
    let tol = opts.tolerance.unwrap_or(1e-12);
    let mut acc = Acc::new();
    acc.worst = f64::NEG_INFINITY;
    let omega = strategy(opts, StrategyKind::Wilkinson);
    for j in 0..opts.samples {
        let mut rng = trajectory_rng(opts.seed, 3 << 32 | j as u64);
        let mut run = || -> Result<f64> {
            let t = random_matrix(&mut rng, 3, 8)?;
            let tr = iterate(&t, &omega, &IterateOptions::with_max_steps(40))?;
            parlett_check(&tr, &t)
        };
        match run() {
            Ok(x) => acc.see(x),
            Err(_) => acc.errors += 1,
        }
    }
    acc.finish("parlett", tol, "max slack".into())
}

fn axioms(opts: &VerifyOptions) -> SuiteResult {
    let tol = opts.tolerance.unwrap_or(1e-12);
    let mut acc = Acc::new();
    for j in 0..opts.samples {
        let mut rng = trajectory_rng(opts.seed, 4 << 32 | j as u64);
        let Ok(t) = random_matrix(&mut rng, 2, 8) else {
            acc.errors += 1;
            continue;
        };
        let Ok(lambda) = eigenvalues(&t) else {
            acc.errors += 1;
            continue;
        };
        for kind in KINDS {
            let r = axiom_check(&t, &kind, &lambda);
            acc.see(r.axiom1_residual);
            if kind == StrategyKind::Wilkinson {
                acc.see(r.axiom2_margin.unwrap_or(f64::NAN));
            }
        }
    }
    acc.finish("axioms", tol, String::new())
}

/// In-tube runs on `Λ = (1, 2, 4)`; each recorded step must raise `H_i`
/// while the off-diagonal mass exceeds `1e-8`.
fn height_suite(opts: &VerifyOptions) -> SuiteResult {
    let tol = opts.tolerance.unwrap_or(0.0);
    let mut acc = Acc::new();
    acc.worst = f64::NEG_INFINITY;
    let info = SpectrumInfo::new(&[1.0, 2.0, 4.0]).expect("simple spectrum");
    let runs = (opts.samples / 10).max(3);
    for j in 0..runs {
        let kind = strategy(
            opts,
            if j % 2 == 0 {
                StrategyKind::Wilkinson
            } else {
                StrategyKind::Rayleigh
            },
        );
        let i = j % 3;
        let mut rng = trajectory_rng(opts.seed, 5 << 32 | j as u64);
        let mut run = |acc: &mut Acc| -> Result<()> {
            let s = sample_tube(&mut rng, &info, i, 0.05, 1, &kind)?.remove(0);
            let spec = HeightSpec::with_default_weights(3, 1e-2 * info.gap * info.gap, i)?;
            let mut t = s.t;
            let mut h = height(&t, &spec, &info)?;
            for _ in 0..20 {
                if t.offdiag_mass() <= 1e-8 {
                    break;
                }
                let next = kind.step(&t)?.next;
                let h_next = height(&next, &spec, &info)?;
                // the residual is how far the step fails to increase H
                acc.see(h - h_next);
                t = next;
                h = h_next;
            }
            Ok(())
        };
        if run(&mut acc).is_err() {
            acc.errors += 1;
        }
    }
    let mut r = acc.finish("height", tol, "max(H_k - H_{k+1})".into());
    // strict increase
    r.passed &= r.worst < tol;
    r
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Option<SuiteResult> {
    Some(match name {
        "isospectrality" => isospectrality(opts),
        "equivariance" => equivariance(opts),
        "commutation" => commutation(opts),
        "parlett" => parlett(opts),
        "axioms" => axioms(opts),
        "height" => height_suite(opts),
        _ => return None,
    })
}

pub fn cmd_verify(opts: &VerifyOptions) -> VerifyReport {
    let suites: Vec<SuiteResult> = SUITES
        .iter()
        .map(|s| run_suite(s, opts).expect("known suite"))
        .collect();
    let failing: Vec<String> = suites
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name.clone())
        .collect();
    VerifyReport {
        options: opts.clone(),
        passed: failing.is_empty(),
        failing,
        suites,
    }
}
