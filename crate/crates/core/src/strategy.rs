//! Shift strategies: Rayleigh, Wilkinson and the mixed rule, with their
//! axiom checks.

use std::fmt;
use std::str::FromStr;

use crate::dynamics::{phi_star, StepResult};
use crate::error::{Error, Result};
use crate::linalg::{SignMatrix, SymTridiag};

/// Axiom (II) constant of the Wilkinson shift.
pub const C_WILKINSON: f64 = 2.0 * std::f64::consts::SQRT_2;

/// Relative tolerance of the Wilkinson draw rule.
pub const TIE_TOL: f64 = 1e-14;

/// A shift rule `σ`.
pub trait ShiftStrategy {
    fn shift(&self, t: &SymTridiag) -> f64;

    /// Declared axiom (II) constant, when one is known.
    fn c_sigma(&self) -> Option<f64>;

    /// Distance from `T` to the singular support (`+inf` when empty).
    fn singular_support_distance(&self, t: &SymTridiag) -> f64;

    fn name(&self) -> String;

    /// `F_σ(T) = Φ⋆(T, σ(T))`.
    fn step(&self, t: &SymTridiag) -> Result<StepResult> {
        phi_star(t, self.shift(t))
    }
}

/// `ρ(T) = T_{n,n}`.
pub fn rayleigh(t: &SymTridiag) -> f64 {
    t.corner()
}

/// Both eigenvalues of the trailing 2x2 minor, smaller first.
pub fn trailing_eigenvalues(t: &SymTridiag) -> (f64, f64) {
    let (a, c, b) = (t.subcorner(), t.corner(), t.b());
    let m = 0.5 * (a + c);
    let h = (0.5 * (a - c)).hypot(b);
    (m - h, m + h)
}

/// Eigenvalue of the trailing 2x2 minor nearest `T_{n,n}`; the smaller one on
/// a draw.
pub fn wilkinson(t: &SymTridiag) -> f64 {
    let (a, c, b) = (t.subcorner(), t.corner(), t.b());
    if b == 0.0 {
        return c;
    }
    let delta = 0.5 * (a - c);
    let h = delta.hypot(b);
    let minor_norm = (a * a + c * c + 2.0 * b * b).sqrt();
    if delta.abs() <= 0.5 * TIE_TOL * minor_norm {
        return 0.5 * (a + c) - h;
    }
    // c - b²/(δ + sign(δ) h) avoids cancellation when |b| << |δ|.
    c - b * b / (delta + delta.signum() * h)
}

/// `ρ` while `|b| < ε`, `ω` otherwise.
pub fn mixed(t: &SymTridiag, epsilon: f64) -> f64 {
    if t.b().abs() < epsilon {
        rayleigh(t)
    } else {
        wilkinson(t)
    }
}

/// Built-in strategies, selectable by name.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StrategyKind {
    Rayleigh,
    Wilkinson,
    Mixed { epsilon: f64 },
}

impl ShiftStrategy for StrategyKind {
    fn shift(&self, t: &SymTridiag) -> f64 {
        match *self {
            Self::Rayleigh => rayleigh(t),
            Self::Wilkinson => wilkinson(t),
            Self::Mixed { epsilon } => mixed(t, epsilon),
        }
    }

    fn c_sigma(&self) -> Option<f64> {
        match self {
            Self::Rayleigh => None,
            Self::Wilkinson | Self::Mixed { .. } => Some(C_WILKINSON),
        }
    }

    fn singular_support_distance(&self, t: &SymTridiag) -> f64 {
        singular_support_distance(t, *self)
    }

    fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rayleigh => write!(f, "rayleigh"),
            Self::Wilkinson => write!(f, "wilkinson"),
            Self::Mixed { epsilon } => write!(f, "mixed:{epsilon:e}"),
        }
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rayleigh" => Ok(Self::Rayleigh),
            "wilkinson" => Ok(Self::Wilkinson),
            other => {
                let eps = other
                    .strip_prefix("mixed:")
                    .ok_or_else(|| Error::Parse(format!("unknown strategy `{other}`")))?;
                let epsilon: f64 = eps
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad mixed epsilon `{eps}`")))?;
                if !(epsilon > 0.0) || !epsilon.is_finite() {
                    return Err(Error::Parse("mixed epsilon must be positive".into()));
                }
                Ok(Self::Mixed { epsilon })
            }
        }
    }
}

/// `|T_{n,n} - T_{n-1,n-1}|` for Wilkinson and mixed, `+inf` for Rayleigh.
pub fn singular_support_distance(t: &SymTridiag, kind: StrategyKind) -> f64 {
    match kind {
        StrategyKind::Rayleigh => f64::INFINITY,
        StrategyKind::Wilkinson | StrategyKind::Mixed { .. } => {
            (t.corner() - t.subcorner()).abs()
        }
    }
}

/// A constant shift. It violates axiom (II) and exists to exercise failure
/// paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantShift(pub f64);

impl ShiftStrategy for ConstantShift {
    fn shift(&self, _t: &SymTridiag) -> f64 {
        self.0
    }

    fn c_sigma(&self) -> Option<f64> {
        None
    }

    fn singular_support_distance(&self, _t: &SymTridiag) -> f64 {
        f64::INFINITY
    }

    fn name(&self) -> String {
        format!("constant:{}", self.0)
    }
}

/// Residuals of the two strategy axioms at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiomReport {
    /// `|σ(E_n T E_n) - σ(T)|`.
    pub axiom1_residual: f64,
    /// `min_i |σ(T) - λ_i| - C_σ |b(T)|`; `None` without a declared constant.
    pub axiom2_margin: Option<f64>,
    /// `min_i |σ(T) - λ_i| / |b(T)|` (`NaN` when `b = 0`).
    pub observed_constant: f64,
}

pub fn axiom_check<S: ShiftStrategy + ?Sized>(
    t: &SymTridiag,
    strategy: &S,
    eigenvalues: &[f64],
) -> AxiomReport {
    let sigma = strategy.shift(t);
    let flipped = strategy.shift(&SignMatrix::e_n(t.n()).conjugate(t));
    let dist = eigenvalues
        .iter()
        .map(|l| (sigma - l).abs())
        .fold(f64::INFINITY, f64::min);
    let b = t.b().abs();
    AxiomReport {
        axiom1_residual: (flipped - sigma).abs(),
        axiom2_margin: strategy.c_sigma().map(|c| dist - c * b),
        observed_constant: if b > 0.0 { dist / b } else { f64::NAN },
    }
}
