//! Simple spectra: gap, arithmetic-progression class, nearest neighbours.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApClass {
    /// No three eigenvalues in arithmetic progression.
    ApFree,
    /// Some progression, but none among three consecutive eigenvalues.
    WeakAp,
    /// Three consecutive eigenvalues in progression.
    StrongAp,
}

/// Sorted simple spectrum `λ_0 < … < λ_{n-1}` with derived data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumInfo {
    pub lambda: Vec<f64>,
    /// `γ = min |λ_i - λ_j|`.
    pub gap: f64,
    pub ap_class: ApClass,
    /// `c(i)`, the index of the eigenvalue closest to `λ_i`; `None` on a tie.
    pub nearest: Vec<Option<usize>>,
    /// Tolerance used for the progression and tie tests.
    pub tol: f64,
}

impl SpectrumInfo {
    /// Classify with the default tolerance `1e-12 · ‖λ‖`.
    pub fn new(lambda: &[f64]) -> Result<Self> {
        let norm = lambda.iter().map(|x| x * x).sum::<f64>().sqrt();
        classify_spectrum(lambda, 1e-12 * norm.max(1.0))
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    /// The spectrum with `λ_i` removed.
    pub fn without(&self, i: usize) -> Vec<f64> {
        self.lambda
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect()
    }

    /// Distance from `λ_i` to the nearest midpoint `(λ_j + λ_k)/2`, `j < k`.
    /// The ordering of `|λ_j - s|` is constant for `s` closer to `λ_i` than
    /// this.
    pub fn midpoint_distance(&self, i: usize) -> f64 {
        let n = self.n();
        let mut best = f64::INFINITY;
        for j in 0..n {
            for k in j + 1..n {
                let d = (0.5 * (self.lambda[j] + self.lambda[k]) - self.lambda[i]).abs();
                best = best.min(d);
            }
        }
        best
    }
}

/// Sorts `lambda` and classifies it. Fails if two entries are within `tol`.
pub fn classify_spectrum(lambda: &[f64], tol: f64) -> Result<SpectrumInfo> {
    if lambda.len() < 2 {
        return Err(Error::InvalidInput("spectrum needs at least two values".into()));
    }
    if lambda.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite eigenvalue".into()));
    }
    let mut l = lambda.to_vec();
    l.sort_by(f64::total_cmp);
    let gap = l.windows(2).map(|p| p[1] - p[0]).fold(f64::INFINITY, f64::min);
    if gap <= tol {
        return Err(Error::DuplicateEigenvalue { gap });
    }
    let n = l.len();

    let in_ap = |a: usize, b: usize, c: usize| (l[a] + l[c] - 2.0 * l[b]).abs() <= tol;
    let strong = (1..n.saturating_sub(1)).any(|j| in_ap(j - 1, j, j + 1));
    let any = (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| in_ap(a, b, c))));
    let ap_class = if strong {
        ApClass::StrongAp
    } else if any {
        ApClass::WeakAp
    } else {
        ApClass::ApFree
    };

    let nearest = (0..n)
        .map(|i| {
            let left = (i > 0).then(|| l[i] - l[i - 1]);
            let right = (i + 1 < n).then(|| l[i + 1] - l[i]);
            match (left, right) {
                (Some(a), Some(b)) if (a - b).abs() <= tol => None,
                (Some(a), Some(b)) => Some(if a < b { i - 1 } else { i + 1 }),
                (Some(_), None) => Some(i - 1),
                (None, Some(_)) => Some(i + 1),
                (None, None) => None,
            }
        })
        .collect();

    Ok(SpectrumInfo {
        lambda: l,
        gap,
        ap_class,
        nearest,
        tol,
    })
}
