//! Real symmetric tridiagonal matrices and signed diagonal matrices.

use serde::{Deserialize, Serialize};

use super::dense::DenseMatrix;
use crate::error::{Error, Result};

/// An `n x n` real symmetric tridiagonal matrix stored as its diagonal and
/// subdiagonal. Entry `(i + 1, i)` and its mirror `(i, i + 1)` are `sub[i]`.
///
/// Indices are 0-based throughout: the lowest subdiagonal entry
/// `b(T) = T[n-1][n-2]` is `sub[n - 2]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymTridiag {
    diag: Vec<f64>,
    sub: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, sub: Vec<f64>) -> Result<Self> {
        if diag.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "tridiagonal matrix needs n >= 2, got n = {}",
                diag.len()
            )));
        }
        if sub.len() + 1 != diag.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} subdiagonal entries, got {}",
                diag.len() - 1,
                sub.len()
            )));
        }
        if diag.iter().chain(sub.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        Ok(Self { diag, sub })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(diag.to_vec(), vec![0.0; diag.len().saturating_sub(1)])
    }

    /// Block-diagonal matrix `lead ⊕ [corner]`, a point with `b = 0`.
    pub fn with_corner(lead: &SymTridiag, corner: f64) -> Self {
        let mut diag = lead.diag.clone();
        diag.push(corner);
        let mut sub = lead.sub.clone();
        sub.push(0.0);
        Self { diag, sub }
    }

    // Internal constructor for callers that already hold consistent lengths.
    pub(crate) fn from_parts(diag: Vec<f64>, sub: Vec<f64>) -> Self {
        debug_assert_eq!(diag.len(), sub.len() + 1);
        Self { diag, sub }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn sub(&self) -> &[f64] {
        &self.sub
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if i == j + 1 {
            self.sub[j]
        } else if j == i + 1 {
            self.sub[i]
        } else {
            0.0
        }
    }

    /// Lowest subdiagonal entry `b(T) = b_1(T)`.
    pub fn b(&self) -> f64 {
        self.sub[self.n() - 2]
    }

    /// Second-lowest subdiagonal entry `b_2(T)`, when `n >= 3`.
    pub fn b2(&self) -> Option<f64> {
        let n = self.n();
        (n >= 3).then(|| self.sub[n - 3])
    }

    /// The corner entry `T[n-1][n-1]`.
    pub fn corner(&self) -> f64 {
        self.diag[self.n() - 1]
    }

    /// The entry just above the corner, `T[n-2][n-2]`.
    pub fn subcorner(&self) -> f64 {
        self.diag[self.n() - 2]
    }

    /// Frobenius norm, `sqrt(trace(T^2))`.
    pub fn norm(&self) -> f64 {
        let d: f64 = self.diag.iter().map(|x| x * x).sum();
        let s: f64 = self.sub.iter().map(|x| x * x).sum();
        (d + 2.0 * s).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(self.sub.iter())
            .fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Sum of squared subdiagonal entries: how far `T` is from diagonal.
    pub fn offdiag_mass(&self) -> f64 {
        self.sub.iter().map(|x| x * x).sum()
    }

    pub fn is_unreduced(&self) -> bool {
        self.sub.iter().all(|&x| x != 0.0)
    }

    /// `T - sI`.
    pub fn shifted(&self, s: f64) -> Self {
        Self {
            diag: self.diag.iter().map(|d| d - s).collect(),
            sub: self.sub.clone(),
        }
    }

    /// Leading `m x m` principal block (`m >= 2`).
    pub fn leading(&self, m: usize) -> Result<Self> {
        if m < 2 || m > self.n() {
            return Err(Error::InvalidInput(format!(
                "leading block of size {m} from n = {}",
                self.n()
            )));
        }
        Ok(Self {
            diag: self.diag[..m].to_vec(),
            sub: self.sub[..m - 1].to_vec(),
        })
    }

    /// Copy with the subdiagonal entry `i` replaced.
    pub fn with_sub(&self, i: usize, value: f64) -> Self {
        let mut out = self.clone();
        out.sub[i] = value;
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n();
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for (i, &e) in self.sub.iter().enumerate() {
            m[(i + 1, i)] = e;
            m[(i, i + 1)] = e;
        }
        m
    }

    /// Largest entrywise difference against another matrix of the same size.
    pub fn max_diff(&self, other: &SymTridiag) -> f64 {
        assert_eq!(self.n(), other.n(), "size mismatch");
        self.diag
            .iter()
            .zip(&other.diag)
            .chain(self.sub.iter().zip(&other.sub))
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Frobenius distance `||self - other||`.
    pub fn dist(&self, other: &SymTridiag) -> f64 {
        assert_eq!(self.n(), other.n(), "size mismatch");
        let d: f64 = self
            .diag
            .iter()
            .zip(&other.diag)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        let s: f64 = self
            .sub
            .iter()
            .zip(&other.sub)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        (d + 2.0 * s).sqrt()
    }
}

/// A signed diagonal matrix `E = diag(±1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    signs: Vec<i8>,
}

impl SignMatrix {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidInput("signs must be +1 or -1".into()));
        }
        Ok(Self { signs })
    }

    pub fn identity(n: usize) -> Self {
        Self { signs: vec![1; n] }
    }

    /// `E_n = diag(1, ..., 1, -1)`.
    pub fn e_n(n: usize) -> Self {
        let mut signs = vec![1; n];
        signs[n - 1] = -1;
        Self { signs }
    }

    /// Sign pattern from the low `n` bits of `bits` (bit set means `-1`).
    pub fn from_bits(n: usize, bits: u64) -> Self {
        Self {
            signs: (0..n)
                .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, i: usize) -> f64 {
        f64::from(self.signs[i])
    }

    pub fn det(&self) -> i8 {
        self.signs.iter().product()
    }

    /// `E T E`: flips `sub[i]` wherever the signs at `i` and `i + 1` differ.
    pub fn conjugate(&self, t: &SymTridiag) -> SymTridiag {
        assert_eq!(self.n(), t.n(), "size mismatch");
        let sub = t
            .sub
            .iter()
            .enumerate()
            .map(|(i, &e)| e * self.sign(i) * self.sign(i + 1))
            .collect();
        SymTridiag::from_parts(t.diag.clone(), sub)
    }
}
