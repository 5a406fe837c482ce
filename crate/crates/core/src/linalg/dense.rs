//! Small dense matrices: the cyclic Jacobi eigensolver used as an independent
//! oracle, matrix functions built on it, and an LU solve for tiny systems.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Square row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix rows must be square".into()));
        }
        Ok(Self {
            n,
            data: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Self {
        assert_eq!(self.n, other.n, "size mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &DenseMatrix) -> Self {
        assert_eq!(self.n, other.n, "size mismatch");
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Determinant by partial-pivot elimination.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| a[x * n + k].abs().total_cmp(&a[y * n + k].abs()))
                .unwrap_or(k);
            if a[p * n + k] == 0.0 {
                return 0.0;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let piv = a[k * n + k];
            det *= piv;
            for i in k + 1..n {
                let f = a[i * n + k] / piv;
                for j in k..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// A dense symmetric matrix. Symmetry holds by construction: the constructor
/// keeps the lower triangle and mirrors it.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricDense(DenseMatrix);

impl SymmetricDense {
    pub fn from_lower(m: &DenseMatrix) -> Self {
        let mut s = m.clone();
        for i in 0..m.n() {
            for j in 0..i {
                s[(j, i)] = m[(i, j)];
            }
        }
        Self(s)
    }

    pub fn as_dense(&self) -> &DenseMatrix {
        &self.0
    }

    pub fn into_dense(self) -> DenseMatrix {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }
}

/// Eigen-decomposition from the Jacobi oracle. Eigenvalues ascend; column `j`
/// of `vectors` pairs with `values[j]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

const JACOBI_SWEEPS: usize = 64;

fn off_norm(a: &DenseMatrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver.
pub fn dense_eig(a: &SymmetricDense) -> Result<Eigen> {
    let n = a.n();
    let mut m = a.as_dense().clone();
    let mut v = DenseMatrix::identity(n);
    let scale = m.frobenius();
    let target = 1e-14 * scale;

    let mut converged = off_norm(&m) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
        converged = off_norm(&m) <= target;
    }
    if !converged {
        return Err(Error::NoConvergence {
            method: "jacobi",
            iterations: sweeps,
            residual: off_norm(&m),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(x, x)].total_cmp(&m[(y, y)]));
    let values = order.iter().map(|&k| m[(k, k)]).collect();
    let mut vectors = DenseMatrix::zeros(n);
    for (j, &k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, j)] = v[(i, k)];
        }
    }
    Ok(Eigen { values, vectors })
}

/// `V diag(values) V^T` where `V` holds the oracle eigenvectors of `a`.
/// `values[j]` goes with the `j`-th smallest eigenvalue.
pub fn matrix_function_dense(a: &SymmetricDense, values: &[f64]) -> Result<SymmetricDense> {
    let n = a.n();
    if values.len() != n {
        return Err(Error::InvalidInput(format!(
            "expected {n} function values, got {}",
            values.len()
        )));
    }
    let eig = dense_eig(a)?;
    let v = &eig.vectors;
    let mut out = DenseMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..n).map(|k| v[(i, k)] * values[k] * v[(j, k)]).sum();
            out[(i, j)] = s;
        }
    }
    Ok(SymmetricDense::from_lower(&out))
}

/// Solves `A x = rhs` by Gaussian elimination with partial pivoting.
pub fn lu_solve(a: &DenseMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = a.n();
    if rhs.len() != n {
        return Err(Error::InvalidInput("rhs length mismatch".into()));
    }
    let mut m = a.data().to_vec();
    let mut x = rhs.to_vec();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i * n + k].abs().total_cmp(&m[j * n + k].abs()))
            .unwrap_or(k);
        let piv = m[p * n + k];
        if piv.abs() <= 1e-14 * scale {
            return Err(Error::Singular { pivot: piv.abs() });
        }
        if p != k {
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            x.swap(k, p);
        }
        for i in k + 1..n {
            let f = m[i * n + k] / piv;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[i * n + j] -= f * m[k * n + j];
            }
            x[i] -= f * x[k];
        }
    }
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| m[k * n + j] * x[j]).sum();
        x[k] = (x[k] - s) / m[k * n + k];
    }
    Ok(x)
}
