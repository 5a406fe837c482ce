//! Givens-chain factorizations of shifted tridiagonal matrices: the signed
//! `Q⋆R⋆`, the classical QR with positive diagonal, and `RQ`.

use super::dense::DenseMatrix;
use super::tridiag::{SignMatrix, SymTridiag};
use crate::error::{Error, Result};

/// Relative pivot tolerance for almost-invertibility.
pub const PIVOT_TOL: f64 = 1e-13;

/// Relative tolerance below which the free last pivot counts as zero.
pub const SINGULAR_TOL: f64 = 1e-12;

/// A plane rotation acting on coordinates `(index, index + 1)` with block
/// `[[c, -s], [s, c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Givens {
    pub index: usize,
    pub c: f64,
    pub s: f64,
}

/// Orthogonal matrix `E · G_0 · G_1 ⋯ G_{n-2}` stored as a left sign pattern
/// and an ordered rotation chain (one rotation per adjacent pair).
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalFactor {
    n: usize,
    rotations: Vec<Givens>,
    signs: SignMatrix,
}

impl OrthogonalFactor {
    fn new(n: usize, rotations: Vec<Givens>, signs: SignMatrix) -> Self {
        debug_assert_eq!(rotations.len(), n - 1);
        Self {
            n,
            rotations,
            signs,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rotations(&self) -> &[Givens] {
        &self.rotations
    }

    pub fn signs(&self) -> &SignMatrix {
        &self.signs
    }

    pub fn det(&self) -> f64 {
        f64::from(self.signs.det())
    }

    // Cosine of rotation `i`, with the chain padded by identities at both ends.
    fn cos_padded(&self, i: isize) -> f64 {
        if i < 0 || i as usize >= self.rotations.len() {
            1.0
        } else {
            self.rotations[i as usize].c
        }
    }

    /// Entry `Q[i][i]`.
    pub fn diag_entry(&self, i: usize) -> f64 {
        self.signs.sign(i) * self.cos_padded(i as isize - 1) * self.cos_padded(i as isize)
    }

    /// Entry `Q[i+1][i]`.
    pub fn sub_entry(&self, i: usize) -> f64 {
        self.signs.sign(i + 1) * self.rotations[i].s
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n;
        let mut q = DenseMatrix::identity(n);
        for g in &self.rotations {
            let (i, j) = (g.index, g.index + 1);
            for r in 0..n {
                let a = q[(r, i)];
                let b = q[(r, j)];
                q[(r, i)] = g.c * a + g.s * b;
                q[(r, j)] = -g.s * a + g.c * b;
            }
        }
        for r in 0..n {
            let e = self.signs.sign(r);
            for c in 0..n {
                q[(r, c)] *= e;
            }
        }
        q
    }
}

/// Upper triangular matrix with two superdiagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperTriangularBand {
    pub main: Vec<f64>,
    pub super1: Vec<f64>,
    pub super2: Vec<f64>,
}

impl UpperTriangularBand {
    pub fn n(&self) -> usize {
        self.main.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match j.checked_sub(i) {
            Some(0) => self.main[i],
            Some(1) => self.super1[i],
            Some(2) => self.super2[i],
            _ => 0.0,
        }
    }

    /// `(R)_{n,n} / (R)_{n-1,n-1}`.
    pub fn ratio_last(&self) -> f64 {
        let n = self.n();
        self.main[n - 1] / self.main[n - 2]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n();
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in i..(i + 3).min(n) {
                m[(i, j)] = self.get(i, j);
            }
        }
        m
    }
}

fn shift_scale(t: &SymTridiag, s: f64) -> f64 {
    t.diag()
        .iter()
        .map(|d| (d - s).abs())
        .chain(t.sub().iter().map(|x| x.abs()))
        .fold(0.0, f64::max)
}

/// Signed factorization `T - sI = Q⋆ R⋆` with `det Q⋆ = +1` and
/// `(R⋆)_{ii} > 0` for every row but the last.
pub fn qr_star(t: &SymTridiag, s: f64) -> Result<(OrthogonalFactor, UpperTriangularBand)> {
    let n = t.n();
    let tol = PIVOT_TOL * shift_scale(t, s).max(1.0);
    let mut d: Vec<f64> = t.diag().iter().map(|x| x - s).collect();
    let mut u1: Vec<f64> = t.sub().to_vec();
    let mut u2 = vec![0.0; n.saturating_sub(2)];
    let mut l: Vec<f64> = std::iter::once(0.0).chain(t.sub().iter().copied()).collect();
    let mut rotations = Vec::with_capacity(n - 1);

    for i in 0..n - 1 {
        let (a, b) = (d[i], l[i + 1]);
        let r = a.hypot(b);
        if r <= tol {
            return Err(Error::AlmostSingular { index: i, pivot: r });
        }
        let (c, sn) = (a / r, b / r);
        rotations.push(Givens { index: i, c, s: sn });

        let row_u1 = c * u1[i] + sn * d[i + 1];
        let next_d = -sn * u1[i] + c * d[i + 1];
        d[i] = r;
        l[i + 1] = 0.0;
        u1[i] = row_u1;
        d[i + 1] = next_d;
        if i + 1 < n - 1 {
            let u2_i = c * u2.get(i).copied().unwrap_or(0.0) + sn * u1[i + 1];
            let next_u1 = -sn * u2.get(i).copied().unwrap_or(0.0) + c * u1[i + 1];
            u2[i] = u2_i;
            u1[i + 1] = next_u1;
        }
    }

    Ok((
        OrthogonalFactor::new(n, rotations, SignMatrix::identity(n)),
        UpperTriangularBand {
            main: d,
            super1: u1,
            super2: u2,
        },
    ))
}

/// True iff the first `n - 1` pivots of `T - sI` clear the tolerance.
pub fn almost_invertible(t: &SymTridiag, s: f64) -> bool {
    qr_star(t, s).is_ok()
}

/// Classical QR of `T - sI` with every `(R)_{ii} > 0`, expressed through the
/// signed factorization: `Q = Q⋆ E_n`, `R = E_n R⋆` when the last signed
/// pivot is negative.
#[derive(Debug, Clone)]
pub struct PlainQr {
    pub q_star: OrthogonalFactor,
    pub reflected: bool,
    pub r: UpperTriangularBand,
}

impl PlainQr {
    pub fn q_dense(&self) -> DenseMatrix {
        let mut q = self.q_star.to_dense();
        if self.reflected {
            let n = q.n();
            for r in 0..n {
                q[(r, n - 1)] = -q[(r, n - 1)];
            }
        }
        q
    }
}

pub fn qr_plain(t: &SymTridiag, s: f64) -> Result<PlainQr> {
    let (q_star, mut r) = match qr_star(t, s) {
        Ok(f) => f,
        Err(Error::AlmostSingular { pivot, .. }) => return Err(Error::Singular { pivot }),
        Err(e) => return Err(e),
    };
    let n = t.n();
    let last = r.main[n - 1];
    if last.abs() <= SINGULAR_TOL * (1.0 + t.norm()) {
        return Err(Error::Singular { pivot: last.abs() });
    }
    let reflected = last < 0.0;
    if reflected {
        r.main[n - 1] = -last;
    }
    Ok(PlainQr {
        q_star,
        reflected,
        r,
    })
}

/// Factorization `T - sI = R Q` with `Q ∈ SO(n)` and `(R)_{ii} > 0` for
/// every row but the last.
pub fn rq_star(t: &SymTridiag, s: f64) -> Result<(UpperTriangularBand, OrthogonalFactor)> {
    let n = t.n();
    let mut d: Vec<f64> = t.diag().iter().map(|x| x - s).collect();
    let mut u1: Vec<f64> = t.sub().to_vec();
    let mut u2 = vec![0.0; n.saturating_sub(2)];
    let mut l: Vec<f64> = std::iter::once(0.0).chain(t.sub().iter().copied()).collect();
    let mut rot_rev = Vec::with_capacity(n - 1);

    for k in (1..n).rev() {
        let (x, y) = (l[k], d[k]);
        let r = x.hypot(y);
        let (c, sn) = if r == 0.0 { (1.0, 0.0) } else { (y / r, x / r) };
        rot_rev.push(Givens {
            index: k - 1,
            c,
            s: sn,
        });
        l[k] = 0.0;
        d[k] = r;
        let (p, q) = (d[k - 1], u1[k - 1]);
        d[k - 1] = c * p - sn * q;
        u1[k - 1] = sn * p + c * q;
        if k >= 2 {
            let (p, q) = (u1[k - 2], u2[k - 2]);
            u1[k - 2] = c * p - sn * q;
            u2[k - 2] = sn * p + c * q;
        }
    }
    rot_rev.reverse();

    // Only R_00 can come out negative; move its sign onto the free last pivot
    // with D = diag(-1, 1, ..., 1, -1), so that (R D)(D Q) keeps det Q = +1.
    let mut signs = SignMatrix::identity(n);
    if d[0] < 0.0 {
        let mut pattern = vec![1i8; n];
        pattern[0] = -1;
        pattern[n - 1] = -1;
        signs = SignMatrix::new(pattern)?;
        // column 0 of R
        d[0] = -d[0];
        // column n-1 of R
        d[n - 1] = -d[n - 1];
        if n >= 2 {
            u1[n - 2] = -u1[n - 2];
        }
        if n >= 3 {
            u2[n - 3] = -u2[n - 3];
        }
    }

    let min_pivot = d.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
    if min_pivot <= SINGULAR_TOL * (1.0 + t.norm()) {
        return Err(Error::Singular { pivot: min_pivot });
    }

    Ok((
        UpperTriangularBand {
            main: d,
            super1: u1,
            super2: u2,
        },
        OrthogonalFactor::new(n, rot_rev, signs),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn t(diag: &[f64], sub: &[f64]) -> SymTridiag {
        SymTridiag::new(diag.to_vec(), sub.to_vec()).unwrap()
    }

    fn reconstruct_qr(q: &OrthogonalFactor, r: &UpperTriangularBand) -> DenseMatrix {
        q.to_dense().matmul(&r.to_dense())
    }

    #[test]
    fn identity_case() {
        let (q, r) = qr_star(&t(&[1.0, 1.0], &[0.0]), 0.0).unwrap();
        assert_eq!(q.to_dense(), DenseMatrix::identity(2));
        assert_eq!(r.main, vec![1.0, 1.0]);
    }

    #[test]
    fn rank_one_two_by_two() {
        let (q, r) = qr_star(&t(&[1.0, 1.0], &[1.0]), 0.0).unwrap();
        let h = 0.5f64.sqrt();
        let qd = q.to_dense();
        assert_abs_diff_eq!(qd[(0, 0)], h, epsilon = 1e-15);
        assert_abs_diff_eq!(qd[(1, 0)], h, epsilon = 1e-15);
        assert_abs_diff_eq!(qd[(0, 1)], -h, epsilon = 1e-15);
        assert_abs_diff_eq!(qd[(1, 1)], h, epsilon = 1e-15);
        assert_abs_diff_eq!(r.main[0], 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.super1[0], 2f64.sqrt(), epsilon = 1e-15);
        assert!(r.main[1].abs() <= 1e-15);
    }

    #[test]
    fn closed_form_entries_match_dense() {
        let m = t(&[0.3, -1.0, 2.0, 0.5, 1.5], &[0.7, -0.2, 1.1, 0.4]);
        let (q, r) = qr_star(&m, 0.3).unwrap();
        let qd = q.to_dense();
        for i in 0..5 {
            assert_abs_diff_eq!(qd[(i, i)], q.diag_entry(i), epsilon = 1e-15);
        }
        for i in 0..4 {
            assert_abs_diff_eq!(qd[(i + 1, i)], q.sub_entry(i), epsilon = 1e-15);
        }
        let back = reconstruct_qr(&q, &r);
        assert!(back.sub(&m.shifted(0.3).to_dense()).max_abs() < 1e-14);
        assert!((qd.det() - 1.0).abs() < 1e-13);
        assert!(r.main[..4].iter().all(|&x| x > 0.0));
    }

    #[test]
    fn almost_invertible_cases() {
        assert!(almost_invertible(&t(&[1.0, 2.0, 3.0], &[0.1, 0.2]), 2.0));
        assert!(!almost_invertible(&t(&[1.0, 2.0], &[0.0]), 1.0));
        // trailing-block eigenvalue only
        assert!(almost_invertible(&t(&[0.0, 0.0, 5.0], &[1.0, 0.0]), 5.0));
    }

    #[test]
    fn plain_qr_cases() {
        let p = qr_plain(&t(&[2.0, 5.0], &[0.0]), 0.0).unwrap();
        assert_eq!(p.q_dense(), DenseMatrix::identity(2));
        assert_eq!(p.r.main, vec![2.0, 5.0]);
        assert!(matches!(
            qr_plain(&t(&[1.0, 1.0], &[1.0]), 0.0),
            Err(Error::Singular { .. })
        ));
        // det(T - sI) = -1 - 0.25 < 0
        let m = t(&[1.0, -1.0], &[0.5]);
        let p = qr_plain(&m, 0.0).unwrap();
        assert!(p.reflected);
        assert!(p.r.main.iter().all(|&x| x > 0.0));
        let back = p.q_dense().matmul(&p.r.to_dense());
        assert!(back.sub(&m.to_dense()).max_abs() < 1e-14);
    }

    #[test]
    fn rq_reconstructs() {
        let m = t(&[1.0, 2.0, -0.5, 0.25], &[0.3, -0.8, 0.6]);
        for &s in &[-3.0, 0.1, 1.7, 4.0] {
            let (r, q) = rq_star(&m, s).unwrap();
            let back = r.to_dense().matmul(&q.to_dense());
            assert!(back.sub(&m.shifted(s).to_dense()).max_abs() < 1e-13);
            assert!((q.to_dense().det() - 1.0).abs() < 1e-13);
            assert!(r.main[..3].iter().all(|&x| x > 0.0));
        }
    }

    #[test]
    fn rq_diagonal() {
        let m = t(&[3.0, 4.0, 5.0], &[0.0, 0.0]);
        let (r, q) = rq_star(&m, 1.0).unwrap();
        assert_eq!(q.to_dense(), DenseMatrix::identity(3));
        assert_eq!(r.main, vec![2.0, 3.0, 4.0]);
        assert!(rq_star(&m, 4.0).is_err());
    }
}
