//! The shifted QR step `Φ`, the signed step `Φ⋆`, the step map `F_s` and its
//! inverse, and sign conjugation.

use crate::error::{Error, Result};
use crate::linalg::givens::{qr_star, rq_star, SINGULAR_TOL};
use crate::linalg::{SignMatrix, SymTridiag};

/// Output of a signed step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    /// `Φ⋆(T, s)`.
    pub next: SymTridiag,
    /// `(R⋆)_{n,n} / (R⋆)_{n-1,n-1}`; `b(next) = ratio_last · b(T)`.
    pub ratio_last: f64,
    /// Sign of `det(T - sI)`: `+1`, `-1`, or `0` when the free pivot is below
    /// tolerance.
    pub det_sign: i8,
}

/// Deliberate defects used to check that the verification suites notice them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepVariant {
    #[default]
    Correct,
    /// Drops the sign of the last Givens sine.
    AbsLastSine,
}

/// `Φ⋆(T, s) = Q⋆ᵀ T Q⋆`.
pub fn phi_star(t: &SymTridiag, s: f64) -> Result<StepResult> {
    phi_star_variant(t, s, StepVariant::Correct)
}

/// [`phi_star`] with an optional injected defect.
pub fn phi_star_variant(t: &SymTridiag, s: f64, variant: StepVariant) -> Result<StepResult> {
    Ok(signed_step(t, s, variant)?.0)
}

// The step together with the free pivot `(R⋆)_{n,n}`.
fn signed_step(t: &SymTridiag, s: f64, variant: StepVariant) -> Result<(StepResult, f64)> {
    let n = t.n();
    let (q, r) = qr_star(t, s)?;
    let rot = q.rotations();
    let mut sines: Vec<f64> = rot.iter().map(|g| g.s).collect();
    if variant == StepVariant::AbsLastSine {
        sines[n - 2] = sines[n - 2].abs();
    }

    // Q⋆ᵀ(T - sI)Q⋆ = R⋆Q⋆ is symmetric tridiagonal, so its lower band is
    // enough: R is upper triangular and Q upper Hessenberg.
    let cos = |i: isize| -> f64 {
        if i < 0 || i as usize >= n - 1 {
            1.0
        } else {
            rot[i as usize].c
        }
    };
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = r.main[i] * cos(i as isize - 1) * cos(i as isize);
        if i + 1 < n {
            d += r.super1[i] * sines[i];
        }
        diag.push(d + s);
    }
    let sub = (0..n - 1).map(|i| r.main[i + 1] * sines[i]).collect();

    let last = r.main[n - 1];
    let det_sign = if last.abs() <= SINGULAR_TOL * (1.0 + t.norm()) {
        0
    } else if last > 0.0 {
        1
    } else {
        -1
    };
    Ok((
        StepResult {
            next: SymTridiag::from_parts(diag, sub),
            ratio_last: r.ratio_last(),
            det_sign,
        },
        last,
    ))
}

/// The classical step `Φ(T, s) = Qᵀ T Q` from the QR factorization with
/// positive diagonal. Equals `Φ⋆` when `det(T - sI) > 0` and `E_n Φ⋆ E_n`
/// otherwise.
pub fn phi(t: &SymTridiag, s: f64) -> Result<SymTridiag> {
    let (res, last) = match signed_step(t, s, StepVariant::Correct) {
        Ok(r) => r,
        Err(Error::AlmostSingular { pivot, .. }) => return Err(Error::Singular { pivot }),
        Err(e) => return Err(e),
    };
    match res.det_sign {
        0 => Err(Error::Singular { pivot: last.abs() }),
        1 => Ok(res.next),
        _ => Ok(SignMatrix::e_n(t.n()).conjugate(&res.next)),
    }
}

/// The step map `F_s(T) = Φ⋆(T, s)`.
pub fn step(t: &SymTridiag, s: f64) -> Result<SymTridiag> {
    Ok(phi_star(t, s)?.next)
}

/// `F_s⁻¹(T)`: factor `T - sI = RQ` and return `QR + sI`.
pub fn step_inverse(t: &SymTridiag, s: f64) -> Result<SymTridiag> {
    let n = t.n();
    let (r, q) = rq_star(t, s)?;
    let rot = q.rotations();
    let e = q.signs();
    let cos = |i: isize| -> f64 {
        if i < 0 || i as usize >= n - 1 {
            1.0
        } else {
            rot[i as usize].c
        }
    };
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = cos(i as isize - 1) * cos(i as isize) * r.main[i];
        if i > 0 {
            d += rot[i - 1].s * r.super1[i - 1];
        }
        diag.push(e.sign(i) * d + s);
    }
    let sub = (0..n - 1)
        .map(|i| e.sign(i + 1) * rot[i].s * r.main[i])
        .collect();
    Ok(SymTridiag::from_parts(diag, sub))
}

/// Inverse of the classical step: the `T0` with `Φ(T0, s) = T`.
pub fn phi_inverse(t: &SymTridiag, s: f64) -> Result<SymTridiag> {
    let (r, _) = rq_star(t, s)?;
    if r.main[t.n() - 1] < 0.0 {
        step_inverse(&SignMatrix::e_n(t.n()).conjugate(t), s)
    } else {
        step_inverse(t, s)
    }
}

/// `E T E`.
pub fn sign_conjugate(t: &SymTridiag, e: &SignMatrix) -> SymTridiag {
    e.conjugate(t)
}

/// Replaces every subdiagonal entry by its absolute value.
pub fn drop_signs(t: &SymTridiag) -> SymTridiag {
    SymTridiag::from_parts(
        t.diag().to_vec(),
        t.sub().iter().map(|x| x.abs()).collect(),
    )
}
