//! Deflation components, the canonical projection `Π_i`, tubular coordinates
//! and their numerical inverse.

use serde::{Deserialize, Serialize};

use super::spectrum::SpectrumInfo;
use crate::dynamics::{phi_inverse, step};
use crate::error::{Error, Result};
use crate::linalg::{
    dense_eig, jacobi_from_last_components, lu_solve, spectral_data, DenseMatrix, SignMatrix,
    SymTridiag, SymmetricDense,
};

/// `ζ(T) = (Π_i(T), b(T))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TubularPoint {
    pub base: SymTridiag,
    pub fiber: f64,
    pub component: usize,
}

/// Index `i` of the component `D^i_{Λ,ε}` containing `T`, if any.
pub fn deflation_component(t: &SymTridiag, info: &SpectrumInfo, eps: f64) -> Option<usize> {
    if t.b().abs() > eps {
        return None;
    }
    let window = std::f64::consts::SQRT_2 * eps;
    let mut hits = info
        .lambda
        .iter()
        .enumerate()
        .filter(|(_, &l)| (t.corner() - l).abs() < window)
        .map(|(i, _)| i);
    match (hits.next(), hits.next()) {
        (Some(i), None) => Some(i),
        _ => None,
    }
}

/// `Π_i(T)`: the deflating step `F_{λ_i}` followed by the inverse of its
/// restriction to `D^i_{Λ,0}`.
///
/// On `D^i_{Λ,0}` the step decouples into the classical step `Φ` on the
/// leading block, so the restriction is inverted blockwise.
pub fn project(t: &SymTridiag, info: &SpectrumInfo, i: usize) -> Result<SymTridiag> {
    let n = t.n();
    check_component(info, n, i)?;
    let lambda = info.lambda[i];
    let s = step(t, lambda)?;
    if n == 2 {
        return SymTridiag::new(vec![s.diag()[0], lambda], vec![0.0]);
    }
    let block = s.leading(n - 1)?;
    let lead = phi_inverse(&block, lambda)?;
    Ok(SymTridiag::with_corner(&lead, lambda))
}

fn check_component(info: &SpectrumInfo, n: usize, i: usize) -> Result<()> {
    if info.n() != n {
        return Err(Error::InvalidInput(format!(
            "spectrum has {} values, matrix is {n} x {n}",
            info.n()
        )));
    }
    if i >= n {
        return Err(Error::InvalidInput(format!("component {i} out of range")));
    }
    Ok(())
}

pub fn tubular_coords(t: &SymTridiag, info: &SpectrumInfo, i: usize) -> Result<TubularPoint> {
    Ok(TubularPoint {
        base: project(t, info, i)?,
        fiber: t.b(),
        component: i,
    })
}

/// `(|b_1|, |b_2|)`: distances to single and double deflation.
pub fn double_deflation_gap(t: &SymTridiag) -> Result<(f64, f64)> {
    let b2 = t
        .b2()
        .ok_or_else(|| Error::InvalidInput("double deflation needs n >= 3".into()))?;
    Ok((t.b().abs(), b2.abs()))
}

const NEWTON_ITERS: usize = 50;
const NEWTON_TOL: f64 = 1e-11;
const FD_STEP: f64 = 1e-7;

// Sign pattern E with E·|T|·E carrying the given subdiagonal signs.
fn sign_pattern(signs: &[f64]) -> SignMatrix {
    let mut e = vec![1i8; signs.len() + 1];
    for (k, &s) in signs.iter().enumerate() {
        e[k + 1] = if s < 0.0 { -e[k] } else { e[k] };
    }
    SignMatrix::new(e).expect("signs are ±1")
}

/// `ζ⁻¹(base, b)`: the matrix in the `i`-th tube with projection `base` and
/// fiber coordinate `b`.
///
/// Searches over last eigenvector components `z` (with `z_i = 1` as gauge) by
/// damped Newton with a forward-difference Jacobian. The equations match the
/// first-component weights of the projected leading block with those of
/// `base`, plus `b(T) = b`.
pub fn tubular_inverse(
    base: &SymTridiag,
    b: f64,
    info: &SpectrumInfo,
    i: usize,
) -> Result<SymTridiag> {
    let n = base.n();
    check_component(info, n, i)?;
    let lambda_i = info.lambda[i];
    let scale = 1.0 + base.norm();
    if base.b().abs() > 1e-12 * scale || (base.corner() - lambda_i).abs() > 1e-10 * scale {
        return Err(Error::InvalidInput(format!(
            "base is not in the deflation set of component {i}"
        )));
    }
    if b == 0.0 {
        return Ok(base.clone());
    }
    let others = info.without(i);

    if n == 2 {
        // T = [[a, b], [b, c]] with a + c and ac - b² fixed by the spectrum.
        let m = 0.5 * (info.lambda[0] + info.lambda[1]);
        let h = 0.5 * (info.lambda[1] - info.lambda[0]);
        if b.abs() >= h {
            return Err(Error::InvalidInput(format!(
                "|b| = {} exceeds the half gap {h}",
                b.abs()
            )));
        }
        let r = (h - b.abs()).sqrt() * (h + b.abs()).sqrt();
        let c = if i == 1 { m + r } else { m - r };
        return SymTridiag::new(vec![2.0 * m - c, c], vec![b]);
    }

    let lead = base.leading(n - 1)?;
    if !lead.is_unreduced() {
        return Err(Error::InvalidInput(
            "base must be unreduced in its leading block".into(),
        ));
    }
    let lead_eig = dense_eig(&SymmetricDense::from_lower(&lead.to_dense()))?;
    for (x, y) in lead_eig.values.iter().zip(&others) {
        if (x - y).abs() > 1e-8 * scale {
            return Err(Error::InvalidInput(
                "leading block of base does not carry the remaining spectrum".into(),
            ));
        }
    }
    let abs_lead = SymTridiag::from_parts(
        lead.diag().to_vec(),
        lead.sub().iter().map(|x| x.abs()).collect(),
    );
    let (_, target_w) = spectral_data(&abs_lead)?;
    let target: Vec<f64> = (0..n - 2)
        .map(|k| (target_w[k] / target_w[n - 2]).ln())
        .collect();

    // Unknown index k (0..n-1) maps to eigenvalue index j != i.
    let j_of = |k: usize| if k < i { k } else { k + 1 };

    let assemble = |u: &[f64]| -> Result<SymTridiag> {
        let mut z = vec![0.0; n];
        z[i] = 1.0;
        for (k, &uk) in u.iter().enumerate() {
            z[j_of(k)] = uk.exp();
        }
        let norm = z.iter().map(|x| x * x).sum::<f64>().sqrt();
        z.iter_mut().for_each(|x| *x /= norm);
        jacobi_from_last_components(&info.lambda, &z)
    };
    let residual = |u: &[f64]| -> Result<Vec<f64>> {
        let t = assemble(u)?;
        let p = project(&t, info, i)?;
        let block = p.leading(n - 1)?;
        let (_, w) = spectral_data(&block)?;
        let mut f: Vec<f64> = (0..n - 2)
            .map(|k| (w[k] / w[n - 2]).ln() - target[k])
            .collect();
        f.push((t.b() / b.abs()).ln());
        if f.iter().any(|x| !x.is_finite()) {
            return Err(Error::NoConvergence {
                method: "tubular inverse",
                iterations: 0,
                residual: f64::INFINITY,
            });
        }
        Ok(f)
    };
    let max_norm = |f: &[f64]| f.iter().fold(0.0f64, |m, x| m.max(x.abs()));

    // First-order guess: eigenvector j of T has last component close to
    // b·(y_j)_{last} / (λ_j - λ_i), y_j the eigenvector of the leading block.
    let mut u: Vec<f64> = (0..n - 1)
        .map(|k| {
            let y_last = lead_eig.vectors[(n - 2, k)].abs().max(1e-300);
            (b.abs() * y_last / (others[k] - lambda_i).abs()).ln()
        })
        .collect();

    let mut f = residual(&u)?;
    let mut iter = 0;
    while max_norm(&f) > NEWTON_TOL {
        if iter == NEWTON_ITERS {
            return Err(Error::NoConvergence {
                method: "tubular inverse",
                iterations: iter,
                residual: max_norm(&f),
            });
        }
        iter += 1;
        let m = n - 1;
        let mut jac = DenseMatrix::zeros(m);
        for col in 0..m {
            let mut up = u.clone();
            up[col] += FD_STEP;
            let fp = residual(&up)?;
            for row in 0..m {
                jac[(row, col)] = (fp[row] - f[row]) / FD_STEP;
            }
        }
        let rhs: Vec<f64> = f.iter().map(|x| -x).collect();
        let delta = lu_solve(&jac, &rhs)?;

        let current = max_norm(&f);
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..12 {
            let trial: Vec<f64> = u.iter().zip(&delta).map(|(a, d)| a + alpha * d).collect();
            if let Ok(ft) = residual(&trial) {
                if max_norm(&ft) < current {
                    accepted = Some((trial, ft));
                    break;
                }
            }
            alpha *= 0.5;
        }
        match accepted {
            Some((nu, nf)) => {
                u = nu;
                f = nf;
            }
            None => {
                return Err(Error::NoConvergence {
                    method: "tubular inverse",
                    iterations: iter,
                    residual: current,
                })
            }
        }
    }

    let t = assemble(&u)?;
    let mut signs: Vec<f64> = base.sub()[..n - 2].iter().map(|x| x.signum()).collect();
    signs.push(b.signum());
    Ok(sign_pattern(&signs).conjugate(&t))
}
