//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture` to see
//! the report.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::Rng;
use tridiag_shift::diagnostics::{
    exception_count, height, iterate, parlett_check, rate_exponents_in, HeightSpec,
    IterateOptions, RateBand,
};
use tridiag_shift::dynamics::{step, step_inverse};
use tridiag_shift::experiments::hexagon::FIXED_TOL;
use tridiag_shift::experiments::{
    cmd_hexagon, cubic_fit, fiber_exponent, fiber_response, rotated_witness_base,
    ExperimentConfig,
};
use tridiag_shift::geometry::{
    calibrate_neighborhoods, deflation_component, project, sample_tube, SpectrumInfo,
};
use tridiag_shift::linalg::{eigenvalues, qr_star, DenseMatrix, SignMatrix, SymTridiag};
use tridiag_shift::sampling::{random_jacobi, random_signs, random_spectrum, trajectory_rng};
use tridiag_shift::strategy::{ShiftStrategy, StrategyKind, C_WILKINSON};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const KINDS: [StrategyKind; 3] = [
    StrategyKind::Rayleigh,
    StrategyKind::Wilkinson,
    StrategyKind::Mixed { epsilon: 1e-2 },
];

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_matrix<R: Rng>(rng: &mut R, n_lo: usize, n_hi: usize) -> SymTridiag {
    let n = rng.random_range(n_lo..=n_hi);
    let lambda = random_spectrum(rng, n);
    let t = random_jacobi(rng, &lambda, 1.0).unwrap();
    random_signs(rng, n).conjugate(&t)
}

/// A shift at least `margin` away from every eigenvalue.
fn shift_off_spectrum<R: Rng>(rng: &mut R, lambda: &[f64], margin: f64) -> f64 {
    loop {
        let s = rng.random_range(lambda[0] - 1.0..lambda[lambda.len() - 1] + 1.0);
        if lambda.iter().all(|l| (l - s).abs() > margin) {
            return s;
        }
    }
}

fn max_drift(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn isospectrality_and_shape() -> Outcome {
    let mut drift: f64 = 0.0;
    let mut fill: f64 = 0.0;
    let mut band: f64 = 0.0;
    for j in 0..1000u64 {
        let mut rng = trajectory_rng(1, j);
        let t = random_matrix(&mut rng, 2, 8);
        let lambda = eigenvalues(&t).unwrap();
        let s = match j % 4 {
            3 => shift_off_spectrum(&mut rng, &lambda, 1e-3),
            k => KINDS[k as usize].shift(&t),
        };
        let next = step(&t, s).unwrap();
        let norm = t.norm();
        drift = drift.max(max_drift(&lambda, &eigenvalues(&next).unwrap()) / norm);

        // the dense similarity Q⋆ᵀ T Q⋆ must stay tridiagonal
        let (q, _) = qr_star(&t, s).unwrap();
        let q = q.to_dense();
        let full = q.transpose().matmul(&t.to_dense()).matmul(&q);
        let dense_next = next.to_dense();
        let n = t.n();
        for r in 0..n {
            for c in 0..n {
                if r.abs_diff(c) > 1 {
                    fill = fill.max(full[(r, c)].abs() / norm);
                } else {
                    band = band.max((full[(r, c)] - dense_next[(r, c)]).abs() / norm);
                }
            }
        }
    }
    verdict(
        drift <= 1e-10 && fill <= 1e-10 && band <= 1e-10,
        format!("drift {drift:.2e}, fill-in {fill:.2e}, band mismatch {band:.2e} (tol 1e-10·‖T‖)"),
    )
}

fn one_step_deflation() -> Outcome {
    let mut worst_b: f64 = 0.0;
    let mut worst_corner: f64 = 0.0;
    for j in 0..500u64 {
        let mut rng = trajectory_rng(2, j);
        let t = random_matrix(&mut rng, 2, 8);
        let lambda = eigenvalues(&t).unwrap();
        let s = lambda[rng.random_range(0..lambda.len())];
        let next = step(&t, s).unwrap();
        let norm = t.norm();
        worst_b = worst_b.max(next.b().abs() / norm);
        worst_corner = worst_corner.max((next.corner() - s).abs() / norm);
    }
    verdict(
        worst_b <= 1e-10 && worst_corner <= 1e-10,
        format!("|b| {worst_b:.2e}, |corner - s| {worst_corner:.2e} (tol 1e-10·‖T‖)"),
    )
}

fn equivariance() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for j in 0..120u64 {
        let mut rng = trajectory_rng(3, j);
        let t = random_matrix(&mut rng, 2, 8);
        let n = t.n();
        for kind in KINDS {
            let ft = kind.step(&t).unwrap().next;
            for bits in 0..1u64 << n {
                let e = SignMatrix::from_bits(n, bits);
                let lhs = kind.step(&e.conjugate(&t)).unwrap().next;
                worst = worst.max(lhs.max_diff(&e.conjugate(&ft)));
                checks += 1;
            }
        }
    }
    verdict(
        worst <= 1e-12,
        format!("{checks} (T, E, σ) triples, worst {worst:.2e} (tol 1e-12)"),
    )
}

fn commutation_and_inversion() -> Outcome {
    let mut comm: f64 = 0.0;
    let mut inv: f64 = 0.0;
    for j in 0..500u64 {
        let mut rng = trajectory_rng(4, j);
        let t = random_matrix(&mut rng, 2, 8);
        let lambda = eigenvalues(&t).unwrap();
        let s0 = shift_off_spectrum(&mut rng, &lambda, 1e-2);
        let s1 = shift_off_spectrum(&mut rng, &lambda, 1e-2);
        let norm = t.norm();
        let a = step(&step(&t, s1).unwrap(), s0).unwrap();
        let b = step(&step(&t, s0).unwrap(), s1).unwrap();
        comm = comm.max(a.dist(&b) / norm);
        let back = step_inverse(&step(&t, s0).unwrap(), s0).unwrap();
        inv = inv.max(back.dist(&t) / norm);
    }
    verdict(
        comm <= 1e-9 && inv <= 1e-10,
        format!("commutator {comm:.2e} (tol 1e-9·‖T‖), inverse {inv:.2e} (tol 1e-10·‖T‖)"),
    )
}

fn wilkinson_axiom() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut samples = 0;
    for j in 0..1000u64 {
        let mut rng = trajectory_rng(5, j);
        let t = random_matrix(&mut rng, 2, 8);
        // follow a short trajectory so small |b| is covered too
        let tr = iterate(&t, &StrategyKind::Wilkinson, &IterateOptions::with_max_steps(6)).unwrap();
        let lambda = eigenvalues(&t).unwrap();
        for s in &tr.steps {
            let dist = lambda
                .iter()
                .map(|l| (s.shift - l).abs())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(dist - C_WILKINSON * s.b1 - 1e-12);
            samples += 1;
        }
    }
    verdict(
        worst <= 0.0,
        format!("{samples} samples, max(dist - 2√2|b| - 1e-12) = {worst:.2e}"),
    )
}

fn parlett_bound() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for j in 0..100u64 {
        let mut rng = trajectory_rng(6, j);
        let t = random_matrix(&mut rng, 3, 8);
        let tr = iterate(&t, &StrategyKind::Wilkinson, &IterateOptions::with_max_steps(40)).unwrap();
        worst = worst.max(parlett_check(&tr, &t).unwrap());
    }
    verdict(worst <= 1e-12, format!("worst slack {worst:.2e} (tol 1e-12)"))
}

fn projection_geometry() -> Outcome {
    let spectra: [&[f64]; 3] = [&[1.0, 2.0, 4.0], &[-1.0, 0.5, 1.7, 4.0], &[0.0, 1.0, 3.0, 7.0, 8.5]];
    let mut idem: f64 = 0.0;
    let mut comm: f64 = 0.0;
    let mut lower = f64::NEG_INFINITY;
    let mut c_b: f64 = 0.0;
    for (k, l) in spectra.iter().enumerate() {
        let info = SpectrumInfo::new(l).unwrap();
        let eps = calibrate_neighborhoods(&info, &StrategyKind::Wilkinson, 100, 7)
            .unwrap()
            .eps_tub;
        for i in 0..info.n() {
            let mut rng = trajectory_rng(7, (k * 10 + i) as u64);
            for s in sample_tube(&mut rng, &info, i, eps, 20, &StrategyKind::Wilkinson).unwrap() {
                let p = project(&s.t, &info, i).unwrap();
                idem = idem.max(project(&p, &info, i).unwrap().max_diff(&p));
                let shift = shift_off_spectrum(&mut rng, &info.lambda, 1e-2);
                let a = project(&step(&s.t, shift).unwrap(), &info, i).unwrap();
                let b = step(&p, shift).unwrap();
                comm = comm.max(a.max_diff(&b));
                let d = s.t.dist(&p);
                let b1 = s.t.b().abs();
                lower = lower.max(b1 - d);
                c_b = c_b.max(d / b1);
            }
        }
    }
    verdict(
        idem <= 1e-9 && comm <= 1e-9 && lower <= 0.0 && c_b.is_finite(),
        format!(
            "idempotence {idem:.2e}, Π∘F_s - F_s∘Π {comm:.2e} (tol 1e-9), \
             max(|b| - ‖T - Π(T)‖) {lower:.2e}, C_b = {c_b:.3}"
        ),
    )
}

fn invariance_and_quadratic_squeeze() -> Outcome {
    let info = SpectrumInfo::new(&[1.0, 2.0, 4.0]).unwrap();
    let mut lines = Vec::new();
    let mut ok = true;
    for kind in KINDS {
        let params = match calibrate_neighborhoods(&info, &kind, 100, 8) {
            Ok(p) => p,
            Err(e) => return Err(format!("{kind}: {e}")),
        };
        let eps = params.eps_inv;
        let mut escaped = 0;
        let mut c2: f64 = 0.0;
        for i in 0..3 {
            // fresh samples, independent of the calibration draw
            let mut rng = trajectory_rng(88, i as u64);
            for s in sample_tube(&mut rng, &info, i, eps, 200, &kind).unwrap() {
                let next = s.next.expect("step defined in the tube");
                if deflation_component(&next, &info, 0.5 * eps) != Some(i) {
                    escaped += 1;
                }
                c2 = c2.max(next.b().abs() / (s.b * s.b));
            }
        }
        ok &= escaped == 0 && c2.is_finite();
        lines.push(format!("{kind}: ε = {eps:.3e}, escapes {escaped}, max |b'|/|b|² = {c2:.3}"));
    }
    verdict(ok, lines.join("; "))
}

fn cubic_squeeze_off_singular_support() -> Outcome {
    let info = SpectrumInfo::new(&[1.0, 2.0, 4.0]).unwrap();
    let grid = [1e-2, 1e-3, 1e-4, 1e-5];
    let mut lines = Vec::new();
    let mut ok = true;
    for kind in [StrategyKind::Wilkinson, StrategyKind::Rayleigh] {
        let fit = cubic_fit(&info, &kind, &grid, 8, info.gap / 10.0, 9).unwrap();
        let good = fit.min_ss_dist >= info.gap / 10.0
            && fit.c_k.is_finite()
            && (fit.slope_min - 3.0).abs() <= 0.15
            && (fit.slope_max - 3.0).abs() <= 0.15;
        ok &= good;
        lines.push(format!(
            "{kind}: {} fibers, slopes [{:.4}, {:.4}], C = {:.3}",
            fit.fibers, fit.slope_min, fit.slope_max, fit.c_k
        ));
    }
    verdict(ok, lines.join("; "))
}

fn ap_free_ensemble() -> Outcome {
    let info = SpectrumInfo::new(&[1.0, 2.0, 4.0]).unwrap();
    let omega = StrategyKind::Wilkinson;
    let c = cubic_fit(&info, &omega, &[1e-2, 1e-3, 1e-4, 1e-5], 8, info.gap / 10.0, 9)
        .unwrap()
        .c_k;
    let mut deflated = 0;
    let mut max_exceptions = 0;
    for j in 0..200u64 {
        let t0 = random_jacobi(&mut trajectory_rng(10, j), &info.lambda, 1.0).unwrap();
        let opts = IterateOptions {
            deflate_tol: Some(1e-14),
            ..IterateOptions::with_max_steps(40)
        };
        let tr = iterate(&t0, &omega, &opts).unwrap();
        if tr.terminal.deflated_at.is_some() {
            deflated += 1;
        }
        max_exceptions = max_exceptions.max(exception_count(&tr, c));
    }
    verdict(
        deflated >= 190 && max_exceptions <= 5,
        format!("{deflated}/200 deflated, max exceptions {max_exceptions} (C = {c:.3})"),
    )
}

fn strong_ap_witness() -> Outcome {
    let info = SpectrumInfo::new(&[-1.0, 0.0, 1.0]).unwrap();
    let pts = fiber_response(
        &rotated_witness_base(0.0),
        &info,
        1,
        &[1e-2, 1e-3, 1e-4, 1e-5],
        &StrategyKind::Wilkinson,
    )
    .unwrap();
    let slope = fiber_exponent(&pts).unwrap();
    let growth = pts[pts.len() - 1].ratio3 / pts[0].ratio3;
    verdict(
        (slope - 2.0).abs() <= 0.1 && growth > 10.0,
        format!("exponent {slope:.4}, ratio3 grows {growth:.3e}x"),
    )
}

fn weak_ap_double_deflation() -> Outcome {
    let info = SpectrumInfo::new(&[-1.0, 0.0, 0.3, 1.0]).unwrap();
    let band_rel = tridiag_shift::experiments::rate_scan::TAIL_BAND_REL;
    let mut worst_b2: f64 = 0.0;
    let mut worst_sub: f64 = 0.0;
    let mut min_tail = f64::INFINITY;
    let mut bad = 0;
    for j in 0..200u64 {
        let t0 = random_jacobi(&mut trajectory_rng(12, j), &info.lambda, 1.0).unwrap();
        assert!(t0.is_unreduced());
        let opts = IterateOptions {
            info: Some(info.clone()),
            track_double_until: Some(1e-8),
            ..IterateOptions::with_max_steps(100)
        };
        let tr = iterate(&t0, &StrategyKind::Wilkinson, &opts).unwrap();
        let (Some(i), Some(b2)) = (tr.terminal.component, tr.last.b2()) else {
            bad += 1;
            continue;
        };
        let Some(c) = info.nearest[i] else {
            bad += 1;
            continue;
        };
        worst_b2 = worst_b2.max(b2.abs());
        worst_sub = worst_sub.max((tr.last.subcorner() - info.lambda[c]).abs());
        let band = RateBand {
            lo: band_rel * t0.norm(),
            hi: 0.1,
        };
        match rate_exponents_in(&tr, 4, band).ok().and_then(|r| r.tail()) {
            Some(x) => min_tail = min_tail.min(x),
            None => bad += 1,
        }
    }
    verdict(
        bad == 0 && worst_b2 < 1e-8 && worst_sub <= 1e-6 && min_tail >= 2.7,
        format!(
            "200 runs, incomplete {bad}, max final |b2| {worst_b2:.2e}, \
             max |subcorner - λ_c(i)| {worst_sub:.2e}, min tail exponent {min_tail:.3}"
        ),
    )
}

fn height_monotonicity() -> Outcome {
    let spectra: [&[f64]; 2] = [&[1.0, 2.0, 4.0], &[0.0, 1.0, 3.0, 7.0]];
    let mut worst = f64::NEG_INFINITY;
    let mut steps = 0;
    for (k, l) in spectra.iter().enumerate() {
        let info = SpectrumInfo::new(l).unwrap();
        assert_eq!(info.ap_class, tridiag_shift::geometry::ApClass::ApFree);
        let n = info.n();
        let eps = calibrate_neighborhoods(&info, &StrategyKind::Wilkinson, 100, 13)
            .unwrap()
            .eps_inv;
        for kind in [StrategyKind::Wilkinson, StrategyKind::Rayleigh] {
            for i in 0..n {
                let spec = HeightSpec::with_default_weights(n, 1e-2 * info.gap * info.gap, i).unwrap();
                let mut rng = trajectory_rng(13, (k * 100 + i) as u64);
                for s in sample_tube(&mut rng, &info, i, eps, 10, &kind).unwrap() {
                    let mut t = s.t;
                    let mut h = height(&t, &spec, &info).unwrap();
                    while t.offdiag_mass() > 1e-8 {
                        let next = kind.step(&t).unwrap().next;
                        let h_next = height(&next, &spec, &info).unwrap();
                        worst = worst.max(h - h_next);
                        steps += 1;
                        t = next;
                        h = h_next;
                        if steps > 100_000 {
                            return Err("runaway trajectory".into());
                        }
                    }
                }
            }
        }
    }
    verdict(
        worst < 0.0,
        format!("{steps} in-tube steps, max(H_k - H_(k+1)) = {worst:.3e}"),
    )
}

/// `T - sI = QR` by classical Gram–Schmidt with reorthogonalization, then
/// the last column of `Q` and last row of `R` flipped when `det Q < 0`.
fn gram_schmidt_star(a: &DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let n = a.n();
    let mut q = DenseMatrix::zeros(n);
    let mut r = DenseMatrix::zeros(n);
    for j in 0..n {
        let mut v = a.column(j);
        for _ in 0..2 {
            for i in 0..j {
                let d: f64 = (0..n).map(|k| q[(k, i)] * v[k]).sum();
                r[(i, j)] += d;
                for k in 0..n {
                    v[k] -= d * q[(k, i)];
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        r[(j, j)] = norm;
        for k in 0..n {
            q[(k, j)] = v[k] / norm;
        }
    }
    if q.det() < 0.0 {
        for k in 0..n {
            q[(k, n - 1)] = -q[(k, n - 1)];
            r[(n - 1, k)] = -r[(n - 1, k)];
        }
    }
    (q, r)
}

fn oracle_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    for j in 0..1000u64 {
        let mut rng = trajectory_rng(14, j);
        let t = random_matrix(&mut rng, 2, 8);
        let lambda = eigenvalues(&t).unwrap();
        let s = shift_off_spectrum(&mut rng, &lambda, 0.05);
        let (q, r) = qr_star(&t, s).unwrap();
        let mut a = t.to_dense();
        for k in 0..t.n() {
            a[(k, k)] -= s;
        }
        let (gq, gr) = gram_schmidt_star(&a);
        worst = worst
            .max(q.to_dense().sub(&gq).max_abs())
            .max(r.to_dense().sub(&gr).max_abs());
    }
    verdict(worst <= 1e-11, format!("1000 inputs, max entry difference {worst:.2e} (tol 1e-11)"))
}

fn hexagon_portrait() -> Outcome {
    let cfg = |l: &[f64]| ExperimentConfig {
        spectrum: l.to_vec(),
        ..ExperimentConfig::default()
    };
    let sym = cmd_hexagon(&cfg(&[-1.0, 0.0, 1.0])).unwrap().summary;
    let free = cmd_hexagon(&cfg(&[1.0, 2.0, 4.0])).unwrap().summary;
    let fixed = free.vertices.len() == 6
        && sym.vertices.len() == 6
        && free.max_vertex_motion <= FIXED_TOL
        && sym.max_vertex_motion <= FIXED_TOL;
    let bottom = sym.edges[sym.bottom_edge].max_motion;
    verdict(
        fixed && sym.bottom_edge_fixed && free.alternating && free.cycle.len() == 6,
        format!(
            "vertex motion {:.2e}/{:.2e}, (-1,0,1) bottom edge motion {bottom:.2e}, \
             (1,2,4) deflation edges alternate: {}",
            sym.max_vertex_motion, free.max_vertex_motion, free.alternating
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 15] = [
        ("isospectrality and shape", isospectrality_and_shape),
        ("one-step deflation", one_step_deflation),
        ("equivariance", equivariance),
        ("commutation and inversion", commutation_and_inversion),
        ("wilkinson axiom", wilkinson_axiom),
        ("parlett bound", parlett_bound),
        ("projection geometry", projection_geometry),
        ("invariance and quadratic squeeze", invariance_and_quadratic_squeeze),
        ("cubic squeeze off the singular support", cubic_squeeze_off_singular_support),
        ("a.p.-free ensemble", ap_free_ensemble),
        ("strong a.p. witness", strong_ap_witness),
        ("weak a.p. double deflation", weak_ap_double_deflation),
        ("height monotonicity", height_monotonicity),
        ("oracle equivalence", oracle_equivalence),
        ("hexagon portrait", hexagon_portrait),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(d) => println!("{:>2} PASS {name}: {d} [{ms} ms]", k + 1),
            Err(d) => {
                println!("{:>2} FAIL {name}: {d} [{ms} ms]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
