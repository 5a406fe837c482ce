//! One signed step by hand: factor, check the signs, apply.

use tridiag_shift::dynamics::{phi_star, step_inverse};
use tridiag_shift::linalg::{eigenvalues, qr_star};
use tridiag_shift::SymTridiag;

fn main() -> tridiag_shift::Result<()> {
    let t = SymTridiag::new(vec![1.0, 2.0, 4.0], vec![0.5, 0.25])?;
    let s = 3.9;

    let (q, r) = qr_star(&t, s)?;
    println!("det Q* = {:+.3}", q.to_dense().det());
    println!("diag R* = {:?}", r.main);

    let out = phi_star(&t, s)?;
    println!("F_s(T): diag {:?}", out.next.diag());
    println!("        sub  {:?}", out.next.sub());
    println!("b: {:.3e} -> {:.3e} (ratio_last {:.3e})", t.b(), out.next.b(), out.ratio_last);
    println!("spectrum before {:?}", eigenvalues(&t)?);
    println!("spectrum after  {:?}", eigenvalues(&out.next)?);

    let back = step_inverse(&out.next, s)?;
    println!("|F_s^-1 F_s T - T| = {:.2e}", back.dist(&t));

    // a shift at an eigenvalue deflates in one step
    let lambda = eigenvalues(&t)?;
    let d = phi_star(&t, lambda[1])?;
    println!("s = λ_1: b = {:.2e}, corner = {:.15}", d.next.b(), d.next.corner());
    Ok(())
}
