//! A point near the deflation set written as (base, fiber), and what one
//! step does to each coordinate.

use tridiag_shift::dynamics::phi_star;
use tridiag_shift::geometry::{project, tubular_coords, tubular_inverse, SpectrumInfo};
use tridiag_shift::SymTridiag;

fn main() -> tridiag_shift::Result<()> {
    let info = SpectrumInfo::new(&[1.0, 2.0, 4.0])?;
    let i = 1;
    let lead = SymTridiag::new(vec![1.5, 3.5], vec![1.25f64.sqrt()])?;
    let base = SymTridiag::with_corner(&lead, info.lambda[i]);

    for b in [1e-1, 1e-2, 1e-3] {
        let t = tubular_inverse(&base, b, &info, i)?;
        let z = tubular_coords(&t, &info, i)?;
        let s = 2.05;
        let r = phi_star(&t, s)?;
        let moved = project(&r.next, &info, i)?;
        let stepped_base = phi_star(&base, s)?.next;
        println!(
            "b = {b:.0e}: round trip {:.1e}, ‖T - Π(T)‖/|b| = {:.4}, b' = {:.4e} = ratio·b, Π(F T) vs F(Π T) {:.1e}",
            z.base.max_diff(&base).max((z.fiber - b).abs()),
            t.dist(&z.base) / b,
            r.next.b(),
            moved.max_diff(&stepped_base),
        );
    }
    Ok(())
}
