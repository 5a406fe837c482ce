//! `step`: one signed step on a given matrix.

use serde::{Deserialize, Serialize};

use super::format::{g17, MatrixJson};
use crate::dynamics::phi_star;
use crate::error::Result;
use crate::linalg::SymTridiag;
use crate::strategy::{ShiftStrategy, StrategyKind};

/// Where the shift comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShiftSource {
    Fixed(f64),
    Strategy(StrategyKind),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub input: MatrixJson,
    /// `"fixed"` or a strategy name.
    pub shift_source: String,
    pub shift: f64,
    pub next: MatrixJson,
    pub ratio_last: f64,
    pub det_sign: i8,
}

pub fn cmd_step(t: &SymTridiag, source: ShiftSource) -> Result<StepReport> {
    let (shift, name) = match source {
        ShiftSource::Fixed(s) => (s, "fixed".to_string()),
        ShiftSource::Strategy(k) => (k.shift(t), k.name()),
    };
    let r = phi_star(t, shift)?;
    Ok(StepReport {
        input: t.into(),
        shift_source: name,
        shift,
        next: (&r.next).into(),
        ratio_last: r.ratio_last,
        det_sign: r.det_sign,
    })
}

impl StepReport {
    pub fn to_text(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|&x| g17(x)).collect::<Vec<_>>().join(",");
        format!(
            "shift = {} ({})\ndiag = {}\nsub = {}\nratio_last = {}\ndet_sign = {}\n",
            g17(self.shift),
            self.shift_source,
            list(&self.next.diag),
            list(&self.next.sub),
            g17(self.ratio_last),
            self.det_sign
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_instance() {
        let t = SymTridiag::new(vec![1.0, 1.0], vec![1.0]).unwrap();
        let r = cmd_step(&t, ShiftSource::Fixed(0.0)).unwrap();
        assert!((r.next.diag[0] - 2.0).abs() < 1e-14);
        assert!(r.next.diag[1].abs() < 1e-14 && r.next.sub[0].abs() < 1e-14);
        assert!(r.to_text().contains("det_sign = 0"));
    }

    #[test]
    fn wilkinson_shift_is_reported() {
        let t = SymTridiag::new(vec![1.0, 3.0], vec![1.0]).unwrap();
        let r = cmd_step(&t, ShiftSource::Strategy(StrategyKind::Wilkinson)).unwrap();
        assert!((r.shift - (2.0 + 2f64.sqrt())).abs() < 1e-14);
        assert!(r.to_text().starts_with("shift = 3.41421356"));
    }
}
