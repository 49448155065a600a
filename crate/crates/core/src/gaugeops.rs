//! U(1) gauge transformations restricted to their effect on `A_φ`.
//!
//! An azimuthal phase `S = exp(i·e·c·φ)` shifts `A_φ` by a constant; letting
//! `c` jump between polar sectors gives a piecewise-constant shift. Natural
//! units `ħ = c = 1` throughout.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::measures::{mu_addit, mu_inv};
use crate::piecewise::{Piece, PieceExpr, PiecewiseField};

const SNAP: f64 = 1e-12;
const QUANTIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShiftError {
    #[error("shifts: at least one interval is required")]
    Empty,
    #[error("shifts[{index}].{field}: {reason}")]
    InvalidInterval {
        index: usize,
        field: &'static str,
        reason: String,
    },
    #[error("quantization_unit: must be positive and finite, got {0}")]
    InvalidUnit(f64),
    #[error("shifts[{index}].value: {value} is not an integer multiple of {unit}")]
    NotQuantized { index: usize, value: f64, unit: f64 },
    #[error("mu_inv changed from {before} to {after} under shift `{label}`")]
    InvarianceViolated { label: String, before: f64, after: f64 },
    #[error("electric charge must be positive and finite, got {0}")]
    InvalidCharge(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftInterval {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

/// Piecewise-constant change of `A_φ`, tiling `(0, π)` like a field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeShift {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    pub quantization_unit: Option<f64>,
    pub shifts: Vec<ShiftInterval>,
}

impl GaugeShift {
    pub fn new(shifts: Vec<ShiftInterval>, quantization_unit: Option<f64>) -> Result<Self, ShiftError> {
        GaugeShift {
            label: String::new(),
            quantization_unit,
            shifts,
        }
        .validated()
    }

    /// Checks the tiling and quantization, snapping breakpoints within `1e-12`.
    pub fn validated(mut self) -> Result<Self, ShiftError> {
        if self.shifts.is_empty() {
            return Err(ShiftError::Empty);
        }
        let bad = |index, field, reason: String| ShiftError::InvalidInterval { index, field, reason };
        let last = self.shifts.len() - 1;
        for index in 0..self.shifts.len() {
            let prev_hi = if index == 0 { 0.0 } else { self.shifts[index - 1].hi };
            let s = &mut self.shifts[index];
            if !s.value.is_finite() {
                return Err(bad(index, "value", "must be finite".into()));
            }
            if !s.lo.is_finite() || (s.lo - prev_hi).abs() > SNAP {
                return Err(bad(index, "lo", format!("must equal {prev_hi}, got {}", s.lo)));
            }
            s.lo = prev_hi;
            if index == last {
                if !s.hi.is_finite() || (s.hi - PI).abs() > SNAP {
                    return Err(bad(index, "hi", format!("last interval must end at π, got {}", s.hi)));
                }
                s.hi = PI;
            }
            if !s.hi.is_finite() || s.hi <= s.lo {
                return Err(bad(index, "hi", format!("must exceed lo {}, got {}", s.lo, s.hi)));
            }
        }
        if let Some(unit) = self.quantization_unit {
            if !(unit.is_finite() && unit > 0.0) {
                return Err(ShiftError::InvalidUnit(unit));
            }
            for (index, s) in self.shifts.iter().enumerate() {
                let ratio = s.value / unit;
                if (ratio - ratio.round()).abs() > QUANTIZATION_TOLERANCE {
                    return Err(ShiftError::NotQuantized {
                        index,
                        value: s.value,
                        unit,
                    });
                }
            }
        }
        Ok(self)
    }

    pub fn uniform(value: f64) -> Self {
        Self::new(vec![ShiftInterval { lo: 0.0, hi: PI, value }], None).expect("uniform shift tiles [0, π]")
    }

    /// `values[i]` on `(cuts[i], cuts[i+1])` with `cuts = [0, breaks…, π]`.
    pub fn from_steps(breaks: &[f64], values: &[f64]) -> Result<Self, ShiftError> {
        assert_eq!(breaks.len() + 1, values.len(), "one more value than breaks");
        let mut cuts = Vec::with_capacity(breaks.len() + 2);
        cuts.push(0.0);
        cuts.extend_from_slice(breaks);
        cuts.push(PI);
        let shifts = cuts
            .windows(2)
            .zip(values)
            .map(|(w, &value)| ShiftInterval {
                lo: w[0],
                hi: w[1],
                value,
            })
            .collect();
        Self::new(shifts, None)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn display_label(&self) -> String {
        if !self.label.is_empty() {
            return self.label.clone();
        }
        self.shifts
            .iter()
            .map(|s| format!("{}", s.value))
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn value_at(&self, theta: f64) -> f64 {
        let idx = self
            .shifts
            .partition_point(|s| s.hi <= theta)
            .min(self.shifts.len() - 1);
        self.shifts[idx].value
    }

    pub fn negated(&self) -> Self {
        GaugeShift {
            label: format!("−({})", self.display_label()),
            quantization_unit: self.quantization_unit,
            shifts: self
                .shifts
                .iter()
                .map(|s| ShiftInterval { value: -s.value, ..*s })
                .collect(),
        }
    }

    /// Pointwise sum on the common refinement.
    pub fn combined(&self, other: &GaugeShift) -> GaugeShift {
        let shifts = refine(&self.breaks(), &other.breaks())
            .windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                ShiftInterval {
                    lo: w[0],
                    hi: w[1],
                    value: self.value_at(mid) + other.value_at(mid),
                }
            })
            .collect();
        GaugeShift {
            label: format!("{}+{}", self.display_label(), other.display_label()),
            quantization_unit: None,
            shifts,
        }
    }

    /// The shift read as a potential on its own: a vacuum-like field.
    pub fn to_field(&self, charge_g: f64) -> PiecewiseField {
        let pieces = self
            .shifts
            .iter()
            .map(|s| Piece::new(s.lo, s.hi, PieceExpr::constant(s.value)))
            .collect();
        PiecewiseField::new(self.display_label(), charge_g, pieces).expect("validated shift tiles [0, π]")
    }

    fn breaks(&self) -> Vec<f64> {
        self.shifts.iter().skip(1).map(|s| s.lo).collect()
    }
}

/// `[0, a ∪ b (sorted, deduplicated within 1e-12)…, π]`.
fn refine(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut cuts: Vec<f64> = a.iter().chain(b).copied().collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() <= SNAP);
    let mut out = Vec::with_capacity(cuts.len() + 2);
    out.push(0.0);
    out.extend(cuts.into_iter().filter(|&c| c > SNAP && c < PI - SNAP));
    out.push(PI);
    out
}

/// `A_φ + c` on the common refinement of the field's pieces and the shift's
/// intervals.
pub fn apply_shift(field: &PiecewiseField, shift: &GaugeShift) -> PiecewiseField {
    let field_breaks: Vec<f64> = field.breakpoints().collect();
    let cuts = refine(&field_breaks, &shift.breaks());
    let pieces = cuts
        .windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            let idx = field
                .pieces()
                .partition_point(|p| p.hi <= mid)
                .min(field.pieces().len() - 1);
            let expr = field.pieces()[idx].expr.shifted(shift.value_at(mid));
            Piece::new(w[0], w[1], expr)
        })
        .collect();
    let label = format!("{} ⊕ [{}]", field.label(), shift.display_label());
    PiecewiseField::new(label, field.charge_g(), pieces).expect("refinement of valid tilings is valid")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceRow {
    pub shift_label: String,
    pub mu_inv_before: f64,
    pub mu_inv_after: f64,
    pub mu_addit_before: f64,
    pub mu_addit_after: f64,
}

/// Both measures before and after each shift. Fails if `mu_inv` moves by more
/// than `1e-12·max(1, |g|)`.
pub fn invariance_demo(field: &PiecewiseField, shifts: &[GaugeShift]) -> Result<Vec<InvarianceRow>, ShiftError> {
    let before_inv = mu_inv(field);
    let before_addit = mu_addit(field);
    let tol = 1e-12 * field.charge_g().abs().max(1.0);
    shifts
        .iter()
        .map(|shift| {
            let shifted = apply_shift(field, shift);
            let row = InvarianceRow {
                shift_label: shift.display_label(),
                mu_inv_before: before_inv,
                mu_inv_after: mu_inv(&shifted),
                mu_addit_before: before_addit,
                mu_addit_after: mu_addit(&shifted),
            };
            if (row.mu_inv_after - row.mu_inv_before).abs() > tol {
                return Err(ShiftError::InvarianceViolated {
                    label: row.shift_label,
                    before: row.mu_inv_before,
                    after: row.mu_inv_after,
                });
            }
            Ok(row)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantizationVerdict {
    /// `2eg` rounded to the nearest integer.
    pub n: i64,
    pub twice_eg: f64,
    pub satisfied: bool,
}

/// The Dirac condition `2eg ∈ ℤ`, i.e. the phase `exp(2ieg·φ)` relating the
/// two Dirac gauges is single-valued around the axis.
pub fn dirac_quantization_check(e: f64, g: f64) -> Result<QuantizationVerdict, ShiftError> {
    if !(e.is_finite() && e > 0.0) {
        return Err(ShiftError::InvalidCharge(e));
    }
    let twice_eg = 2.0 * e * g;
    let n = twice_eg.round();
    Ok(QuantizationVerdict {
        n: n as i64,
        twice_eg,
        satisfied: g.is_finite() && (twice_eg - n).abs() <= QUANTIZATION_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauges::{make_gauge, GaugeKind};
    use crate::measures::{classify_regularity, Verdict};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn assert_same_values(a: &PiecewiseField, b: &PiecewiseField) {
        for i in 0..1000 {
            let t = (i as f64 + 0.5) * PI / 1000.0;
            assert_abs_diff_eq!(a.evaluate(t).unwrap(), b.evaluate(t).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn shift_examples() {
        let dplus = make_gauge(GaugeKind::DiracPlus, 1.0);
        let dminus = apply_shift(&dplus, &GaugeShift::uniform(2.0));
        assert_same_values(&dminus, &make_gauge(GaugeKind::DiracMinus, 1.0));
        assert_eq!(dminus.pieces().len(), 1);

        let split = GaugeShift::from_steps(&[FRAC_PI_2], &[0.0, 2.0]).unwrap();
        let wy = apply_shift(&dplus, &split);
        assert_same_values(&wy, &make_gauge(GaugeKind::WuYang, 1.0));
        assert_eq!(wy.pieces(), make_gauge(GaugeKind::WuYang, 1.0).pieces());

        let s = make_gauge(GaugeKind::Schwinger, 1.0);
        assert_eq!(apply_shift(&s, &GaugeShift::uniform(0.0)).pieces(), s.pieces());
    }

    #[test]
    fn invariance_demo_examples() {
        let s = make_gauge(GaugeKind::Schwinger, 1.0);
        // {0, +2} would merely move the jump to the equator; {0, −2} adds one
        let split = GaugeShift::from_steps(&[FRAC_PI_2], &[0.0, -2.0]).unwrap();
        let rows = invariance_demo(&s, &[split, GaugeShift::uniform(0.7)]).unwrap();
        assert_abs_diff_eq!(rows[0].mu_inv_after, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rows[0].mu_addit_after, 3.0, epsilon = 1e-15);
        assert_eq!(rows[0].mu_addit_before, 1.0);
        assert_eq!(rows[1].mu_addit_after, rows[1].mu_addit_before);
        assert_eq!(rows[1].mu_inv_after, rows[1].mu_inv_before);

        let zero = PiecewiseField::uniform("0", 1.0, PieceExpr::ZERO).unwrap();
        let step = GaugeShift::from_steps(&[FRAC_PI_2], &[-1.0, 1.0]).unwrap();
        let rows = invariance_demo(&zero, std::slice::from_ref(&step)).unwrap();
        assert_eq!((rows[0].mu_inv_before, rows[0].mu_inv_after), (0.0, 0.0));
        assert_eq!((rows[0].mu_addit_before, rows[0].mu_addit_after), (0.0, 2.0));
        assert_eq!(
            apply_shift(&zero, &step).pieces(),
            make_gauge(GaugeKind::VacuumWuYang, 1.0).pieces()
        );
    }

    #[test]
    fn quantization_examples() {
        let v = dirac_quantization_check(1.0, 0.5).unwrap();
        assert!(v.satisfied);
        assert_eq!(v.n, 1);
        assert!(!dirac_quantization_check(1.0, 0.3).unwrap().satisfied);
        let v = dirac_quantization_check(2.0, 0.75).unwrap();
        assert!(v.satisfied);
        assert_eq!(v.n, 3);
        assert!(dirac_quantization_check(0.0, 1.0).is_err());
        assert!(dirac_quantization_check(-1.0, 1.0).is_err());
    }

    #[test]
    fn shift_validation() {
        let iv = |lo, hi, value| ShiftInterval { lo, hi, value };
        assert_eq!(GaugeShift::new(vec![], None), Err(ShiftError::Empty));
        assert!(matches!(
            GaugeShift::new(vec![iv(0.0, 1.0, 0.0), iv(1.2, PI, 0.0)], None),
            Err(ShiftError::InvalidInterval {
                index: 1,
                field: "lo",
                ..
            })
        ));
        assert!(matches!(
            GaugeShift::new(vec![iv(0.0, 3.0, 0.0)], None),
            Err(ShiftError::InvalidInterval {
                index: 0,
                field: "hi",
                ..
            })
        ));
        assert!(GaugeShift::new(vec![iv(0.0, PI, 1.0)], Some(0.5)).is_ok());
        assert!(matches!(
            GaugeShift::new(vec![iv(0.0, 1.0, 1.0), iv(1.0, PI, 0.3)], Some(0.5)),
            Err(ShiftError::NotQuantized { index: 1, .. })
        ));
        assert!(matches!(
            GaugeShift::new(vec![iv(0.0, PI, 1.0)], Some(0.0)),
            Err(ShiftError::InvalidUnit(_))
        ));
    }

    #[test]
    fn shift_json_shape() {
        let json = r#"{"quantization_unit": null, "shifts": [{"lo": 0, "hi": 1.5707963267948966, "value": 0}, {"lo": 1.5707963267948966, "hi": 3.141592653589793, "value": 2}]}"#;
        let shift: GaugeShift = serde_json::from_str(json).unwrap();
        let shift = shift.validated().unwrap();
        assert_eq!(shift.shifts.len(), 2);
        assert_eq!(shift.quantization_unit, None);
        let back: GaugeShift = serde_json::from_str(&serde_json::to_string(&shift).unwrap()).unwrap();
        assert_eq!(back, shift);
    }

    #[test]
    fn compensated_classification_is_equivariant() {
        let split = GaugeShift::from_steps(&[1.0, 2.0], &[0.5, -1.5, 2.0]).unwrap();
        for kind in GaugeKind::ALL {
            let f = make_gauge(kind, 1.0);
            let shifted = apply_shift(&f, &split);
            let a = classify_regularity(&shifted, Some(&split));
            let b = classify_regularity(&f, None);
            assert_eq!(a.verdict, b.verdict);
            assert_abs_diff_eq!(a.endpoint_limits.0, b.endpoint_limits.0, epsilon = 1e-14);
            assert_abs_diff_eq!(a.endpoint_limits.1, b.endpoint_limits.1, epsilon = 1e-14);
        }
        let zero = PiecewiseField::uniform("0", 1.0, PieceExpr::ZERO).unwrap();
        assert_eq!(
            classify_regularity(&apply_shift(&zero, &split), Some(&split)).verdict,
            Verdict::Regular
        );
    }
}
