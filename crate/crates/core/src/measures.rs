//! Singularity measures of a potential `A_φ(θ)` on the identified interval.
//!
//! * `mu_inv` is the half-sum of signed jumps over every discontinuity,
//!   including the identified endpoint. It does not change under
//!   piecewise-constant gauge shifts.
//! * `mu_addit` is the half-sum of absolute jumps and does change.
//!
//! The endpoint jump is oriented as `f(0+0) − f(π−0)`.

use serde::{Deserialize, Serialize};

use crate::gaugeops::{apply_shift, GaugeShift};
use crate::piecewise::{JumpRecord, PiecewiseField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub record: JumpRecord,
    pub signed_half_jump: f64,
    pub abs_half_jump: f64,
}

impl From<JumpRecord> for Contribution {
    fn from(record: JumpRecord) -> Self {
        Self {
            record,
            signed_half_jump: 0.5 * record.signed_jump,
            abs_half_jump: 0.5 * record.abs_jump,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub label: String,
    pub charge_g: f64,
    pub mu_inv: f64,
    pub mu_addit: f64,
    pub contributions: Vec<Contribution>,
}

pub fn mu_inv(field: &PiecewiseField) -> f64 {
    field.discontinuities().iter().map(|r| 0.5 * r.signed_jump).sum()
}

pub fn mu_addit(field: &PiecewiseField) -> f64 {
    field.discontinuities().iter().map(|r| 0.5 * r.abs_jump).sum()
}

pub fn full_report(field: &PiecewiseField) -> MeasureReport {
    let contributions: Vec<Contribution> = field.discontinuities().into_iter().map(Contribution::from).collect();
    MeasureReport {
        label: field.label().to_string(),
        charge_g: field.charge_g(),
        mu_inv: contributions.iter().map(|c| c.signed_half_jump).sum(),
        mu_addit: contributions.iter().map(|c| c.abs_half_jump).sum(),
        contributions,
    }
}

/// `−½ Σ ∫ f′ dθ` over the pieces. Equal to `mu_inv` because all jumps
/// plus all smooth variation must add up to zero around the circle.
pub fn circle_closure(field: &PiecewiseField) -> f64 {
    -0.5 * field
        .pieces()
        .iter()
        .map(|p| p.expr.derivative_integral(p.lo, p.hi))
        .sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Regular,
    Irregular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    pub verdict: Verdict,
    /// `(f(0+0), f(π−0))`, after removing the compensation if one was given.
    pub endpoint_limits: (f64, f64),
    pub compensated: bool,
}

/// Regular iff the potential vanishes on both half-axes.
///
/// With a compensation `c`, the field is read as the gauge image of some
/// `A` under `A ↦ A + c`, and `A = field − c` is tested instead.
pub fn classify_regularity(field: &PiecewiseField, compensation: Option<&GaugeShift>) -> RegularityVerdict {
    let tol = field.jump_tolerance();
    let (north, south) = match compensation {
        None => (field.north_limit(), field.south_limit()),
        Some(shift) => {
            let restored = apply_shift(field, &shift.negated());
            (restored.north_limit(), restored.south_limit())
        }
    };
    let verdict = if north.abs() <= tol && south.abs() <= tol {
        Verdict::Regular
    } else {
        Verdict::Irregular
    };
    RegularityVerdict {
        verdict,
        endpoint_limits: (north, south),
        compensated: compensation.is_some(),
    }
}
