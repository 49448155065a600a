//! Cartesian monopole potentials and their `(0/0)` behaviour on the `x₃`-axis.
//!
//! Near an axis point `z·ê₃` the potential is probed along `z·ê₃ + ε·m`. A
//! divergent limit is represented by the pair `(order, coefficient)` meaning
//! `A ≈ coefficient·ε^(−order)`, never by a floating-point infinity.
//!
//! Conventions: `ê_φ(m) = (−sin φ, cos φ, 0)` (the standard azimuthal unit
//! vector) and `A = A_φ/(r sin θ)·ê_φ`. With these the Cartesian formulas
//! below reproduce `A_φ = g cos θ`, `g (cos θ ∓ 1)` exactly, and every axis
//! limit takes the form `C·(−m₂, m₁, 0)/(m₁² + m₂²)` where `C` is the
//! spherical limit of `A_φ` along the approach.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parallel::{map_slice, Execution};

/// Relative distance to the axis below which a point counts as on it.
const AXIS_TOLERANCE: f64 = 1e-12;
const UNIT_TOLERANCE: f64 = 1e-12;
const DEGENERATE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CartesianError {
    #[error("point {0:?} lies on the singular set of the gauge; use axis_probe")]
    OnSingularSet(Vector3),
    #[error("approach direction {0:?} is parallel to the axis")]
    DegenerateDirection(Vector3),
    #[error("vector {0:?} must have unit length")]
    NotUnit(Vector3),
    #[error("closed-form limits need n = ±ê₃, got {0:?}")]
    UnsupportedOrientation(Vector3),
    #[error("ε schedule must be strictly decreasing positive values with at least two entries")]
    BadSchedule,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vector3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl Vector3 {
    pub const ZERO: Vector3 = Vector3::new(0.0, 0.0, 0.0);
    pub const E3: Vector3 = Vector3::new(0.0, 0.0, 1.0);

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn dot(&self, o: &Vector3) -> f64 {
        self.x1 * o.x1 + self.x2 * o.x2 + self.x3 * o.x3
    }

    pub fn cross(&self, o: &Vector3) -> Vector3 {
        Vector3::new(
            self.x2 * o.x3 - self.x3 * o.x2,
            self.x3 * o.x1 - self.x1 * o.x3,
            self.x1 * o.x2 - self.x2 * o.x1,
        )
    }

    pub fn norm(&self) -> f64 {
        self.x1.hypot(self.x2).hypot(self.x3)
    }

    pub fn normalized(&self) -> Option<Vector3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| *self * (1.0 / n))
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }
}

impl Add for Vector3 {
    type Output = Vector3;
    fn add(self, o: Vector3) -> Vector3 {
        Vector3::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for Vector3 {
    type Output = Vector3;
    fn sub(self, o: Vector3) -> Vector3 {
        Vector3::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Mul<f64> for Vector3 {
    type Output = Vector3;
    fn mul(self, s: f64) -> Vector3 {
        Vector3::new(self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

impl Neg for Vector3 {
    type Output = Vector3;
    fn neg(self) -> Vector3 {
        self * -1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CartesianKind {
    /// `−g [r×n](r·n) / (r (r² − (r·n)²))`, singular on the whole axis.
    SchwingerCartesian,
    /// `g [r×n] / (r (r + r·n))`, singular on the half-axis opposite `n`.
    DiracPlusCartesian,
    /// `−g [r×n] / (r (r − r·n))`, singular on the half-axis along `n`.
    DiracMinusCartesian,
}

impl CartesianKind {
    pub const ALL: [CartesianKind; 3] = [
        CartesianKind::SchwingerCartesian,
        CartesianKind::DiracPlusCartesian,
        CartesianKind::DiracMinusCartesian,
    ];

    pub fn from_cli_name(name: &str) -> Option<Self> {
        match name {
            "schwinger" => Some(CartesianKind::SchwingerCartesian),
            "dirac-plus" => Some(CartesianKind::DiracPlusCartesian),
            "dirac-minus" => Some(CartesianKind::DiracMinusCartesian),
            _ => None,
        }
    }

    pub fn cli_name(self) -> &'static str {
        match self {
            CartesianKind::SchwingerCartesian => "schwinger",
            CartesianKind::DiracPlusCartesian => "dirac-plus",
            CartesianKind::DiracMinusCartesian => "dirac-minus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartesianGauge {
    pub kind: CartesianKind,
    pub g: f64,
    pub n: Vector3,
}

impl CartesianGauge {
    pub fn new(kind: CartesianKind, g: f64, n: Vector3) -> Result<Self, CartesianError> {
        if !n.is_finite() || (n.norm() - 1.0).abs() > UNIT_TOLERANCE {
            return Err(CartesianError::NotUnit(n));
        }
        Ok(Self { kind, g, n })
    }

    /// Monopole oriented along `+x₃`.
    pub fn along_e3(kind: CartesianKind, g: f64) -> Self {
        Self {
            kind,
            g,
            n: Vector3::E3,
        }
    }

    /// Exact potential at `r`.
    ///
    /// `r ± r·n` is evaluated as `|r×n|²/(r ∓ r·n)` when the direct form
    /// would cancel, so points very close to the singular half-axis keep full
    /// relative precision.
    pub fn eval_potential(&self, r: Vector3) -> Result<Vector3, CartesianError> {
        let radius = r.norm();
        let along = r.dot(&self.n);
        let rxn = r.cross(&self.n);
        let perp2 = rxn.dot(&rxn);
        let on_axis = radius == 0.0 || perp2 <= (AXIS_TOLERANCE * radius).powi(2);
        let g = self.g;
        match self.kind {
            CartesianKind::SchwingerCartesian => {
                if on_axis {
                    return Err(CartesianError::OnSingularSet(r));
                }
                Ok(rxn * (-g * along / (radius * perp2)))
            }
            CartesianKind::DiracPlusCartesian => {
                if radius == 0.0 || (on_axis && along < 0.0) {
                    return Err(CartesianError::OnSingularSet(r));
                }
                let denom = if along >= 0.0 {
                    radius + along
                } else {
                    perp2 / (radius - along)
                };
                Ok(rxn * (g / (radius * denom)))
            }
            CartesianKind::DiracMinusCartesian => {
                if radius == 0.0 || (on_axis && along > 0.0) {
                    return Err(CartesianError::OnSingularSet(r));
                }
                let denom = if along <= 0.0 {
                    radius - along
                } else {
                    perp2 / (radius + along)
                };
                Ok(rxn * (-g / (radius * denom)))
            }
        }
    }
}

/// `(−m₂, m₁, 0)/√(m₁² + m₂²)`.
pub fn azimuthal_unit(m: &Vector3) -> Vector3 {
    let s = m.x1.hypot(m.x2);
    Vector3::new(-m.x2 / s, m.x1 / s, 0.0)
}

fn check_direction(m: &Vector3) -> Result<(), CartesianError> {
    if !m.is_finite() || (m.norm() - 1.0).abs() > UNIT_TOLERANCE {
        return Err(CartesianError::NotUnit(*m));
    }
    if m.x1.hypot(m.x2) <= DEGENERATE_TOLERANCE {
        return Err(CartesianError::DegenerateDirection(*m));
    }
    Ok(())
}

/// Geometric schedule `10⁻¹ … 10⁻⁷`, 13 points.
pub fn default_schedule() -> Vec<f64> {
    (0..13).map(|i| 10f64.powf(-1.0 - 0.5 * i as f64)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisProbeResult {
    /// Exponent `p` in `|A| ∼ ε^(−p)`, floored at 0 for non-divergent limits.
    pub divergence_order: f64,
    /// Raw least-squares exponent before flooring.
    pub fitted_exponent: f64,
    /// Leading coefficient of `ε^(−round(p))`, extrapolated to `ε → 0`.
    pub coefficient: Vector3,
    /// Cosine similarity of `coefficient` with `ê_φ(m)`; 0 when the
    /// coefficient vanishes.
    pub direction_match: f64,
    /// RMS residual of the log-log fit.
    pub fit_residual: f64,
}

pub fn axis_probe(
    gauge: &CartesianGauge,
    z: f64,
    m: Vector3,
    schedule: &[f64],
) -> Result<AxisProbeResult, CartesianError> {
    axis_probe_with(gauge, z, m, schedule, Execution::Sequential)
}

pub fn axis_probe_with(
    gauge: &CartesianGauge,
    z: f64,
    m: Vector3,
    schedule: &[f64],
    exec: Execution,
) -> Result<AxisProbeResult, CartesianError> {
    check_direction(&m)?;
    let ordered = schedule.windows(2).all(|w| w[1] < w[0]);
    if schedule.len() < 2 || !ordered || schedule.iter().any(|&e| e.is_nan() || e <= 0.0) {
        return Err(CartesianError::BadSchedule);
    }
    let base = Vector3::E3 * z;
    let samples = map_slice(exec, schedule, |&eps| gauge.eval_potential(base + m * eps));
    let samples = samples.into_iter().collect::<Result<Vec<_>, _>>()?;

    // least squares on (log ε, log |A|), skipping exact zeros
    let points: Vec<(f64, f64)> = schedule
        .iter()
        .zip(&samples)
        .filter(|(_, a)| a.norm() > 0.0)
        .map(|(e, a)| (e.ln(), a.norm().ln()))
        .collect();
    let (fitted_exponent, fit_residual) = if points.len() < 2 {
        (0.0, 0.0)
    } else {
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let rss: f64 = points.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
        (-slope, (rss / n).sqrt())
    };
    let divergence_order = fitted_exponent.max(0.0);

    // c(ε) = ε^k A(ε) at the two finest points, extrapolated linearly to ε = 0
    let k = divergence_order.round() as i32;
    let last = schedule.len() - 1;
    let (e1, e2) = (schedule[last - 1], schedule[last]);
    let c1 = samples[last - 1] * e1.powi(k);
    let c2 = samples[last] * e2.powi(k);
    let coefficient = (c2 * e1 - c1 * e2) * (1.0 / (e1 - e2));

    let norm = coefficient.norm();
    let direction_match = if norm > 0.0 {
        coefficient.dot(&azimuthal_unit(&m)) / norm
    } else {
        0.0
    };
    Ok(AxisProbeResult {
        divergence_order,
        fitted_exponent,
        coefficient,
        direction_match,
        fit_residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormLimit {
    pub order: u32,
    /// For order 1 the coefficient of `1/ε`; for order 0 the finite limit.
    pub coefficient: Vector3,
    /// The scalar `C` in `coefficient = C·(−m₂, m₁, 0)/(m₁² + m₂²)`.
    pub azimuthal_strength: f64,
}

/// Analytic axis limit for `n = ±ê₃`.
///
/// | gauge     | z > 0     | z = 0        | z < 0     |
/// |-----------|-----------|--------------|-----------|
/// | Schwinger | `+g`      | `g m₃`       | `−g`      |
/// | Dirac(+)  | finite, 0 | `g (m₃ − 1)` | `−2g`     |
/// | Dirac(−)  | `+2g`     | `g (m₃ + 1)` | finite, 0 |
///
/// The entries are `C`, the spherical `A_φ` seen along the approach.
pub fn closed_form_axis_limit(gauge: &CartesianGauge, z: f64, m: Vector3) -> Result<ClosedFormLimit, CartesianError> {
    check_direction(&m)?;
    let n = gauge.n;
    let flipped = if (n - Vector3::E3).norm() <= UNIT_TOLERANCE {
        false
    } else if (n + Vector3::E3).norm() <= UNIT_TOLERANCE {
        true
    } else {
        return Err(CartesianError::UnsupportedOrientation(n));
    };
    // With n = −ê₃ the Schwinger potential is unchanged and the two Dirac
    // potentials trade places.
    let kind = match (gauge.kind, flipped) {
        (CartesianKind::DiracPlusCartesian, true) => CartesianKind::DiracMinusCartesian,
        (CartesianKind::DiracMinusCartesian, true) => CartesianKind::DiracPlusCartesian,
        (k, _) => k,
    };
    let g = gauge.g;
    let m3 = m.x3;
    let strength = match kind {
        CartesianKind::SchwingerCartesian if z == 0.0 => Some(g * m3),
        CartesianKind::SchwingerCartesian => Some(g * z.signum()),
        CartesianKind::DiracPlusCartesian if z == 0.0 => Some(g * (m3 - 1.0)),
        CartesianKind::DiracPlusCartesian if z < 0.0 => Some(-2.0 * g),
        CartesianKind::DiracPlusCartesian => None,
        CartesianKind::DiracMinusCartesian if z == 0.0 => Some(g * (m3 + 1.0)),
        CartesianKind::DiracMinusCartesian if z > 0.0 => Some(2.0 * g),
        CartesianKind::DiracMinusCartesian => None,
    };
    Ok(match strength {
        Some(c) => {
            let rho2 = m.x1 * m.x1 + m.x2 * m.x2;
            ClosedFormLimit {
                order: 1,
                coefficient: Vector3::new(-m.x2, m.x1, 0.0) * (c / rho2),
                azimuthal_strength: c,
            }
        }
        None => ClosedFormLimit {
            order: 0,
            coefficient: Vector3::ZERO,
            azimuthal_strength: 0.0,
        },
    })
}

/// Spherical `A_φ` recovered from the Cartesian vector at an off-axis point:
/// `A_φ = (r sin θ)·(A·ê_φ)`.
pub fn azimuthal_component(gauge: &CartesianGauge, r: Vector3) -> Result<f64, CartesianError> {
    let a = gauge.eval_potential(r)?;
    let rho = r.x1.hypot(r.x2);
    Ok(rho * a.dot(&azimuthal_unit(&r)))
}
