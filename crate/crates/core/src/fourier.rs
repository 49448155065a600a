//! Trigonometric series of a field on the identified interval.
//!
//! `θ ∈ [0, π]` is mapped to `x = 2θ − π ∈ [−π, π]`, so identifying the
//! endpoints of `[0, π]` is the same as the periodic identification of `±π`.
//! With `F(x) = f((x + π)/2)`:
//!
//! ```text
//! a_k = (1/π) ∫ F(x) cos kx dx = (2/π)(−1)^k ∫_0^π f(θ) cos 2kθ dθ
//! b_k = (1/π) ∫ F(x) sin kx dx = (2/π)(−1)^k ∫_0^π f(θ) sin 2kθ dθ
//! S_n(x) = a_0/2 + Σ_{k=1}^{n} (a_k cos kx + b_k sin kx)
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parallel::{map_range, Execution};
use crate::piecewise::{JumpRecord, PieceExpr, PiecewiseField};
use crate::quadrature::GaussLegendre;

pub const QUADRATURE_ORDER: usize = 64;
/// Oscillation cycles of `cos 2kθ` per 64-point panel; ten cycles keep the
/// rule at machine precision.
const CYCLES_PER_PANEL: f64 = 10.0;
/// Scan points per side of a jump when locating the first Gibbs lobe.
const LOBE_SCAN_POINTS: usize = 128;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FourierError {
    #[error("series needs at least one term")]
    NoTerms,
    #[error("requested {requested} terms but the series has {available}")]
    OutOfRange { requested: usize, available: usize },
    #[error("x = {0} lies outside [−π, π]")]
    PointOutOfRange(f64),
    #[error("no discontinuity at x = {0}")]
    NoJumpHere(f64),
    #[error("gibbs lobe needs n ≥ 64, got {0}")]
    TooFewTerms(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSeries {
    pub a0: f64,
    /// `a[k-1] = a_k`.
    pub a: Vec<f64>,
    /// `b[k-1] = b_k`.
    pub b: Vec<f64>,
    pub terms: usize,
    pub mapping: String,
}

impl FourierSeries {
    pub fn partial_sum(&self, x: f64, n: usize) -> Result<f64, FourierError> {
        if n == 0 || n > self.terms {
            return Err(FourierError::OutOfRange {
                requested: n,
                available: self.terms,
            });
        }
        if !(-PI..=PI).contains(&x) {
            return Err(FourierError::PointOutOfRange(x));
        }
        Ok(self.sum_unchecked(x, n))
    }

    /// Partial sum by the Chebyshev recurrence for `cos kx`, `sin kx`.
    fn sum_unchecked(&self, x: f64, n: usize) -> f64 {
        let (s1, c1) = x.sin_cos();
        let two_c = 2.0 * c1;
        let (mut c_prev, mut c_cur) = (1.0, c1);
        let (mut s_prev, mut s_cur) = (0.0, s1);
        let mut total = 0.5 * self.a0;
        for k in 0..n {
            total += self.a[k] * c_cur + self.b[k] * s_cur;
            let c_next = two_c * c_cur - c_prev;
            let s_next = two_c * s_cur - s_prev;
            c_prev = c_cur;
            c_cur = c_next;
            s_prev = s_cur;
            s_cur = s_next;
        }
        total
    }

    /// `a0²/2 + Σ (a_k² + b_k²)`.
    pub fn energy(&self) -> f64 {
        0.5 * self.a0 * self.a0 + self.a.iter().zip(&self.b).map(|(a, b)| a * a + b * b).sum::<f64>()
    }
}

pub fn theta_to_x(theta: f64) -> f64 {
    2.0 * theta - PI
}

pub fn x_to_theta(x: f64) -> f64 {
    0.5 * (x + PI)
}

/// `(1/π) ∫_{−π}^{π} F² dx = (2/π) ∫_0^π f² dθ`, in closed form.
pub fn mean_square(field: &PiecewiseField) -> f64 {
    2.0 / PI
        * field
            .pieces()
            .iter()
            .map(|p| p.expr.integral_of_square(p.lo, p.hi))
            .sum::<f64>()
}

/// `F(x)` on either side of `x`, with periodic wrap at `±π`.
fn field_at_x(field: &PiecewiseField, x: f64) -> f64 {
    let mut x = x;
    while x > PI {
        x -= 2.0 * PI;
    }
    while x < -PI {
        x += 2.0 * PI;
    }
    let theta = x_to_theta(x);
    field
        .evaluate(theta)
        .or_else(|_| field.one_sided_limit(theta.clamp(0.0, PI), crate::piecewise::Side::Right))
        .unwrap_or(0.0)
}

pub fn coefficients(field: &PiecewiseField, terms: usize, method: Method) -> Result<FourierSeries, FourierError> {
    coefficients_with(field, terms, method, Execution::default())
}

pub fn coefficients_with(
    field: &PiecewiseField,
    terms: usize,
    method: Method,
    exec: Execution,
) -> Result<FourierSeries, FourierError> {
    if terms == 0 {
        return Err(FourierError::NoTerms);
    }
    let pairs: Vec<(f64, f64)> = match method {
        Method::Analytic => map_range(exec, 0, terms + 1, |k| analytic_pair(field, k)),
        Method::Quadrature => {
            let rule = GaussLegendre::new(QUADRATURE_ORDER);
            map_range(exec, 0, terms + 1, |k| quadrature_pair(field, k, &rule))
        }
    };
    let a0 = pairs[0].0;
    let (a, b) = pairs[1..].iter().copied().unzip();
    Ok(FourierSeries {
        a0,
        a,
        b,
        terms,
        mapping: "x = 2θ − π".to_string(),
    })
}

fn parity(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn analytic_pair(field: &PiecewiseField, k: usize) -> (f64, f64) {
    let omega = 2.0 * k as f64;
    let (mut c, mut s) = (0.0, 0.0);
    for p in field.pieces() {
        let (ci, si) = trig_moments(&p.expr, omega, p.lo, p.hi);
        c += ci;
        s += si;
    }
    let scale = 2.0 / PI * parity(k);
    (scale * c, scale * s)
}

fn quadrature_pair(field: &PiecewiseField, k: usize, rule: &GaussLegendre) -> (f64, f64) {
    let omega = 2.0 * k as f64;
    let (mut c, mut s) = (0.0, 0.0);
    for p in field.pieces() {
        let cycles = k as f64 * p.len() / PI;
        let panels = (cycles / CYCLES_PER_PANEL).ceil().max(1.0) as usize;
        c += rule.integrate_composite(p.lo, p.hi, panels, |t| p.expr.eval(t) * (omega * t).cos());
        s += rule.integrate_composite(p.lo, p.hi, panels, |t| p.expr.eval(t) * (omega * t).sin());
    }
    let scale = 2.0 / PI * parity(k);
    (scale * c, scale * s)
}

/// `∫ cos αt` and `∫ sin αt` over `[lo, hi]`, plus the `t`-weighted pair.
struct Moments {
    cos: f64,
    sin: f64,
    t_cos: f64,
    t_sin: f64,
}

fn moments(alpha: f64, lo: f64, hi: f64) -> Moments {
    if alpha == 0.0 {
        return Moments {
            cos: hi - lo,
            sin: 0.0,
            t_cos: 0.5 * (hi * hi - lo * lo),
            t_sin: 0.0,
        };
    }
    let (sh, ch) = (alpha * hi).sin_cos();
    let (sl, cl) = (alpha * lo).sin_cos();
    let a2 = alpha * alpha;
    Moments {
        cos: (sh - sl) / alpha,
        sin: (cl - ch) / alpha,
        // ∫ t cos αt = t sin αt/α + cos αt/α²
        t_cos: (hi * sh - lo * sl) / alpha + (ch - cl) / a2,
        // ∫ t sin αt = −t cos αt/α + sin αt/α²
        t_sin: (lo * cl - hi * ch) / alpha + (sh - sl) / a2,
    }
}

/// `(∫ f cos ωθ, ∫ f sin ωθ)` over `[lo, hi]` for `f` in the closed basis,
/// using product-to-sum for the `cos θ`, `sin θ` terms.
fn trig_moments(expr: &PieceExpr, omega: f64, lo: f64, hi: f64) -> (f64, f64) {
    let base = moments(omega, lo, hi);
    let minus = moments(omega - 1.0, lo, hi);
    let plus = moments(omega + 1.0, lo, hi);
    // cos θ cos ωθ = ½[cos(ω−1)θ + cos(ω+1)θ]
    // sin θ cos ωθ = ½[sin(ω+1)θ − sin(ω−1)θ]
    // cos θ sin ωθ = ½[sin(ω+1)θ + sin(ω−1)θ]
    // sin θ sin ωθ = ½[cos(ω−1)θ − cos(ω+1)θ]
    let cos_part = expr.c_const * base.cos
        + expr.c_theta * base.t_cos
        + expr.c_cos * 0.5 * (minus.cos + plus.cos)
        + expr.c_sin * 0.5 * (plus.sin - minus.sin);
    let sin_part = expr.c_const * base.sin
        + expr.c_theta * base.t_sin
        + expr.c_cos * 0.5 * (plus.sin + minus.sin)
        + expr.c_sin * 0.5 * (minus.cos - plus.cos);
    (cos_part, sin_part)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirichletCheck {
    pub point: f64,
    pub partial_sum_value: f64,
    pub midpoint_value: f64,
    pub error: f64,
}

/// Location of a jump on the `x` axis; the identified endpoint maps to `π`.
pub fn jump_x(record: &JumpRecord) -> f64 {
    if record.is_endpoint() {
        PI
    } else {
        theta_to_x(record.location)
    }
}

/// `S_n` against `½[F(x−0) + F(x+0)]` at every discontinuity.
pub fn dirichlet_check(
    field: &PiecewiseField,
    series: &FourierSeries,
    n: usize,
) -> Result<Vec<DirichletCheck>, FourierError> {
    field
        .discontinuities()
        .iter()
        .map(|r| {
            let point = jump_x(r);
            let partial_sum_value = series.partial_sum(point, n)?;
            let midpoint_value = r.midpoint();
            Ok(DirichletCheck {
                point,
                partial_sum_value,
                midpoint_value,
                error: (partial_sum_value - midpoint_value).abs(),
            })
        })
        .collect()
}

/// First-lobe overshoot of `S_n` past the jump, relative to `|jump|`.
///
/// On the side the jump rises to, the excess is `S_n − F`; on the other side
/// it is `F − S_n` (signs swap for a falling jump). Each side is scanned over
/// a window of width `4π/n`, then the best sample is refined by golden-section
/// search.
pub fn gibbs_overshoot(
    field: &PiecewiseField,
    series: &FourierSeries,
    n: usize,
    jump_location: f64,
) -> Result<f64, FourierError> {
    gibbs_overshoot_with(field, series, n, jump_location, Execution::Sequential)
}

pub fn gibbs_overshoot_with(
    field: &PiecewiseField,
    series: &FourierSeries,
    n: usize,
    jump_location: f64,
    exec: Execution,
) -> Result<f64, FourierError> {
    if n > series.terms || n == 0 {
        return Err(FourierError::OutOfRange {
            requested: n,
            available: series.terms,
        });
    }
    if n < 64 {
        return Err(FourierError::TooFewTerms(n));
    }
    let wrapped = |x: f64| if x <= -PI { x + 2.0 * PI } else { x };
    let target = wrapped(jump_location);
    let record = field
        .discontinuities()
        .into_iter()
        .find(|r| (jump_x(r) - target).abs() <= 1e-9)
        .ok_or(FourierError::NoJumpHere(jump_location))?;
    let x0 = jump_x(&record);
    let sign = record.signed_jump.signum();
    let width = 4.0 * PI / n as f64;

    let excess = |x: f64| {
        let s = series.sum_unchecked(wrap_x(x), n);
        let f = field_at_x(field, x);
        if x > x0 {
            sign * (s - f)
        } else {
            sign * (f - s)
        }
    };

    let step = width / LOBE_SCAN_POINTS as f64;
    let offsets: Vec<f64> = (1..=LOBE_SCAN_POINTS)
        .flat_map(|i| [i as f64 * step, -(i as f64) * step])
        .collect();
    let values = crate::parallel::map_slice(exec, &offsets, |&d| excess(x0 + d));
    let (best, _) = offsets
        .iter()
        .zip(&values)
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("scan is non-empty");

    let (mut lo, mut hi) = (best - step, best + step);
    if best.signum() != lo.signum() {
        lo = best.signum() * step * 1e-3;
    }
    if best.signum() != hi.signum() {
        hi = best.signum() * step * 1e-3;
    }
    let peak = golden_max(|d| excess(x0 + d), lo.min(hi), lo.max(hi));
    Ok(peak.max(0.0) / record.abs_jump)
}

fn wrap_x(x: f64) -> f64 {
    if x > PI {
        x - 2.0 * PI
    } else if x < -PI {
        x + 2.0 * PI
    } else {
        x
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauges::{make_gauge, GaugeKind};
    use approx::assert_abs_diff_eq;

    #[test]
    fn schwinger_coefficients() {
        let s = make_gauge(GaugeKind::Schwinger, 1.0);
        let series = coefficients(&s, 16, Method::Analytic).unwrap();
        assert_abs_diff_eq!(series.a0, 0.0, epsilon = 1e-15);
        for (i, (a, b)) in series.a.iter().zip(&series.b).enumerate() {
            let k = (i + 1) as f64;
            // −sin(x/2) on (−π, π): b_k = (−1)^k 8k/(π(4k²−1))
            let expected = parity(i + 1) * 8.0 * k / (PI * (4.0 * k * k - 1.0));
            assert_abs_diff_eq!(*a, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(*b, expected, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(series.b[0], -8.0 / (3.0 * PI), epsilon = 1e-15);
    }

    #[test]
    fn square_wave_coefficients() {
        let v = make_gauge(GaugeKind::VacuumWuYang, 1.0);
        let series = coefficients(&v, 32, Method::Analytic).unwrap();
        assert_abs_diff_eq!(series.a0, 0.0, epsilon = 1e-15);
        for (i, (a, b)) in series.a.iter().zip(&series.b).enumerate() {
            let k = i + 1;
            let expected = if k % 2 == 1 { 4.0 / (PI * k as f64) } else { 0.0 };
            assert_abs_diff_eq!(*a, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(*b, expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn zero_and_constant_fields() {
        let zero = PiecewiseField::uniform("0", 1.0, PieceExpr::ZERO).unwrap();
        let s = coefficients(&zero, 8, Method::Quadrature).unwrap();
        assert!(s.a.iter().chain(&s.b).all(|c| *c == 0.0) && s.a0 == 0.0);

        let c = coefficients(&make_gauge(GaugeKind::VacuumDiracPlusG, 1.0), 8, Method::Analytic).unwrap();
        assert_abs_diff_eq!(c.a0, 2.0, epsilon = 1e-15);
        assert!(c.a.iter().chain(&c.b).all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn basis_terms_match_quadrature() {
        let f = PiecewiseField::new(
            "mixed",
            1.0,
            vec![
                crate::piecewise::Piece::new(0.0, 0.7, PieceExpr::new(0.4, -1.3, 0.2, 2.1)),
                crate::piecewise::Piece::new(0.7, PI, PieceExpr::new(-0.9, 0.5, -1.1, 0.3)),
            ],
        )
        .unwrap();
        let a = coefficients(&f, 128, Method::Analytic).unwrap();
        let q = coefficients(&f, 128, Method::Quadrature).unwrap();
        assert_abs_diff_eq!(a.a0, q.a0, epsilon = 1e-12);
        for k in 0..128 {
            assert_abs_diff_eq!(a.a[k], q.a[k], epsilon = 1e-13);
            assert_abs_diff_eq!(a.b[k], q.b[k], epsilon = 1e-13);
        }
    }

    #[test]
    fn partial_sum_examples() {
        let v = make_gauge(GaugeKind::VacuumWuYang, 1.0);
        let series = coefficients(&v, 64, Method::Analytic).unwrap();
        for n in [1, 7, 64] {
            assert_abs_diff_eq!(series.partial_sum(0.0, n).unwrap(), 0.0, epsilon = 1e-13);
        }
        let s = coefficients(&make_gauge(GaugeKind::Schwinger, 1.0), 64, Method::Analytic).unwrap();
        for n in [1, 10, 64] {
            assert_abs_diff_eq!(s.partial_sum(PI, n).unwrap(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(
                s.partial_sum(-PI, n).unwrap(),
                s.partial_sum(PI, n).unwrap(),
                epsilon = 1e-12
            );
        }
        assert!(matches!(s.partial_sum(0.0, 0), Err(FourierError::OutOfRange { .. })));
        assert!(matches!(s.partial_sum(0.0, 65), Err(FourierError::OutOfRange { .. })));
        assert!(matches!(s.partial_sum(3.5, 3), Err(FourierError::PointOutOfRange(_))));
        assert!(matches!(
            coefficients(&v, 0, Method::Analytic),
            Err(FourierError::NoTerms)
        ));
    }

    #[test]
    fn partial_sums_converge_at_continuity_points() {
        let wy = make_gauge(GaugeKind::WuYang, 1.0);
        let series = coefficients(&wy, 2048, Method::Analytic).unwrap();
        let theta = 1.0;
        let x = theta_to_x(theta);
        let exact = wy.evaluate(theta).unwrap();
        let e64 = (series.partial_sum(x, 64).unwrap() - exact).abs();
        let e2048 = (series.partial_sum(x, 2048).unwrap() - exact).abs();
        assert!(e2048 < e64);
        assert!(e2048 < 1e-3);
    }

    #[test]
    fn dirichlet_check_examples() {
        let s = make_gauge(GaugeKind::Schwinger, 1.0);
        let series = coefficients(&s, 64, Method::Analytic).unwrap();
        let checks = dirichlet_check(&s, &series, 37).unwrap();
        assert_eq!(checks.len(), 1);
        assert_eq!(checks[0].point, PI);
        assert_eq!(checks[0].midpoint_value, 0.0);
        assert!(checks[0].error <= 1e-12);

        let d = make_gauge(GaugeKind::DiracPlus, 1.0);
        let series = coefficients(&d, 4096, Method::Analytic).unwrap();
        let checks = dirichlet_check(&d, &series, 4096).unwrap();
        assert_eq!(checks.len(), 1);
        assert_eq!(checks[0].midpoint_value, -1.0);
        assert!(checks[0].error < 1e-3);
    }

    #[test]
    fn gibbs_rejects_continuous_points() {
        let d = make_gauge(GaugeKind::VacuumDiracPlusG, 1.0);
        let series = coefficients(&d, 128, Method::Analytic).unwrap();
        assert!(matches!(
            gibbs_overshoot(&d, &series, 128, 0.0),
            Err(FourierError::NoJumpHere(_))
        ));
        let s = make_gauge(GaugeKind::Schwinger, 1.0);
        let series = coefficients(&s, 128, Method::Analytic).unwrap();
        assert!(matches!(
            gibbs_overshoot(&s, &series, 128, 0.5),
            Err(FourierError::NoJumpHere(_))
        ));
        assert!(matches!(
            gibbs_overshoot(&s, &series, 32, PI),
            Err(FourierError::TooFewTerms(32))
        ));
        // −π names the same identified point as π
        assert!(gibbs_overshoot(&s, &series, 128, -PI).is_ok());
    }
}
