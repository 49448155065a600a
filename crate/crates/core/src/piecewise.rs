//! Piecewise-smooth functions on `[0, π]` with the two endpoints identified.
//!
//! Every piece is drawn from the span of `{1, θ, cos θ, sin θ}`, which is
//! enough for all monopole potentials handled by this crate and keeps
//! one-sided limits, derivatives and Fourier integrals in closed form.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative jump tolerance, in units of `|g|` (absolute when `g = 0`).
pub const JUMP_TOLERANCE: f64 = 1e-9;

/// Slack used when snapping breakpoints onto each other and onto `0`/`π`.
const BREAKPOINT_SNAP: f64 = 1e-12;

/// Distance below which an angle is considered to sit on a breakpoint.
const BREAKPOINT_HIT: f64 = 4.0 * f64::EPSILON * PI;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("angle {0} lies outside [0, π]")]
    OutOfDomain(f64),
    #[error("angle {0} is a breakpoint; use a one-sided limit")]
    BreakpointHit(f64),
    #[error("field has no pieces")]
    Empty,
    #[error("pieces[{index}].{field}: {reason}")]
    InvalidPiece {
        index: usize,
        field: &'static str,
        reason: String,
    },
    #[error("g: magnetic charge must be finite, got {0}")]
    InvalidCharge(f64),
}

/// `c_const + c_theta·θ + c_cos·cos θ + c_sin·sin θ`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PieceExpr {
    pub c_const: f64,
    pub c_theta: f64,
    pub c_cos: f64,
    pub c_sin: f64,
}

impl PieceExpr {
    pub const ZERO: PieceExpr = PieceExpr::constant(0.0);

    pub const fn new(c_const: f64, c_theta: f64, c_cos: f64, c_sin: f64) -> Self {
        Self {
            c_const,
            c_theta,
            c_cos,
            c_sin,
        }
    }

    pub const fn constant(value: f64) -> Self {
        Self::new(value, 0.0, 0.0, 0.0)
    }

    /// `amplitude·cos θ + offset`, the shape of every monopole constituent.
    pub const fn cosine(amplitude: f64, offset: f64) -> Self {
        Self::new(offset, 0.0, amplitude, 0.0)
    }

    #[inline]
    pub fn eval(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        self.c_const + self.c_theta * theta + self.c_cos * c + self.c_sin * s
    }

    #[inline]
    pub fn derivative(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        self.c_theta - self.c_cos * s + self.c_sin * c
    }

    /// `∫_lo^hi f′ dθ`, computed from the antiderivative of the derivative's
    /// own closed form rather than from `f(hi) − f(lo)`.
    pub fn derivative_integral(&self, lo: f64, hi: f64) -> f64 {
        // ∫ (c_θ − c_cos sin θ + c_sin cos θ) = c_θ θ + c_cos cos θ + c_sin sin θ
        let anti = |t: f64| self.c_theta * t + self.c_cos * t.cos() + self.c_sin * t.sin();
        anti(hi) - anti(lo)
    }

    /// `∫_lo^hi f dθ`.
    pub fn integral(&self, lo: f64, hi: f64) -> f64 {
        let anti = |t: f64| self.c_const * t + 0.5 * self.c_theta * t * t + self.c_cos * t.sin() - self.c_sin * t.cos();
        anti(hi) - anti(lo)
    }

    /// `∫_lo^hi f² dθ`, expanded term by term.
    pub fn integral_of_square(&self, lo: f64, hi: f64) -> f64 {
        let PieceExpr {
            c_const: a,
            c_theta: b,
            c_cos: c,
            c_sin: d,
        } = *self;
        let anti = |t: f64| {
            let (s, co) = t.sin_cos();
            // ∫1, ∫θ, ∫θ², ∫cos, ∫sin, ∫θcos, ∫θsin, ∫cos², ∫sin², ∫sin·cos
            let i_1 = t;
            let i_t = 0.5 * t * t;
            let i_tt = t * t * t / 3.0;
            let i_c = s;
            let i_s = -co;
            let i_tc = t * s + co;
            let i_ts = -t * co + s;
            let i_cc = 0.5 * (t + s * co);
            let i_ss = 0.5 * (t - s * co);
            let i_sc = 0.5 * s * s;
            a * a * i_1
                + b * b * i_tt
                + c * c * i_cc
                + d * d * i_ss
                + 2.0 * a * b * i_t
                + 2.0 * a * c * i_c
                + 2.0 * a * d * i_s
                + 2.0 * b * c * i_tc
                + 2.0 * b * d * i_ts
                + 2.0 * c * d * i_sc
        };
        anti(hi) - anti(lo)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(
            self.c_const * factor,
            self.c_theta * factor,
            self.c_cos * factor,
            self.c_sin * factor,
        )
    }

    pub fn shifted(&self, offset: f64) -> Self {
        Self {
            c_const: self.c_const + offset,
            ..*self
        }
    }

    pub fn is_finite(&self) -> bool {
        self.c_const.is_finite() && self.c_theta.is_finite() && self.c_cos.is_finite() && self.c_sin.is_finite()
    }

    pub fn is_constant(&self) -> bool {
        self.c_theta == 0.0 && self.c_cos == 0.0 && self.c_sin == 0.0
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.c_const - other.c_const).abs() <= tol
            && (self.c_theta - other.c_theta).abs() <= tol
            && (self.c_cos - other.c_cos).abs() <= tol
            && (self.c_sin - other.c_sin).abs() <= tol
    }
}

impl fmt::Display for PieceExpr {
    /// Renders e.g. `cos θ − 1`, `2·cos θ + 2`, `θ + 2·sin θ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            (self.c_cos, "cos θ"),
            (self.c_sin, "sin θ"),
            (self.c_theta, "θ"),
            (self.c_const, ""),
        ];
        let mut out = String::new();
        for (coef, basis) in terms {
            if coef == 0.0 {
                continue;
            }
            let magnitude = coef.abs();
            let body = match (basis.is_empty(), magnitude == 1.0) {
                (true, _) => format!("{magnitude}"),
                (false, true) => basis.to_string(),
                (false, false) => format!("{magnitude}·{basis}"),
            };
            if out.is_empty() {
                if coef < 0.0 {
                    out.push('−');
                }
            } else {
                out.push_str(if coef < 0.0 { " − " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// One smooth piece; `expr` is exact on the open interval `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub expr: PieceExpr,
}

impl Piece {
    pub fn new(lo: f64, hi: f64, expr: PieceExpr) -> Self {
        Self { lo, hi, expr }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A discontinuity. The identified endpoint `0 ≡ π` is reported at `location = π`
/// with `left_limit = f(π−0)` and `right_limit = f(0+0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpRecord {
    pub location: f64,
    pub left_limit: f64,
    pub right_limit: f64,
    pub signed_jump: f64,
    pub abs_jump: f64,
}

impl JumpRecord {
    fn new(location: f64, left_limit: f64, right_limit: f64) -> Self {
        let signed_jump = right_limit - left_limit;
        Self {
            location,
            left_limit,
            right_limit,
            signed_jump,
            abs_jump: signed_jump.abs(),
        }
    }

    pub fn is_endpoint(&self) -> bool {
        self.location == PI
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.left_limit + self.right_limit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotoneSegment {
    pub lo: f64,
    pub hi: f64,
    pub trend: Trend,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletConditions {
    pub bounded: bool,
    pub piecewise_continuous: bool,
    pub piecewise_monotone: bool,
    pub monotone_segments: Vec<MonotoneSegment>,
}

/// A potential `A_φ(θ)` tiled by smooth pieces over `(0, π)`.
///
/// Construction validates the tiling, snaps breakpoints within `1e-12` of each
/// other, and merges neighbours that carry the same expression. Instances are
/// immutable afterwards.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseField {
    label: String,
    charge_g: f64,
    pieces: Vec<Piece>,
}

impl PiecewiseField {
    pub fn new(label: impl Into<String>, charge_g: f64, pieces: Vec<Piece>) -> Result<Self, FieldError> {
        if !charge_g.is_finite() {
            return Err(FieldError::InvalidCharge(charge_g));
        }
        if pieces.is_empty() {
            return Err(FieldError::Empty);
        }
        let invalid = |index, field, reason: String| FieldError::InvalidPiece { index, field, reason };

        let mut tiled: Vec<Piece> = Vec::with_capacity(pieces.len());
        let last = pieces.len() - 1;
        for (index, piece) in pieces.into_iter().enumerate() {
            let mut piece = piece;
            if !piece.lo.is_finite() {
                return Err(invalid(index, "lo", "must be finite".into()));
            }
            if !piece.hi.is_finite() {
                return Err(invalid(index, "hi", "must be finite".into()));
            }
            if !piece.expr.is_finite() {
                return Err(invalid(index, "expr", "coefficients must be finite".into()));
            }
            if index == 0 {
                if piece.lo.abs() > BREAKPOINT_SNAP {
                    return Err(invalid(
                        index,
                        "lo",
                        format!("first piece must start at 0, got {}", piece.lo),
                    ));
                }
                piece.lo = 0.0;
            } else {
                let prev_hi = tiled[index - 1].hi;
                if (piece.lo - prev_hi).abs() > BREAKPOINT_SNAP {
                    return Err(invalid(
                        index,
                        "lo",
                        format!("must equal previous hi {prev_hi}, got {}", piece.lo),
                    ));
                }
                piece.lo = prev_hi;
            }
            if index == last {
                if (piece.hi - PI).abs() > BREAKPOINT_SNAP {
                    return Err(invalid(
                        index,
                        "hi",
                        format!("last piece must end at π, got {}", piece.hi),
                    ));
                }
                piece.hi = PI;
            }
            if piece.hi <= piece.lo {
                return Err(invalid(
                    index,
                    "hi",
                    format!("must exceed lo {}, got {}", piece.lo, piece.hi),
                ));
            }
            tiled.push(piece);
        }

        let merge_tol = 1e-15 * charge_g.abs().max(1.0);
        let mut merged: Vec<Piece> = Vec::with_capacity(tiled.len());
        for piece in tiled {
            match merged.last_mut() {
                Some(prev) if prev.expr.approx_eq(&piece.expr, merge_tol) => prev.hi = piece.hi,
                _ => merged.push(piece),
            }
        }

        Ok(Self {
            label: label.into(),
            charge_g,
            pieces: merged,
        })
    }

    /// A single-piece field.
    pub fn uniform(label: impl Into<String>, charge_g: f64, expr: PieceExpr) -> Result<Self, FieldError> {
        Self::new(label, charge_g, vec![Piece::new(0.0, PI, expr)])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn charge_g(&self) -> f64 {
        self.charge_g
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Interior breakpoints, strictly increasing.
    pub fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.pieces.iter().skip(1).map(|p| p.lo)
    }

    pub fn jump_tolerance(&self) -> f64 {
        if self.charge_g == 0.0 {
            JUMP_TOLERANCE
        } else {
            JUMP_TOLERANCE * self.charge_g.abs()
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Pointwise `λ·f`, carried with charge `λ·g`.
    pub fn scaled(&self, factor: f64) -> Result<Self, FieldError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| Piece::new(p.lo, p.hi, p.expr.scaled(factor)))
            .collect();
        Self::new(self.label.clone(), self.charge_g * factor, pieces)
    }

    fn piece_index(&self, theta: f64) -> usize {
        self.pieces
            .partition_point(|p| p.hi <= theta)
            .min(self.pieces.len() - 1)
    }

    /// Value at an interior point that is not a breakpoint.
    pub fn evaluate(&self, theta: f64) -> Result<f64, FieldError> {
        if !(0.0..=PI).contains(&theta) {
            return Err(FieldError::OutOfDomain(theta));
        }
        if theta <= BREAKPOINT_HIT || PI - theta <= BREAKPOINT_HIT {
            return Err(FieldError::BreakpointHit(theta));
        }
        if self.breakpoints().any(|b| (b - theta).abs() <= BREAKPOINT_HIT) {
            return Err(FieldError::BreakpointHit(theta));
        }
        Ok(self.pieces[self.piece_index(theta)].expr.eval(theta))
    }

    /// Exact one-sided limit from the adjacent piece's closed form.
    ///
    /// Endpoint identification is always on: the left limit at `0` is `f(π−0)`
    /// and the right limit at `π` is `f(0+0)`.
    pub fn one_sided_limit(&self, theta0: f64, side: Side) -> Result<f64, FieldError> {
        if !(0.0..=PI).contains(&theta0) {
            return Err(FieldError::OutOfDomain(theta0));
        }
        let first = &self.pieces[0];
        let last = &self.pieces[self.pieces.len() - 1];
        let value = match side {
            Side::Right if theta0 >= PI => first.expr.eval(0.0),
            Side::Left if theta0 <= 0.0 => last.expr.eval(PI),
            Side::Right => {
                // piece with lo ≤ θ0 < hi
                let idx = self.pieces.partition_point(|p| p.hi <= theta0);
                self.pieces[idx].expr.eval(theta0)
            }
            Side::Left => {
                // piece with lo < θ0 ≤ hi
                let idx = self.pieces.partition_point(|p| p.hi < theta0);
                self.pieces[idx].expr.eval(theta0)
            }
        };
        Ok(value)
    }

    /// `f(0+0)`.
    pub fn north_limit(&self) -> f64 {
        self.pieces[0].expr.eval(0.0)
    }

    /// `f(π−0)`.
    pub fn south_limit(&self) -> f64 {
        self.pieces[self.pieces.len() - 1].expr.eval(PI)
    }

    /// Genuine jumps, sorted by location; the identified endpoint comes last.
    pub fn discontinuities(&self) -> Vec<JumpRecord> {
        let tol = self.jump_tolerance();
        let mut out: Vec<JumpRecord> = self
            .pieces
            .windows(2)
            .map(|w| {
                let at = w[1].lo;
                JumpRecord::new(at, w[0].expr.eval(at), w[1].expr.eval(at))
            })
            .filter(|r| r.abs_jump > tol)
            .collect();
        let endpoint = JumpRecord::new(PI, self.south_limit(), self.north_limit());
        if endpoint.abs_jump > tol {
            out.push(endpoint);
        }
        out
    }

    /// Bounded / piecewise continuous hold by construction; monotone segments
    /// come from the sign changes of each piece's derivative.
    pub fn check_dirichlet_conditions(&self) -> DirichletConditions {
        let mut segments = Vec::new();
        for piece in &self.pieces {
            segments.extend(monotone_segments(piece));
        }
        DirichletConditions {
            bounded: self.pieces.iter().all(|p| p.expr.is_finite()),
            piecewise_continuous: true,
            piecewise_monotone: segments.iter().all(|s| s.hi > s.lo),
            monotone_segments: segments,
        }
    }
}

/// Roots of `c_θ − c_cos sin θ + c_sin cos θ` inside `(lo, hi)`, written as
/// `R cos(θ + φ) = −c_θ`.
fn derivative_roots(expr: &PieceExpr, lo: f64, hi: f64) -> Vec<f64> {
    let amplitude = expr.c_sin.hypot(expr.c_cos);
    if amplitude == 0.0 {
        return Vec::new();
    }
    let ratio = -expr.c_theta / amplitude;
    if ratio.abs() > 1.0 {
        return Vec::new();
    }
    let phase = expr.c_cos.atan2(expr.c_sin);
    let base = ratio.acos();
    let mut roots = Vec::new();
    for principal in [base, -base] {
        let first = principal - phase;
        // shift into [lo − 2π, hi + 2π] and walk by 2π
        let mut k = ((lo - first) / (2.0 * PI)).floor() - 1.0;
        loop {
            let t = first + 2.0 * PI * k;
            if t >= hi {
                break;
            }
            if t > lo {
                roots.push(t);
            }
            k += 1.0;
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    roots
}

fn monotone_segments(piece: &Piece) -> Vec<MonotoneSegment> {
    let mut cuts = vec![piece.lo];
    cuts.extend(derivative_roots(&piece.expr, piece.lo, piece.hi));
    cuts.push(piece.hi);

    let scale = piece.expr.c_theta.abs() + piece.expr.c_cos.abs() + piece.expr.c_sin.abs();
    let mut out: Vec<MonotoneSegment> = Vec::new();
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let slope = piece.expr.derivative(mid);
        let trend = if slope.abs() <= 1e-14 * scale.max(f64::MIN_POSITIVE) || scale == 0.0 {
            Trend::Constant
        } else if slope > 0.0 {
            Trend::Increasing
        } else {
            Trend::Decreasing
        };
        match out.last_mut() {
            // tangential zeros do not split a segment
            Some(prev) if prev.trend == trend => prev.hi = w[1],
            _ => out.push(MonotoneSegment {
                lo: w[0],
                hi: w[1],
                trend,
            }),
        }
    }
    out
}
