//! The catalog of monopole gauges as functions `A_φ(θ)`, with the monopole
//! oriented along `+x₃`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::piecewise::{Piece, PieceExpr, PiecewiseField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaugeKind {
    /// `g cos θ`
    Schwinger,
    /// `g (cos θ − 1)`, regular on the positive half-axis.
    DiracPlus,
    /// `g (cos θ + 1)`, regular on the negative half-axis.
    DiracMinus,
    /// Dirac(+) on the northern hemisphere glued to Dirac(−) on the southern.
    WuYang,
    /// The two Wu-Yang constituents swapped across the equator.
    AntiWuYang,
    /// `−g` north, `+g` south: a pure-gauge field with an equatorial jump.
    #[serde(rename = "vacuum-wy")]
    VacuumWuYang,
    /// Constant `+g`.
    #[serde(rename = "vacuum-d-plus")]
    VacuumDiracPlusG,
    /// Constant `−g`.
    #[serde(rename = "vacuum-d-minus")]
    VacuumDiracMinusG,
}

impl GaugeKind {
    pub const ALL: [GaugeKind; 8] = [
        GaugeKind::Schwinger,
        GaugeKind::DiracPlus,
        GaugeKind::DiracMinus,
        GaugeKind::WuYang,
        GaugeKind::AntiWuYang,
        GaugeKind::VacuumWuYang,
        GaugeKind::VacuumDiracPlusG,
        GaugeKind::VacuumDiracMinusG,
    ];

    /// The gauges that carry the monopole (as opposed to vacuum analogues).
    pub const MONOPOLE: [GaugeKind; 5] = [
        GaugeKind::Schwinger,
        GaugeKind::DiracPlus,
        GaugeKind::DiracMinus,
        GaugeKind::WuYang,
        GaugeKind::AntiWuYang,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            GaugeKind::Schwinger => "schwinger",
            GaugeKind::DiracPlus => "dirac-plus",
            GaugeKind::DiracMinus => "dirac-minus",
            GaugeKind::WuYang => "wu-yang",
            GaugeKind::AntiWuYang => "anti-wu-yang",
            GaugeKind::VacuumWuYang => "vacuum-wy",
            GaugeKind::VacuumDiracPlusG => "vacuum-d-plus",
            GaugeKind::VacuumDiracMinusG => "vacuum-d-minus",
        }
    }

    pub fn is_vacuum(self) -> bool {
        matches!(
            self,
            GaugeKind::VacuumWuYang | GaugeKind::VacuumDiracPlusG | GaugeKind::VacuumDiracMinusG
        )
    }

    /// Piece list for charge `g`.
    pub fn pieces(self, g: f64) -> Vec<Piece> {
        let north = PieceExpr::cosine(g, -g);
        let south = PieceExpr::cosine(g, g);
        let whole = |e| vec![Piece::new(0.0, PI, e)];
        let split = |a, b| vec![Piece::new(0.0, FRAC_PI_2, a), Piece::new(FRAC_PI_2, PI, b)];
        match self {
            GaugeKind::Schwinger => whole(PieceExpr::cosine(g, 0.0)),
            GaugeKind::DiracPlus => whole(north),
            GaugeKind::DiracMinus => whole(south),
            GaugeKind::WuYang => split(north, south),
            GaugeKind::AntiWuYang => split(south, north),
            GaugeKind::VacuumWuYang => split(PieceExpr::constant(-g), PieceExpr::constant(g)),
            GaugeKind::VacuumDiracPlusG => whole(PieceExpr::constant(g)),
            GaugeKind::VacuumDiracMinusG => whole(PieceExpr::constant(-g)),
        }
    }
}

impl fmt::Display for GaugeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown gauge `{0}` (expected one of: schwinger, dirac-plus, dirac-minus, wu-yang, anti-wu-yang, vacuum-wy, vacuum-d-plus, vacuum-d-minus)")]
pub struct UnknownGauge(pub String);

impl FromStr for GaugeKind {
    type Err = UnknownGauge;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaugeKind::ALL
            .into_iter()
            .find(|k| k.cli_name() == s)
            .ok_or_else(|| UnknownGauge(s.to_string()))
    }
}

pub fn make_gauge(kind: GaugeKind, g: f64) -> PiecewiseField {
    assert!(g.is_finite(), "magnetic charge must be finite");
    PiecewiseField::new(kind.cli_name(), g, kind.pieces(g)).expect("catalog pieces always tile [0, π]")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisMark {
    pub label: String,
    pub value: f64,
}

/// Schematic picture of where a gauge is singular: the two half-axes carry
/// the endpoint limits, the origin carries the whole angular profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularitySketch {
    pub positive_axis: AxisMark,
    pub origin: String,
    pub negative_axis: AxisMark,
}

fn axis_mark(value: f64, tol: f64) -> AxisMark {
    let label = if value.abs() <= tol {
        "0".to_string()
    } else {
        let sign = if value > 0.0 { '+' } else { '−' };
        format!("({sign}2π)·{}", value.abs())
    };
    AxisMark { label, value }
}

pub fn sketch(field: &PiecewiseField) -> SingularitySketch {
    let tol = field.jump_tolerance();
    let profile = field
        .pieces()
        .iter()
        .map(|p| p.expr.to_string())
        .collect::<Vec<_>>()
        .join(" ∪ ");
    let profile = if field.pieces().len() > 1 {
        format!("{{{profile}}}")
    } else {
        profile
    };
    SingularitySketch {
        positive_axis: axis_mark(field.north_limit(), tol),
        origin: format!("(2π⊗π)·{profile}"),
        negative_axis: axis_mark(field.south_limit(), tol),
    }
}
