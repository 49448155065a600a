//! File formats: the JSON field spec and CSV tables.
//!
//! Numbers are written in the shortest decimal form that round-trips.

use serde::{Deserialize, Serialize};

use crate::cartesian::Vector3;
use crate::fourier::{DirichletCheck, FourierSeries};
use crate::gaugeops::InvarianceRow;
use crate::measures::MeasureReport;
use crate::piecewise::{FieldError, Piece, PieceExpr, PiecewiseField};

/// `{"label", "g", "pieces": [{"lo", "hi", "c_const", "c_theta", "c_cos", "c_sin"}]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub label: String,
    pub g: f64,
    pub pieces: Vec<PieceSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub c_const: f64,
    #[serde(default)]
    pub c_theta: f64,
    #[serde(default)]
    pub c_cos: f64,
    #[serde(default)]
    pub c_sin: f64,
}

impl FieldSpec {
    pub fn from_field(field: &PiecewiseField) -> Self {
        FieldSpec {
            label: field.label().to_string(),
            g: field.charge_g(),
            pieces: field
                .pieces()
                .iter()
                .map(|p| PieceSpec {
                    lo: p.lo,
                    hi: p.hi,
                    c_const: p.expr.c_const,
                    c_theta: p.expr.c_theta,
                    c_cos: p.expr.c_cos,
                    c_sin: p.expr.c_sin,
                })
                .collect(),
        }
    }

    pub fn into_field(self) -> Result<PiecewiseField, FieldError> {
        let pieces = self
            .pieces
            .into_iter()
            .map(|p| Piece::new(p.lo, p.hi, PieceExpr::new(p.c_const, p.c_theta, p.c_cos, p.c_sin)))
            .collect();
        PiecewiseField::new(self.label, self.g, pieces)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid field: {0}")]
    Field(#[from] FieldError),
}

pub fn parse_field_spec(text: &str) -> Result<PiecewiseField, SpecError> {
    let spec: FieldSpec = serde_json::from_str(text)?;
    Ok(spec.into_field()?)
}

pub fn field_spec_json(field: &PiecewiseField) -> String {
    serde_json::to_string_pretty(&FieldSpec::from_field(field)).expect("plain data serializes")
}

/// Shortest round-trip decimal; exponent form outside `[1e-5, 1e16)`.
pub fn number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-5..1e16).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn write_rows<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// `location,left,right,signed_half,abs_half`
pub fn measures_csv(report: &MeasureReport) -> String {
    write_rows(
        &["location", "left", "right", "signed_half", "abs_half"],
        report.contributions.iter().map(|c| {
            [
                c.record.location,
                c.record.left_limit,
                c.record.right_limit,
                c.signed_half_jump,
                c.abs_half_jump,
            ]
            .map(number)
        }),
    )
}

/// `k,a_k,b_k`, with `k = 0` holding `a0` and `b_0 = 0`.
pub fn coefficients_csv(series: &FourierSeries) -> String {
    let first = std::iter::once(["0".to_string(), number(series.a0), "0".to_string()]);
    let rest = series
        .a
        .iter()
        .zip(&series.b)
        .enumerate()
        .map(|(i, (a, b))| [(i + 1).to_string(), number(*a), number(*b)]);
    write_rows(&["k", "a_k", "b_k"], first.chain(rest))
}

/// `x,f,S_<n>…` for each requested `n`.
pub fn curve_csv(xs: &[f64], values: &[f64], sums: &[(usize, Vec<f64>)]) -> String {
    let mut header = vec!["x".to_string(), "f".to_string()];
    header.extend(sums.iter().map(|(n, _)| format!("S_{n}")));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    write_rows(
        &header_refs,
        xs.iter().enumerate().map(|(i, x)| {
            let mut row = vec![number(*x), number(values[i])];
            row.extend(sums.iter().map(|(_, s)| number(s[i])));
            row
        }),
    )
}

/// `n,x,partial_sum,midpoint,error`
pub fn dirichlet_csv(checks: &[(usize, DirichletCheck)]) -> String {
    write_rows(
        &["n", "x", "partial_sum", "midpoint", "error"],
        checks.iter().map(|(n, c)| {
            vec![
                n.to_string(),
                number(c.point),
                number(c.partial_sum_value),
                number(c.midpoint_value),
                number(c.error),
            ]
        }),
    )
}

/// `shift,mu_inv_before,mu_inv_after,mu_addit_before,mu_addit_after`
pub fn invariance_csv(rows: &[InvarianceRow]) -> String {
    write_rows(
        &[
            "shift",
            "mu_inv_before",
            "mu_inv_after",
            "mu_addit_before",
            "mu_addit_after",
        ],
        rows.iter().map(|r| {
            vec![
                r.shift_label.clone(),
                number(r.mu_inv_before),
                number(r.mu_inv_after),
                number(r.mu_addit_before),
                number(r.mu_addit_after),
            ]
        }),
    )
}

/// `eps,A1,A2,A3,norm` for a probe sweep.
pub fn probe_csv(samples: &[(f64, Vector3)]) -> String {
    write_rows(
        &["eps", "A1", "A2", "A3", "norm"],
        samples
            .iter()
            .map(|(eps, a)| [*eps, a.x1, a.x2, a.x3, a.norm()].map(number)),
    )
}
