//! Recomputes every value the original analysis states for the catalog and
//! contrasts the two, flagging stated values that contradict the half-sum
//! definition of the measures.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use gauge_lab::fourier::{self, Method};
use gauge_lab::measures::full_report;
use gauge_lab::parallel::{map_slice, Execution};
use gauge_lab::piecewise::Side;
use gauge_lab::{make_gauge, GaugeKind, PiecewiseField};

use crate::commands::{curve_grid, curve_sums, curve_values};
use crate::output::{g_multiple, json, report_written, CliError, Format, Outputs};
use crate::plot;

const SERIES_TERMS: usize = 4096;
const GIBBS_TERMS: usize = 512;
const COARSE_TERMS: usize = 64;
const FIGURE_TERMS: [usize; 2] = [64, 512];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Stated value reproduced.
    Match,
    /// Stated value contradicts the definition; the definition value was
    /// reproduced instead.
    Inconsistent,
    /// The computed value differs from what the definition gives.
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub gauge: String,
    pub quantity: String,
    /// Stated value, in units of `g`.
    pub stated: f64,
    /// Value the definition gives, in units of `g`.
    pub definition: f64,
    pub computed: f64,
    pub status: Status,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesCheck {
    pub gauge: String,
    pub x: f64,
    pub midpoint_error_coarse: f64,
    pub midpoint_error_fine: f64,
    pub gibbs_overshoot: f64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub g: f64,
    pub rows: Vec<Row>,
    pub series_checks: Vec<SeriesCheck>,
    pub inconsistencies: usize,
    pub mismatches: usize,
}

enum Quantity {
    MuInv,
    MuAddit,
    Limit(f64, Side),
}

impl Quantity {
    fn name(&self) -> String {
        let side = |s: &Side| if *s == Side::Left { "−0" } else { "+0" };
        match self {
            Quantity::MuInv => "mu_inv".into(),
            Quantity::MuAddit => "mu_addit".into(),
            Quantity::Limit(t, s) if *t == 0.0 => format!("f(0{})", side(s)),
            Quantity::Limit(t, s) if *t == PI => format!("f(π{})", side(s)),
            Quantity::Limit(_, s) => format!("f(π/2{})", side(s)),
        }
    }

    fn compute(&self, field: &PiecewiseField) -> f64 {
        match self {
            Quantity::MuInv => full_report(field).mu_inv,
            Quantity::MuAddit => full_report(field).mu_addit,
            Quantity::Limit(t, s) => field.one_sided_limit(*t, *s).expect("catalog limits are in range"),
        }
    }
}

/// `(gauge, quantity, stated, definition, note)`, values in units of `g`
/// (`|g|` for `mu_addit`).
fn stated_values() -> Vec<(GaugeKind, Quantity, f64, f64, &'static str)> {
    use GaugeKind::*;
    use Quantity::*;
    let (l, r) = (Side::Left, Side::Right);
    vec![
        (Schwinger, Limit(PI, l), -1.0, -1.0, ""),
        (Schwinger, Limit(0.0, r), 1.0, 1.0, ""),
        (Schwinger, MuInv, 1.0, 1.0, ""),
        (DiracPlus, Limit(PI, l), -2.0, -2.0, ""),
        (DiracPlus, Limit(0.0, r), 0.0, 0.0, ""),
        (DiracPlus, MuInv, 1.0, 1.0, ""),
        (DiracMinus, Limit(PI, l), 0.0, 0.0, ""),
        (DiracMinus, Limit(0.0, r), 2.0, 2.0, ""),
        (DiracMinus, MuInv, 1.0, 1.0, ""),
        (WuYang, Limit(FRAC_PI_2, l), -1.0, -1.0, ""),
        (WuYang, Limit(FRAC_PI_2, r), 1.0, 1.0, ""),
        // the equator values are also stated once with the sides exchanged;
        // gluing Dirac(+) north to Dirac(−) south fixes the order above
        (
            WuYang,
            Limit(FRAC_PI_2, r),
            -1.0,
            1.0,
            "second statement exchanges the equator sides; the glued constituents give f(π/2+0) = +g",
        ),
        (
            WuYang,
            Limit(FRAC_PI_2, l),
            1.0,
            -1.0,
            "second statement exchanges the equator sides; the glued constituents give f(π/2−0) = −g",
        ),
        (WuYang, MuInv, 1.0, 1.0, ""),
        (AntiWuYang, Limit(FRAC_PI_2, l), 1.0, 1.0, ""),
        (AntiWuYang, Limit(FRAC_PI_2, r), -1.0, -1.0, ""),
        (AntiWuYang, Limit(PI, l), -2.0, -2.0, ""),
        (AntiWuYang, Limit(0.0, r), 2.0, 2.0, ""),
        (AntiWuYang, MuInv, 1.0, 1.0, ""),
        (
            AntiWuYang,
            MuAddit,
            4.0,
            3.0,
            "stated +4g contradicts the half-sum of |jumps|: ½·2g + ½·4g = 3g (without the ½ it would be 6g)",
        ),
        (VacuumWuYang, MuInv, 0.0, 0.0, ""),
        (
            VacuumWuYang,
            MuAddit,
            4.0,
            2.0,
            "stated +4g contradicts the half-sum of |jumps|: ½·2g + ½·2g = 2g (only the unhalved sum gives 4g)",
        ),
        (VacuumDiracPlusG, MuInv, 0.0, 0.0, ""),
        (VacuumDiracPlusG, MuAddit, 0.0, 0.0, ""),
        (VacuumDiracMinusG, MuInv, 0.0, 0.0, ""),
        (VacuumDiracMinusG, MuAddit, 0.0, 0.0, ""),
    ]
}

pub fn build_rows(g: f64) -> Vec<Row> {
    let tol = 1e-12 * g.abs().max(1.0);
    stated_values()
        .into_iter()
        .map(|(kind, q, stated, definition, note)| {
            let computed = q.compute(&make_gauge(kind, g));
            // absolute jumps scale with |g|
            let unit = if matches!(q, Quantity::MuAddit) { g.abs() } else { g };
            let status = if (computed - definition * unit).abs() > tol {
                Status::Mismatch
            } else if stated != definition {
                Status::Inconsistent
            } else {
                Status::Match
            };
            Row {
                gauge: kind.cli_name().to_string(),
                quantity: q.name(),
                stated: stated * unit,
                definition: definition * unit,
                computed,
                status,
                note: note.to_string(),
            }
        })
        .collect()
}

struct GaugeRun {
    checks: Vec<SeriesCheck>,
    figure: String,
}

fn run_gauge(kind: GaugeKind, g: f64) -> Result<GaugeRun, String> {
    let field = make_gauge(kind, g);
    let series = fourier::coefficients_with(&field, SERIES_TERMS, Method::Analytic, Execution::Sequential)
        .map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    for j in field.discontinuities() {
        let x = fourier::jump_x(&j);
        let at = |n| -> Result<f64, String> {
            let s = series.partial_sum(x, n).map_err(|e| e.to_string())?;
            Ok((s - j.midpoint()).abs())
        };
        checks.push(SeriesCheck {
            gauge: kind.cli_name().to_string(),
            x,
            midpoint_error_coarse: at(COARSE_TERMS)?,
            midpoint_error_fine: at(SERIES_TERMS)?,
            gibbs_overshoot: fourier::gibbs_overshoot(&field, &series, GIBBS_TERMS, x).map_err(|e| e.to_string())?,
        });
    }
    let (thetas, xs) = curve_grid();
    let values = curve_values(&field, &thetas);
    let sums = curve_sums(&series, &xs, &FIGURE_TERMS);
    Ok(GaugeRun {
        checks,
        figure: plot::overlay(&field, &xs, &values, &sums),
    })
}

pub fn run(g: f64, mut sink: Outputs) -> Result<(), CliError> {
    if !g.is_finite() || g == 0.0 {
        return Err(CliError::Input(format!("--g must be finite and nonzero, got {g}")));
    }
    let rows = build_rows(g);
    let runs = map_slice(Execution::default(), &GaugeKind::ALL, |&k| run_gauge(k, g));
    let mut series_checks = Vec::new();
    let mut figures = Vec::new();
    for (kind, run) in GaugeKind::ALL.iter().zip(runs) {
        let run = run.map_err(CliError::Internal)?;
        series_checks.extend(run.checks);
        figures.push((kind.cli_name(), run.figure));
    }

    let count = |rows: &[Row], s: Status| rows.iter().filter(|r| r.status == s).count();
    let report = Report {
        g,
        inconsistencies: count(&rows, Status::Inconsistent),
        mismatches: count(&rows, Status::Mismatch),
        rows,
        series_checks,
    };

    println!(
        "{:<16} {:<10} {:>9} {:>11} {:>9}  status",
        "gauge", "quantity", "stated", "definition", "computed"
    );
    for r in &report.rows {
        println!(
            "{:<16} {:<10} {:>9} {:>11} {:>9}  {}",
            r.gauge,
            r.quantity,
            g_multiple(r.stated / g),
            g_multiple(r.definition / g),
            g_multiple(r.computed / g),
            match r.status {
                Status::Match => "match".to_string(),
                Status::Inconsistent => format!("INCONSISTENT: {}", r.note),
                Status::Mismatch => "MISMATCH".to_string(),
            }
        );
    }
    println!();
    println!(
        "{:<16} {:>8} {:>14} {:>14} {:>10}",
        "gauge", "x", "|S_64 − mid|", "|S_4096 − mid|", "Gibbs@512"
    );
    for c in &report.series_checks {
        println!(
            "{:<16} {:>8.4} {:>14.3e} {:>14.3e} {:>10.5}",
            c.gauge, c.x, c.midpoint_error_coarse, c.midpoint_error_fine, c.gibbs_overshoot
        );
    }
    println!();
    println!(
        "{} stated values reproduced, {} flagged as inconsistent with the definition, {} not reproduced",
        count(&report.rows, Status::Match),
        report.inconsistencies,
        report.mismatches
    );

    let mut csv = csv_rows(&report.rows);
    if !csv.ends_with('\n') {
        csv.push('\n');
    }
    sink.add(Format::Json, "reproduce-paper.json", json(&report));
    sink.add(Format::Csv, "reproduce-paper.csv", csv);
    for (name, svg) in figures {
        sink.add(Format::Svg, format!("{name}.figure.svg"), svg);
    }
    let written = sink.commit()?;
    report_written(&written);

    if report.mismatches > 0 {
        return Err(CliError::NotReproduced(format!(
            "{} stated values were not reproduced",
            report.mismatches
        )));
    }
    Ok(())
}

fn csv_rows(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "gauge",
        "quantity",
        "stated",
        "definition",
        "computed",
        "status",
        "note",
    ])
    .expect("in-memory write");
    for r in rows {
        let status = serde_json::to_value(r.status).expect("plain enum");
        w.write_record([
            r.gauge.clone(),
            r.quantity.clone(),
            r.stated.to_string(),
            r.definition.to_string(),
            r.computed.to_string(),
            status.as_str().unwrap_or_default().to_string(),
            r.note.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_the_known_statements_are_flagged() {
        for g in [1.0, -0.5, 2.0] {
            let rows = build_rows(g);
            assert!(rows.iter().all(|r| r.status != Status::Mismatch));
            let flagged: Vec<(&str, &str)> = rows
                .iter()
                .filter(|r| r.status == Status::Inconsistent)
                .map(|r| (r.gauge.as_str(), r.quantity.as_str()))
                .collect();
            assert_eq!(
                flagged,
                [
                    ("wu-yang", "f(π/2+0)"),
                    ("wu-yang", "f(π/2−0)"),
                    ("anti-wu-yang", "mu_addit"),
                    ("vacuum-wy", "mu_addit"),
                ]
            );
        }
    }
}
