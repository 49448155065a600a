use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use serde::Serialize;

use gauge_lab::cartesian::{
    azimuthal_unit, closed_form_axis_limit, default_schedule, AxisProbeResult, CartesianError, CartesianGauge,
    CartesianKind, ClosedFormLimit, Vector3,
};
use gauge_lab::export::{self, number, FieldSpec};
use gauge_lab::fourier::{self, DirichletCheck, Method};
use gauge_lab::gaugeops::{apply_shift, invariance_demo, GaugeShift, InvarianceRow};
use gauge_lab::gauges::{sketch, GaugeKind, SingularitySketch};
use gauge_lab::measures::{circle_closure, classify_regularity, full_report, MeasureReport, Verdict};
use gauge_lab::parallel::{map_slice, Execution};
use gauge_lab::piecewise::DirichletConditions;
use gauge_lab::{make_gauge, PiecewiseField, RegularityVerdict};

use crate::output::{self, angle, g_multiple, json, signed, slug, CliError, Format, Outputs};
use crate::plot;
use crate::Input;

/// Uniform θ samples for curves and plots, at cell midpoints so no sample
/// lands on a catalog breakpoint.
pub const CURVE_SAMPLES: usize = 2048;

pub fn load_field(input: &Input) -> Result<(PiecewiseField, String), CliError> {
    match (&input.gauge, &input.spec) {
        (Some(name), None) => {
            let kind: GaugeKind = name.parse().map_err(|e| CliError::Input(format!("{e}")))?;
            if !input.g.is_finite() {
                return Err(CliError::Input(format!("--g must be finite, got {}", input.g)));
            }
            Ok((make_gauge(kind, input.g), kind.cli_name().to_string()))
        }
        (None, Some(path)) => {
            let text = read(path)?;
            let field =
                export::parse_field_spec(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let stem = slug(field.label());
            Ok((field, stem))
        }
        _ => Err(CliError::Input("give either a gauge name or --spec".into())),
    }
}

pub fn load_shift(path: &Path) -> Result<GaugeShift, CliError> {
    let text = read(path)?;
    let bad = |e: String| CliError::Input(format!("{}: {e}", path.display()));
    let shift: GaugeShift = serde_json::from_str(&text).map_err(|e| bad(format!("malformed JSON: {e}")))?;
    shift.validated().map_err(|e| bad(e.to_string()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn finish(sink: Outputs) -> Result<(), CliError> {
    let written = sink.commit()?;
    output::report_written(&written);
    Ok(())
}

/// θ samples and their x images.
pub fn curve_grid() -> (Vec<f64>, Vec<f64>) {
    let thetas: Vec<f64> = (0..CURVE_SAMPLES)
        .map(|i| (i as f64 + 0.5) * PI / CURVE_SAMPLES as f64)
        .collect();
    let xs = thetas.iter().map(|&t| fourier::theta_to_x(t)).collect();
    (thetas, xs)
}

pub fn curve_values(field: &PiecewiseField, thetas: &[f64]) -> Vec<f64> {
    thetas
        .iter()
        .map(|&t| field.evaluate(t).expect("midpoint samples avoid breakpoints"))
        .collect()
}

pub fn curve_sums(series: &fourier::FourierSeries, xs: &[f64], ns: &[usize]) -> Vec<(usize, Vec<f64>)> {
    ns.iter()
        .map(|&n| {
            let s = map_slice(Execution::default(), xs, |&x| {
                series.partial_sum(x, n).expect("n and x validated")
            });
            (n, s)
        })
        .collect()
}

// ---------------------------------------------------------------- analyze

#[derive(Serialize)]
struct Analysis<'a> {
    field: FieldSpec,
    measures: &'a MeasureReport,
    circle_closure: f64,
    regularity: RegularityVerdict,
    uncompensated: RegularityVerdict,
    compensation: Option<GaugeShift>,
    sketch: SingularitySketch,
    dirichlet_conditions: DirichletConditions,
}

/// The regularity line and the verdict behind it. Without an explicit shift,
/// a field whose two axis limits agree is tested against the uniform shift
/// that removes them.
fn regularity(field: &PiecewiseField, shift: Option<GaugeShift>) -> (String, RegularityVerdict, Option<GaugeShift>) {
    let raw = classify_regularity(field, None);
    let yes_no = |v: &RegularityVerdict| if v.verdict == Verdict::Regular { "yes" } else { "no" };
    if let Some(shift) = shift {
        let v = classify_regularity(field, Some(&shift));
        let line = format!("Regular(compensated by {}): {}", shift.display_label(), yes_no(&v));
        return (line, v, Some(shift));
    }
    let (north, south) = raw.endpoint_limits;
    if raw.verdict == Verdict::Irregular && (north - south).abs() <= field.jump_tolerance() {
        let g = field.charge_g();
        let name = if g != 0.0 {
            g_multiple(-north / g)
        } else {
            format!("{}", -north)
        };
        let shift = GaugeShift::uniform(north).with_label(name.clone());
        let v = classify_regularity(field, Some(&shift));
        let line = format!("Regular(compensated by {name}): {}", yes_no(&v));
        return (line, v, Some(shift));
    }
    (format!("Regular: {}", yes_no(&raw)), raw, None)
}

fn describe_field(field: &PiecewiseField) -> String {
    let mut s = format!("{} (g = {})\n", field.label(), field.charge_g());
    for p in field.pieces() {
        s.push_str(&format!("  ({}, {}): {}\n", angle(p.lo), angle(p.hi), p.expr));
    }
    s
}

fn describe_measures(report: &MeasureReport) -> String {
    let mut s = String::new();
    if report.contributions.is_empty() {
        s.push_str("  no discontinuities\n");
    }
    for c in &report.contributions {
        let r = &c.record;
        let place = if r.is_endpoint() {
            "θ = 0 ≡ π".to_string()
        } else {
            format!("θ = {}", angle(r.location))
        };
        s.push_str(&format!(
            "  {place}: left {}, right {}, signed/2 {}, |jump|/2 {}\n",
            signed(r.left_limit),
            signed(r.right_limit),
            signed(c.signed_half_jump),
            signed(c.abs_half_jump)
        ));
    }
    s
}

pub fn analyze(input: &Input, shift: Option<&Path>, mut sink: Outputs) -> Result<(), CliError> {
    let (field, stem) = load_field(input)?;
    let shift = shift.map(load_shift).transpose()?;

    let report = full_report(&field);
    let uncompensated = classify_regularity(&field, None);
    let (line, verdict, compensation) = regularity(&field, shift);
    let sk = sketch(&field);
    let conditions = field.check_dirichlet_conditions();

    print!("{}", describe_field(&field));
    println!(
        "mu_inv={}, mu_addit={}, {line}",
        signed(report.mu_inv),
        signed(report.mu_addit)
    );
    print!("{}", describe_measures(&report));
    println!(
        "axis limits: f(0+0) = {}, f(π−0) = {}",
        signed(field.north_limit()),
        signed(field.south_limit())
    );
    println!(
        "sketch: x₃⁺ {} | origin {} | x₃⁻ {}",
        sk.positive_axis.label, sk.origin, sk.negative_axis.label
    );
    let yn = |b: bool| if b { "yes" } else { "no" };
    println!(
        "Dirichlet conditions: bounded {}, piecewise continuous {}, piecewise monotone {} ({} monotone segments)",
        yn(conditions.bounded),
        yn(conditions.piecewise_continuous),
        yn(conditions.piecewise_monotone),
        conditions.monotone_segments.len()
    );

    let analysis = Analysis {
        field: FieldSpec::from_field(&field),
        measures: &report,
        circle_closure: circle_closure(&field),
        regularity: verdict,
        uncompensated,
        compensation,
        sketch: sk,
        dirichlet_conditions: conditions,
    };
    sink.add(Format::Json, format!("{stem}.analysis.json"), json(&analysis));
    sink.add(
        Format::Csv,
        format!("{stem}.measures.csv"),
        export::measures_csv(&report),
    );
    finish(sink)
}

// ---------------------------------------------------------------- fourier

#[derive(Serialize)]
struct GibbsRow {
    n: usize,
    x: f64,
    overshoot: f64,
}

#[derive(Serialize)]
struct FourierSummary {
    label: String,
    g: f64,
    terms: usize,
    mapping: String,
    a0: f64,
    mean_square: f64,
    energy: f64,
    parseval_deficit: f64,
    dirichlet: Vec<(usize, DirichletCheck)>,
    gibbs: Vec<GibbsRow>,
}

pub fn fourier(input: &Input, terms: usize, at: &[usize], mut sink: Outputs) -> Result<(), CliError> {
    let (field, stem) = load_field(input)?;
    if terms == 0 {
        return Err(CliError::Input("--N must be at least 1".into()));
    }
    let mut ns: Vec<usize> = if at.is_empty() {
        vec![64.min(terms), 512.min(terms), terms]
    } else {
        at.to_vec()
    };
    if let Some(&bad) = ns.iter().find(|&&n| n == 0 || n > terms) {
        return Err(CliError::Input(format!("--at {bad} must lie in 1..={terms}")));
    }
    ns.sort_unstable();
    ns.dedup();

    let series = fourier::coefficients(&field, terms, Method::Analytic).map_err(|e| CliError::Input(e.to_string()))?;

    let mut checks = Vec::new();
    for &n in &ns {
        let rows = fourier::dirichlet_check(&field, &series, n).map_err(|e| CliError::Internal(e.to_string()))?;
        checks.extend(rows.into_iter().map(|c| (n, c)));
    }
    let mut gibbs = Vec::new();
    for &n in ns.iter().filter(|&&n| n >= 64) {
        for j in field.discontinuities() {
            let x = fourier::jump_x(&j);
            let overshoot = fourier::gibbs_overshoot_with(&field, &series, n, x, Execution::default())
                .map_err(|e| CliError::Internal(e.to_string()))?;
            gibbs.push(GibbsRow { n, x, overshoot });
        }
    }

    let (thetas, xs) = curve_grid();
    let values = curve_values(&field, &thetas);
    let sums = curve_sums(&series, &xs, &ns);

    let mean_square = fourier::mean_square(&field);
    let energy = series.energy();

    print!("{}", describe_field(&field));
    println!("N = {terms}, {}", series.mapping);
    println!("a0 = {}", number(series.a0));
    for k in 1..=terms.min(4) {
        println!(
            "a_{k} = {}, b_{k} = {}",
            number(series.a[k - 1]),
            number(series.b[k - 1])
        );
    }
    println!(
        "Parseval: (1/π)∫F² = {}, a0²/2 + Σ(a_k² + b_k²) = {}, deficit {}",
        number(mean_square),
        number(energy),
        number(mean_square - energy)
    );
    if checks.is_empty() {
        println!("no discontinuities: nothing to check at jumps");
    } else {
        println!(
            "{:>6}  {:>10}  {:>22}  {:>22}  {:>12}",
            "n", "x", "S_n(x)", "midpoint", "error"
        );
        for (n, c) in &checks {
            println!(
                "{:>6}  {:>10}  {:>22}  {:>22}  {:>12.3e}",
                n,
                angle(c.point),
                number(c.partial_sum_value),
                number(c.midpoint_value),
                c.error
            );
        }
    }
    for row in &gibbs {
        println!(
            "Gibbs overshoot at x = {}, n = {}: {:.5}",
            angle(row.x),
            row.n,
            row.overshoot
        );
    }

    let summary = FourierSummary {
        label: field.label().to_string(),
        g: field.charge_g(),
        terms,
        mapping: series.mapping.clone(),
        a0: series.a0,
        mean_square,
        energy,
        parseval_deficit: mean_square - energy,
        dirichlet: checks.clone(),
        gibbs,
    };
    sink.add(
        Format::Csv,
        format!("{stem}.coefficients.csv"),
        export::coefficients_csv(&series),
    );
    sink.add(
        Format::Csv,
        format!("{stem}.curve.csv"),
        export::curve_csv(&xs, &values, &sums),
    );
    sink.add(
        Format::Csv,
        format!("{stem}.dirichlet.csv"),
        export::dirichlet_csv(&checks),
    );
    sink.add(Format::Json, format!("{stem}.fourier.json"), json(&summary));
    if sink.wants(Format::Svg) {
        sink.add(
            Format::Svg,
            format!("{stem}.fourier.svg"),
            plot::overlay(&field, &xs, &values, &sums),
        );
    }
    finish(sink)
}

// ---------------------------------------------------------------- probe-axis

#[derive(Serialize)]
struct ProbeReport {
    gauge: String,
    g: f64,
    z: f64,
    m: Vector3,
    probe: AxisProbeResult,
    probe_strength: f64,
    closed_form: ClosedFormLimit,
    agree: bool,
}

const ORDER_TOLERANCE: f64 = 0.01;
const COEFFICIENT_TOLERANCE: f64 = 0.01;

/// Whether a fitted probe matches the analytic limit: order within 0.01 and,
/// for a divergent limit, coefficient within 1 % relative; a finite limit
/// must vanish.
/// A vanishing closed-form coefficient (e.g. `g = 0`) leaves nothing to fit
/// an order to, so only the vanishing is checked.
pub fn probe_agrees(probe: &AxisProbeResult, closed: &ClosedFormLimit, g: f64) -> bool {
    let scale = closed.coefficient.norm();
    if closed.order == 0 || scale == 0.0 {
        let vanishes = probe.coefficient.norm() <= 1e-6 * g.abs().max(1.0);
        return vanishes && (scale == 0.0 || probe.divergence_order < ORDER_TOLERANCE);
    }
    (probe.divergence_order - closed.order as f64).abs() <= ORDER_TOLERANCE
        && (probe.coefficient - closed.coefficient).norm() <= COEFFICIENT_TOLERANCE * scale
}

fn cartesian_input(err: CartesianError) -> CliError {
    CliError::Input(err.to_string())
}

pub fn probe_axis(name: &str, g: f64, z: f64, m: &[f64], mut sink: Outputs) -> Result<(), CliError> {
    let kind = CartesianKind::from_cli_name(name).ok_or_else(|| {
        CliError::Input(format!(
            "unknown Cartesian gauge `{name}` (expected schwinger, dirac-plus or dirac-minus)"
        ))
    })?;
    if !g.is_finite() || !z.is_finite() {
        return Err(CliError::Input("--g and --z must be finite".into()));
    }
    let [m1, m2, m3] = m else {
        return Err(CliError::Input(format!("--m needs three components, got {}", m.len())));
    };
    let raw = Vector3::new(*m1, *m2, *m3);
    if !raw.is_finite() || (raw.norm() - 1.0).abs() > 1e-9 {
        return Err(CliError::Input(format!(
            "--m must be a unit vector, |m| = {}",
            raw.norm()
        )));
    }
    let m = raw.normalized().expect("unit length checked");

    let gauge = CartesianGauge::along_e3(kind, g);
    let schedule = default_schedule();
    let probe = gauge_lab::cartesian::axis_probe_with(&gauge, z, m, &schedule, Execution::default())
        .map_err(cartesian_input)?;
    let closed = closed_form_axis_limit(&gauge, z, m).map_err(cartesian_input)?;
    let rho = m.x1.hypot(m.x2);
    let probe_strength = rho * probe.coefficient.dot(&azimuthal_unit(&m));
    let agree = probe_agrees(&probe, &closed, g);

    let v = |a: Vector3| format!("({}, {}, {})", number(a.x1), number(a.x2), number(a.x3));
    println!("{} (g = {g}) at z = {z}, m = {}", kind.cli_name(), v(m));
    println!(
        "probe:       order {:.4} (raw exponent {:.6}, residual {:.2e}), coefficient {}, strength C = {}, direction match {:.6}",
        probe.divergence_order,
        probe.fitted_exponent,
        probe.fit_residual,
        v(probe.coefficient),
        number(probe_strength),
        probe.direction_match
    );
    println!(
        "closed form: order {}, coefficient {}, strength C = {}",
        closed.order,
        v(closed.coefficient),
        number(closed.azimuthal_strength)
    );
    println!("agreement: {}", if agree { "yes" } else { "no" });

    let samples: Vec<(f64, Vector3)> = schedule
        .iter()
        .map(|&eps| (eps, gauge.eval_potential(Vector3::E3 * z + m * eps)))
        .filter_map(|(eps, a)| a.ok().map(|a| (eps, a)))
        .collect();
    let csv = export::probe_csv(&samples);

    let report = ProbeReport {
        gauge: kind.cli_name().to_string(),
        g,
        z,
        m,
        probe,
        probe_strength,
        closed_form: closed,
        agree,
    };
    let stem = format!("{}-probe", kind.cli_name());
    sink.add(Format::Json, format!("{stem}.json"), json(&report));
    sink.add(Format::Csv, format!("{stem}.csv"), csv);
    finish(sink)?;
    if agree {
        Ok(())
    } else {
        Err(CliError::ProbeMismatch(
            "fitted axis limit disagrees with the closed form".into(),
        ))
    }
}

// ---------------------------------------------------------------- gauge-transform

#[derive(Serialize)]
struct TransformReport {
    before: FieldSpec,
    shift: GaugeShift,
    after: FieldSpec,
    invariance: InvarianceRow,
    regularity_before: RegularityVerdict,
    regularity_after_compensated: RegularityVerdict,
}

pub fn gauge_transform(input: &Input, shift_path: &Path, mut sink: Outputs) -> Result<(), CliError> {
    let (field, stem) = load_field(input)?;
    let shift = load_shift(shift_path)?;
    let shifted = apply_shift(&field, &shift);
    let row = invariance_demo(&field, std::slice::from_ref(&shift))
        .map_err(|e| CliError::Internal(e.to_string()))?
        .remove(0);
    let before = classify_regularity(&field, None);
    let after = classify_regularity(&shifted, Some(&shift));

    print!("{}", describe_field(&field));
    println!("shift: {}", shift.display_label());
    for s in &shift.shifts {
        println!("  ({}, {}): {}", angle(s.lo), angle(s.hi), signed(s.value));
    }
    print!("{}", describe_field(&shifted));
    println!(
        "mu_inv: {} -> {}, mu_addit: {} -> {}",
        signed(row.mu_inv_before),
        signed(row.mu_inv_after),
        signed(row.mu_addit_before),
        signed(row.mu_addit_after)
    );
    print!("{}", describe_measures(&full_report(&shifted)));
    println!(
        "regularity: {:?} before, {:?} after removing the shift",
        before.verdict, after.verdict
    );

    let csv = export::invariance_csv(std::slice::from_ref(&row));
    let report = TransformReport {
        before: FieldSpec::from_field(&field),
        shift,
        after: FieldSpec::from_field(&shifted),
        invariance: row,
        regularity_before: before,
        regularity_after_compensated: after,
    };
    sink.add(
        Format::Json,
        format!("{stem}.transformed.json"),
        export::field_spec_json(&shifted) + "\n",
    );
    sink.add(Format::Json, format!("{stem}.transform.json"), json(&report));
    sink.add(Format::Csv, format!("{stem}.invariance.csv"), csv);
    sink.add(
        Format::Csv,
        format!("{stem}.transformed.measures.csv"),
        export::measures_csv(&full_report(&shifted)),
    );
    finish(sink)
}
