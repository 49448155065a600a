use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn gauge_lab(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gauge-lab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("GAUGE_LAB_OUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn column(csv: &str, row: usize, col: usize) -> f64 {
    csv.lines()
        .nth(row + 1)
        .unwrap()
        .split(',')
        .nth(col)
        .unwrap()
        .parse()
        .unwrap()
}

fn is_empty_dir(dir: &Path) -> bool {
    !dir.exists() || fs::read_dir(dir).unwrap().next().is_none()
}

#[test]
fn analyze_prints_the_measures() {
    let tmp = TempDir::new().unwrap();
    let o = gauge_lab(tmp.path(), &["analyze", "schwinger", "--g", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("mu_inv=+1, mu_addit=+1"), "{}", stdout(&o));
    let report = read_json(&tmp.path().join("schwinger.analysis.json"));
    assert_eq!(report["measures"]["mu_inv"], 1.0);
    assert_eq!(report["regularity"]["verdict"], "Irregular");
    let csv = fs::read_to_string(tmp.path().join("schwinger.measures.csv")).unwrap();
    assert_eq!(
        csv,
        "location,left,right,signed_half,abs_half\n3.141592653589793,-1,1,1,1\n"
    );
}

#[test]
fn analyze_vacuum_dirac_is_regular_after_compensation() {
    let tmp = TempDir::new().unwrap();
    let o = gauge_lab(tmp.path(), &["analyze", "vacuum-d-plus"]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("mu_inv=0, mu_addit=0, Regular(compensated by −g): yes"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn analyze_accepts_an_explicit_compensation() {
    let tmp = TempDir::new().unwrap();
    let shift = tmp.path().join("shift.json");
    fs::write(
        &shift,
        r#"{"label": "+2g on the south", "quantization_unit": null,
            "shifts": [{"lo": 0, "hi": 1.5707963267948966, "value": 0},
                       {"lo": 1.5707963267948966, "hi": 3.141592653589793, "value": 2}]}"#,
    )
    .unwrap();
    let out = tmp.path().join("out");
    let o = gauge_lab(&out, &["analyze", "wu-yang", "--shift", shift.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(
        stdout(&o).contains("Regular(compensated by +2g on the south): no"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn malformed_spec_exits_2_and_names_the_field() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("out");
    let bad = tmp.path().join("bad.json");

    fs::write(&bad, r#"{"label": "x", "g": 1, "pieces": [{"lo": 0, "hi": 1}]}"#).unwrap();
    let o = gauge_lab(&out, &["analyze", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("pieces[0].hi"), "{}", stderr(&o));

    fs::write(
        &bad,
        r#"{"label": "x", "g": 1, "pieces": [{"lo": 0, "hi": 3.141592653589793, "c_kos": 1}]}"#,
    )
    .unwrap();
    let o = gauge_lab(&out, &["analyze", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("c_kos"), "{}", stderr(&o));

    fs::write(&bad, "{not json").unwrap();
    let o = gauge_lab(&out, &["fourier", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(is_empty_dir(&out));
}

#[test]
fn spec_input_matches_the_catalog() {
    let tmp = TempDir::new().unwrap();
    let spec = tmp.path().join("wy.json");
    fs::write(
        &spec,
        r#"{"label": "My Wu-Yang", "g": 1, "pieces": [
            {"lo": 0, "hi": 1.5707963267948966, "c_const": -1, "c_cos": 1},
            {"lo": 1.5707963267948966, "hi": 3.141592653589793, "c_const": 1, "c_cos": 1}]}"#,
    )
    .unwrap();
    let out = tmp.path().join("out");
    let o = gauge_lab(&out, &["analyze", "--spec", spec.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("mu_inv=+1, mu_addit=+1"));
    assert!(out.join("my-wu-yang.analysis.json").exists());
}

#[test]
fn unreadable_input_exits_3() {
    let tmp = TempDir::new().unwrap();
    let o = gauge_lab(tmp.path(), &["analyze", "--spec", "/nonexistent/field.json"]);
    assert_eq!(o.status.code(), Some(3));

    // output directory blocked by a regular file
    let blocker = tmp.path().join("blocked");
    fs::write(&blocker, "").unwrap();
    let o = gauge_lab(&blocker, &["analyze", "schwinger"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bad_arguments_exit_2() {
    let tmp = TempDir::new().unwrap();
    for args in [
        &["analyze", "dirac"][..],
        &["analyze"],
        &["fourier", "schwinger", "--N", "16", "--at", "32"],
        &["probe-axis", "wu-yang", "--z", "1", "--m", "1,0,0"],
        &["probe-axis", "schwinger", "--z", "1", "--m", "1,0"],
        &["probe-axis", "schwinger", "--z", "1", "--m", "1,1,0"],
    ] {
        let o = gauge_lab(tmp.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    assert!(is_empty_dir(tmp.path()));
}

#[test]
fn fourier_wu_yang_midpoints() {
    let tmp = TempDir::new().unwrap();
    let o = gauge_lab(
        tmp.path(),
        &["fourier", "wu-yang", "--N", "4096", "--at", "64,512,4096"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(tmp.path().join("wu-yang.dirichlet.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    for row in 0..3 {
        assert!(column(&csv, row, 4) < 1e-3);
    }
    for name in ["coefficients.csv", "curve.csv", "fourier.json", "fourier.svg"] {
        assert!(tmp.path().join(format!("wu-yang.{name}")).exists(), "{name}");
    }
    let curve = fs::read_to_string(tmp.path().join("wu-yang.curve.csv")).unwrap();
    assert_eq!(curve.lines().next().unwrap(), "x,f,S_64,S_512,S_4096");
    assert_eq!(curve.lines().count(), 2049);
}

#[test]
fn fourier_schwinger_first_sine_coefficient() {
    let tmp = TempDir::new().unwrap();
    let o = gauge_lab(tmp.path(), &["fourier", "schwinger", "--N", "16", "--format", "csv"]);
    assert!(o.status.success());
    let csv = fs::read_to_string(tmp.path().join("schwinger.coefficients.csv")).unwrap();
    let b1 = column(&csv, 1, 2);
    assert!((b1 - (-8.0 / (3.0 * std::f64::consts::PI))).abs() < 1e-12);
    assert!((b1 + 0.8488).abs() < 1e-4);
    assert!(!tmp.path().join("schwinger.fourier.svg").exists());
}

#[test]
fn fourier_constant_field() {
    let tmp = TempDir::new().unwrap();
    let o = gauge_lab(tmp.path(), &["fourier", "vacuum-d-plus", "--format", "csv"]);
    assert!(o.status.success());
    let csv = fs::read_to_string(tmp.path().join("vacuum-d-plus.coefficients.csv")).unwrap();
    assert_eq!(column(&csv, 0, 1), 2.0);
    for row in 1..=4096 {
        assert!(column(&csv, row, 1).abs() < 1e-14);
        assert!(column(&csv, row, 2).abs() < 1e-14);
    }
}

#[test]
fn probe_axis_examples() {
    let tmp = TempDir::new().unwrap();
    let o = gauge_lab(tmp.path(), &["probe-axis", "schwinger", "--z", "1", "--m", "1,0,0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = read_json(&tmp.path().join("schwinger-probe.json"));
    assert_eq!(r["closed_form"]["order"], 1);
    assert!((r["probe"]["coefficient"]["x2"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(r["agree"], true);

    let o = gauge_lab(tmp.path(), &["probe-axis", "dirac-plus", "--z", "1", "--m", "1,0,0"]);
    assert!(o.status.success());
    let r = read_json(&tmp.path().join("dirac-plus-probe.json"));
    assert_eq!(r["closed_form"]["order"], 0);
    assert!(r["probe"]["divergence_order"].as_f64().unwrap() < 0.01);

    let o = gauge_lab(
        tmp.path(),
        &["probe-axis", "dirac-plus", "--z", "0", "--m", "0.6,0,0.8"],
    );
    assert!(o.status.success());
    let r = read_json(&tmp.path().join("dirac-plus-probe.json"));
    assert_eq!(r["closed_form"]["order"], 1);
    assert!((r["closed_form"]["azimuthal_strength"].as_f64().unwrap() + 0.2).abs() < 1e-12);
    assert!((r["probe_strength"].as_f64().unwrap().abs() - 0.2).abs() < 1e-6);

    let o = gauge_lab(
        tmp.path(),
        &[
            "probe-axis",
            "dirac-minus",
            "--z",
            "-1",
            "--m",
            "-0.6,0,-0.8",
            "--g",
            "-2",
        ],
    );
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn probe_axis_rejects_axial_directions() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().join("out");
    let o = gauge_lab(&out, &["probe-axis", "dirac-plus", "--z", "0", "--m", "0,0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(is_empty_dir(&out));
}

#[test]
fn probe_axis_flags_an_unresolved_limit() {
    // with z inside the ε schedule the fit sees the origin, not the half-axis
    let tmp = TempDir::new().unwrap();
    let o = gauge_lab(
        tmp.path(),
        &["probe-axis", "dirac-plus", "--z", "1e-4", "--m", "0.6,0,0.8"],
    );
    assert_eq!(o.status.code(), Some(4));
    let r = read_json(&tmp.path().join("dirac-plus-probe.json"));
    assert_eq!(r["agree"], false);
}

#[test]
fn gauge_transform_builds_wu_yang_from_dirac() {
    let tmp = TempDir::new().unwrap();
    let shift = tmp.path().join("shift.json");
    fs::write(
        &shift,
        r#"{"quantization_unit": 1,
            "shifts": [{"lo": 0, "hi": 1.5707963267948966, "value": 0},
                       {"lo": 1.5707963267948966, "hi": 3.141592653589793, "value": 2}]}"#,
    )
    .unwrap();
    let out = tmp.path().join("out");
    let o = gauge_lab(
        &out,
        &["gauge-transform", "dirac-plus", "--shift", shift.to_str().unwrap()],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(
        stdout(&o).contains("mu_inv: +1 -> +1, mu_addit: +1 -> +1"),
        "{}",
        stdout(&o)
    );

    // the written field is a valid spec and analyzes like the catalog Wu-Yang
    let transformed = out.join("dirac-plus.transformed.json");
    let o = gauge_lab(&out, &["analyze", "--spec", transformed.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("θ = π/2: left -1, right +1"), "{}", stdout(&o));
}

#[test]
fn gauge_transform_rejects_bad_shifts() {
    let tmp = TempDir::new().unwrap();
    let shift = tmp.path().join("shift.json");
    let out = tmp.path().join("out");
    fs::write(
        &shift,
        r#"{"quantization_unit": 1, "shifts": [{"lo": 0, "hi": 3.141592653589793, "value": 0.5}]}"#,
    )
    .unwrap();
    let o = gauge_lab(
        &out,
        &["gauge-transform", "schwinger", "--shift", shift.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("shifts[0].value"), "{}", stderr(&o));

    fs::write(&shift, r#"{"quantization_unit": null}"#).unwrap();
    let o = gauge_lab(
        &out,
        &["gauge-transform", "schwinger", "--shift", shift.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("shifts"), "{}", stderr(&o));
    assert!(is_empty_dir(&out));
}

#[test]
fn reproduce_flags_the_two_additive_measure_statements() {
    let tmp = TempDir::new().unwrap();
    let o = gauge_lab(tmp.path(), &["reproduce-paper"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = read_json(&tmp.path().join("reproduce-paper.json"));
    assert_eq!(report["mismatches"], 0);
    let rows = report["rows"].as_array().unwrap();

    let find = |gauge: &str, quantity: &str| {
        rows.iter()
            .filter(|r| r["gauge"] == gauge && r["quantity"] == quantity)
            .collect::<Vec<_>>()
    };
    for gauge in ["schwinger", "dirac-plus", "dirac-minus", "wu-yang", "anti-wu-yang"] {
        let r = find(gauge, "mu_inv");
        assert_eq!(r[0]["computed"], 1.0, "{gauge}");
        assert_eq!(r[0]["status"], "match");
    }
    assert_eq!(find("vacuum-wy", "mu_inv")[0]["computed"], 0.0);
    for (gauge, value) in [("anti-wu-yang", 3.0), ("vacuum-wy", 2.0)] {
        let r = find(gauge, "mu_addit")[0];
        assert_eq!(r["status"], "inconsistent");
        assert_eq!(r["stated"], 4.0);
        assert_eq!(r["computed"], value);
    }
    for name in ["reproduce-paper.csv", "schwinger.figure.svg", "vacuum-wy.figure.svg"] {
        assert!(tmp.path().join(name).exists(), "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for dir in [&a, &b] {
        let o = gauge_lab(dir.path(), &["fourier", "anti-wu-yang", "--N", "512"]);
        assert!(o.status.success());
        let o = gauge_lab(dir.path(), &["reproduce-paper", "--g", "2"]);
        assert!(o.status.success());
    }
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert!(names.len() > 10);
    for name in names {
        let x = fs::read(a.path().join(&name)).unwrap();
        let y = fs::read(b.path().join(&name)).unwrap();
        assert!(x == y, "{name:?} differs between runs");
    }
}

#[test]
fn output_directory_from_environment() {
    let tmp = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_gauge-lab"))
        .args(["analyze", "dirac-minus"])
        .env("GAUGE_LAB_OUT", tmp.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(tmp.path().join("dirac-minus.analysis.json").exists());
}
