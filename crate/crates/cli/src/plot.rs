//! Minimal SVG line plots of a field and its partial sums on `x ∈ [−π, π]`.
//!
//! One-sided limits at each jump are drawn as open circles, the midpoint the
//! series converges to as a filled dot.

use std::f64::consts::PI;
use std::fmt::Write;

use gauge_lab::fourier::{jump_x, theta_to_x};
use gauge_lab::PiecewiseField;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

struct Frame {
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x + PI) / (2.0 * PI) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y_lo) / (self.y_hi - self.y_lo) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn polyline(out: &mut String, frame: &Frame, pts: &[(f64, f64)], color: &str, width: f64) {
    if pts.len() < 2 {
        return;
    }
    let coords: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="{color}" stroke-width="{width}" points="{}"/>"#,
        coords.join(" ")
    );
}

fn marker(out: &mut String, frame: &Frame, x: f64, y: f64, filled: bool) {
    let fill = if filled { "black" } else { "white" };
    let _ = writeln!(
        out,
        r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{fill}" stroke="black" stroke-width="1.5"/>"#,
        frame.px(x),
        frame.py(y)
    );
}

/// `xs` must be increasing; `values[i] = f(xs[i])`, `sums` are `(n, S_n(xs))`.
pub fn overlay(field: &PiecewiseField, xs: &[f64], values: &[f64], sums: &[(usize, Vec<f64>)]) -> String {
    let jumps = field.discontinuities();
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    let all = values
        .iter()
        .chain(sums.iter().flat_map(|(_, s)| s.iter()))
        .chain(jumps.iter().flat_map(|j| [&j.left_limit, &j.right_limit]));
    for &v in all {
        y_lo = y_lo.min(v);
        y_hi = y_hi.max(v);
    }
    if y_hi - y_lo <= 1e-12 || (y_hi - y_lo).is_nan() {
        let pad = y_lo.abs().max(1.0);
        y_lo -= pad;
        y_hi += pad;
    }
    let pad = 0.08 * (y_hi - y_lo);
    let frame = Frame {
        y_lo: y_lo - pad,
        y_hi: y_hi + pad,
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="24" font-size="14">{} (g = {})</text>"#,
        escape(field.label()),
        field.charge_g()
    );

    // frame, ticks, zero line
    let (left, right) = (frame.px(-PI), frame.px(PI));
    let (top, bottom) = (frame.py(frame.y_hi), frame.py(frame.y_lo));
    let _ = writeln!(
        out,
        r##"<rect x="{left:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#444"/>"##,
        right - left,
        bottom - top
    );
    for (x, label) in [
        (-PI, "−π"),
        (-PI / 2.0, "−π/2"),
        (0.0, "0"),
        (PI / 2.0, "π/2"),
        (PI, "π"),
    ] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            frame.px(x),
            bottom + 18.0
        );
    }
    for i in 0..=4 {
        let y = y_lo + (y_hi - y_lo) * i as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 6.0,
            frame.py(y) + 4.0,
            tick(y)
        );
    }
    if frame.y_lo < 0.0 && frame.y_hi > 0.0 {
        let _ = writeln!(
            out,
            r##"<line x1="{left:.2}" y1="{y:.2}" x2="{right:.2}" y2="{y:.2}" stroke="#bbb" stroke-dasharray="4 3"/>"##,
            y = frame.py(0.0)
        );
    }

    for (i, (n, s)) in sums.iter().enumerate() {
        let pts: Vec<(f64, f64)> = xs.iter().copied().zip(s.iter().copied()).collect();
        polyline(&mut out, &frame, &pts, PALETTE[i % PALETTE.len()], 1.2);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" fill="{}">S_{n}</text>"#,
            right - 70.0,
            top + 18.0 + 16.0 * (i + 1) as f64,
            PALETTE[i % PALETTE.len()]
        );
    }

    // the field itself, broken at its breakpoints
    let cuts: Vec<f64> = field.breakpoints().map(theta_to_x).collect();
    let mut run: Vec<(f64, f64)> = Vec::new();
    for (&x, &v) in xs.iter().zip(values) {
        if let Some(&(px, _)) = run.last() {
            if cuts.iter().any(|&c| px < c && c < x) {
                polyline(&mut out, &frame, &run, "black", 2.0);
                run.clear();
            }
        }
        run.push((x, v));
    }
    polyline(&mut out, &frame, &run, "black", 2.0);
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">f</text>"#, right - 70.0, top + 18.0);

    for j in &jumps {
        if j.is_endpoint() {
            marker(&mut out, &frame, PI, j.left_limit, false);
            marker(&mut out, &frame, -PI, j.right_limit, false);
            marker(&mut out, &frame, PI, j.midpoint(), true);
            marker(&mut out, &frame, -PI, j.midpoint(), true);
        } else {
            let x = jump_x(j);
            marker(&mut out, &frame, x, j.left_limit, false);
            marker(&mut out, &frame, x, j.right_limit, false);
            marker(&mut out, &frame, x, j.midpoint(), true);
        }
    }
    out.push_str("</svg>\n");
    out
}

fn tick(y: f64) -> String {
    let r = (y * 1000.0).round() / 1000.0;
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
