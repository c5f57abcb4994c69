//! Self-contained SVG rendering of the path-fluctuation profile.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::analysis::{AnalyticRow, FluctuationEstimate};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN_L: f64 = 56.0;
const MARGIN_R: f64 = 16.0;
const MARGIN_T: f64 = 16.0;
const MARGIN_B: f64 = 44.0;

struct Frame {
    x_lo: f64,
    x_hi: f64,
    y_max: f64,
}

impl Frame {
    fn sx(&self, x: f64) -> f64 {
        MARGIN_L + (x - self.x_lo) / (self.x_hi - self.x_lo) * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn sy(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_B - y.clamp(0.0, self.y_max) / self.y_max * (HEIGHT - MARGIN_T - MARGIN_B)
    }
}

fn pi_label(k: i64) -> String {
    match k {
        0 => "0".into(),
        2 => "π".into(),
        -2 => "−π".into(),
        1 => "π/2".into(),
        -1 => "−π/2".into(),
        k if k % 2 == 0 => format!("{}π", k / 2).replace('-', "−"),
        k => format!("{k}π/2").replace('-', "−"),
    }
}

/// Path fluctuation (solid) against the normalized fringe pattern (dotted),
/// with optional Monte Carlo estimates and their intervals overlaid.
pub fn fluctuation_svg(
    rows: &[AnalyticRow],
    estimates: Option<&[FluctuationEstimate]>,
    y_max: f64,
) -> String {
    let (x_lo, x_hi) = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) if b.x > a.x => (a.x, b.x),
        _ => (-PI, PI),
    };
    let f = Frame { x_lo, x_hi, y_max };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    // axes
    let (x0, x1) = (f.sx(x_lo), f.sx(x_hi));
    let (y0, y1) = (f.sy(0.0), f.sy(y_max));
    let _ = writeln!(
        s,
        r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" fill="none" stroke="black"/>"#
    );
    let k_lo = (x_lo / (PI / 2.0)).ceil() as i64;
    let k_hi = (x_hi / (PI / 2.0)).floor() as i64;
    for k in k_lo..=k_hi {
        let px = f.sx(k as f64 * PI / 2.0);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 5.0,
            y0 + 20.0,
            pi_label(k)
        );
    }
    for k in 0..=(y_max.floor() as i64) {
        let py = f.sy(k as f64);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{k}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">fringe phase d·p/ħ</text>"#,
        0.5 * (x0 + x1),
        HEIGHT - 6.0
    );

    // normalized fringe pattern
    let pattern: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.2},{:.2}", f.sx(r.x), f.sy(r.pattern)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline points="{}" fill="none" stroke="black" stroke-dasharray="2,3"/>"#,
        pattern.join(" ")
    );

    // path fluctuation, broken where it leaves the plot
    let mut segment: Vec<String> = Vec::new();
    let mut segments: Vec<Vec<String>> = Vec::new();
    for r in rows {
        if r.eps2 <= y_max {
            segment.push(format!("{:.2},{:.2}", f.sx(r.x), f.sy(r.eps2)));
        } else if !segment.is_empty() {
            segments.push(std::mem::take(&mut segment));
        }
    }
    if !segment.is_empty() {
        segments.push(segment);
    }
    for seg in segments {
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
            seg.join(" ")
        );
    }

    if let Some(est) = estimates {
        for e in est {
            let (Some(v), Some(lo), Some(hi)) = (e.eps2_hat, e.ci_low, e.ci_high) else {
                continue;
            };
            if v > y_max || e.bin_center < x_lo || e.bin_center > x_hi {
                continue;
            }
            let px = f.sx(e.bin_center);
            let _ = writeln!(
                s,
                r##"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="#c03030"/><circle cx="{px:.2}" cy="{:.2}" r="1.8" fill="#c03030"/>"##,
                f.sy(lo),
                f.sy(hi),
                f.sy(v)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
