//! Line charts of the objective, one fixed-size panel per λ.

use std::fmt::Write;

use privres_core::model::{ObjectiveCurve, OptimalRange};

use crate::output::GENERATOR;

pub const PANEL_WIDTH: f64 = 640.0;
pub const PANEL_HEIGHT: f64 = 480.0;

const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 56.0;
const BOTTOM: f64 = 64.0;

/// Tick spacing from the 1-2-5 sequence giving roughly `target` ticks.
fn nice_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag)
}

fn value_bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi - lo < 1e-9 {
        (lo - 0.5, hi + 0.5)
    } else {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    }
}

struct Axes {
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Axes {
    fn x(&self, r: u32) -> f64 {
        let t = (f64::from(r).log2() - self.x_lo) / (self.x_hi - self.x_lo);
        LEFT + t * (PANEL_WIDTH - LEFT - RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        let t = (v - self.y_lo) / (self.y_hi - self.y_lo);
        PANEL_HEIGHT - BOTTOM - t * (PANEL_HEIGHT - TOP - BOTTOM)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders `curves` side by side. `optima[i]` belongs to `curves[i]`.
pub fn render(curves: &[ObjectiveCurve], optima: &[OptimalRange]) -> String {
    let width = PANEL_WIDTH * curves.len().max(1) as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{PANEL_HEIGHT:.0}" viewBox="0 0 {width:.0} {PANEL_HEIGHT:.0}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, "<!-- generator: {GENERATOR} -->");
    // a shared y scale keeps the panels comparable
    let (y_lo, y_hi) = value_bounds(curves.iter().flat_map(|c| c.points.iter().map(|p| p.value)));
    let step = nice_step(y_hi - y_lo, 6.0);
    for (i, (curve, opt)) in curves.iter().zip(optima).enumerate() {
        let (r_min, r_max) = (
            curve.points.first().map_or(1, |p| p.resolution),
            curve.points.last().map_or(1, |p| p.resolution),
        );
        let (mut x_lo, mut x_hi) = (f64::from(r_min).log2(), f64::from(r_max).log2());
        if x_hi - x_lo < 1e-9 {
            x_lo -= 1.0;
            x_hi += 1.0;
        } else {
            let pad = 0.04 * (x_hi - x_lo);
            x_lo -= pad;
            x_hi += pad;
        }
        let ax = Axes { x_lo, x_hi, y_lo, y_hi };
        let _ = writeln!(s, r#"<g transform="translate({:.0},0)">"#, i as f64 * PANEL_WIDTH);
        let _ = writeln!(
            s,
            r#"<rect x="0" y="0" width="{PANEL_WIDTH:.0}" height="{PANEL_HEIGHT:.0}" fill="white"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="16">λ = {:.2}</text>"#,
            PANEL_WIDTH / 2.0,
            curve.lambda
        );
        // optimal range band
        let (bx0, bx1) = (ax.x(opt.range.0), ax.x(opt.range.1));
        let _ = writeln!(
            s,
            r##"<rect x="{:.2}" y="{TOP:.2}" width="{:.2}" height="{:.2}" fill="#dbe9f6"/>"##,
            bx0 - 4.0,
            bx1 - bx0 + 8.0,
            PANEL_HEIGHT - TOP - BOTTOM
        );
        // y grid and ticks
        let mut t = (y_lo / step).ceil() * step;
        while t <= y_hi + 1e-12 {
            let y = ax.y(t);
            let _ = writeln!(
                s,
                r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e6e6e6"/>"##,
                PANEL_WIDTH - RIGHT
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 6.0,
                y + 4.0,
                fmt_tick(t, step)
            );
            t += step;
        }
        // axes
        let base = PANEL_HEIGHT - BOTTOM;
        let _ = writeln!(
            s,
            r#"<line x1="{LEFT:.2}" y1="{base:.2}" x2="{:.2}" y2="{base:.2}" stroke="black"/>"#,
            PANEL_WIDTH - RIGHT
        );
        let _ = writeln!(s, r#"<line x1="{LEFT:.2}" y1="{TOP:.2}" x2="{LEFT:.2}" y2="{base:.2}" stroke="black"/>"#);
        for p in &curve.points {
            let x = ax.x(p.resolution);
            let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{base:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, base + 5.0);
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                base + 20.0,
                p.resolution
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">resolution r (r×r pixels, log scale)</text>"#,
            LEFT + (PANEL_WIDTH - LEFT - RIGHT) / 2.0,
            PANEL_HEIGHT - 18.0
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">S(r)</text>"#,
            TOP + (base - TOP) / 2.0,
            TOP + (base - TOP) / 2.0
        );
        // the curve
        let pts: Vec<String> = curve
            .points
            .iter()
            .map(|p| format!("{:.2},{:.2}", ax.x(p.resolution), ax.y(p.value)))
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline points="{}" fill="none" stroke="#1f5fa8" stroke-width="2"/>"##,
            pts.join(" ")
        );
        for p in &curve.points {
            let _ = writeln!(
                s,
                r##"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="#1f5fa8"/>"##,
                ax.x(p.resolution),
                ax.y(p.value)
            );
        }
        let (mx, my) = (ax.x(opt.argmax_resolution), ax.y(opt.max_value));
        let _ = writeln!(
            s,
            r##"<circle cx="{mx:.2}" cy="{my:.2}" r="6" fill="none" stroke="#c0392b" stroke-width="2"/>"##
        );
        let _ = writeln!(
            s,
            r##"<text x="{mx:.2}" y="{:.2}" text-anchor="middle" fill="#c0392b">max at {r}×{r}</text>"##,
            my - 12.0,
            r = opt.argmax_resolution
        );
        // legend
        let lx = PANEL_WIDTH - RIGHT - 170.0;
        let _ = writeln!(
            s,
            r##"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f5fa8" stroke-width="2"/>"##,
            TOP + 12.0,
            lx + 24.0,
            TOP + 12.0
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">S(r)</text>"#, lx + 30.0, TOP + 16.0);
        let _ = writeln!(
            s,
            r##"<rect x="{lx:.2}" y="{:.2}" width="24" height="10" fill="#dbe9f6"/>"##,
            TOP + 25.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 30.0,
            TOP + 34.0,
            escape(&format!("within ε = {} of max", opt.epsilon))
        );
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

fn fmt_tick(v: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let v = if v.abs() < step * 1e-6 { 0.0 } else { v };
    format!("{v:.decimals$}")
}
