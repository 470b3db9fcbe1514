//! Static scatter charts as standalone SVG 1.1, one panel per y column
//! sharing the x axis.

use std::fmt::Write as _;

const WIDTH: f64 = 720.0;
const PANEL_HEIGHT: f64 = 240.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 36.0;
const GAP: f64 = 44.0;
const TICKS: usize = 5;

/// One series to draw: `(x, y)` pairs, missing values already dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
        let pad = 0.5 * lo.abs().max(1.0);
        return (lo - pad, hi + pad);
    }
    let pad = 0.04 * (hi - lo);
    (lo - pad, hi + pad)
}

fn tick_label(v: f64, span: f64) -> String {
    if v == 0.0 || (1e-3..1e4).contains(&span) {
        let decimals = (2.0 - span.log10().floor()).clamp(0.0, 6.0) as usize;
        let s = format!("{v:.decimals$}");
        if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') { "0".into() } else { s }
    } else {
        format!("{v:.2e}")
    }
}

/// Renders the panels into a complete SVG document.
pub fn render(title: &str, x_label: &str, panels: &[Panel]) -> String {
    let plot_w = WIDTH - LEFT - RIGHT;
    let height = TOP + panels.len().max(1) as f64 * (PANEL_HEIGHT + GAP);
    let (x0, x1) = range(panels.iter().flat_map(|p| p.points.iter().map(|q| q.0)));
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="yes"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    for (k, panel) in panels.iter().enumerate() {
        let top = TOP + k as f64 * (PANEL_HEIGHT + GAP);
        let bottom = top + PANEL_HEIGHT;
        let (y0, y1) = range(panel.points.iter().map(|q| q.1));
        let sy = |y: f64| bottom - (y - y0) / (y1 - y0) * PANEL_HEIGHT;

        let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="11">"#);
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{top}" width="{plot_w}" height="{PANEL_HEIGHT}" fill="none" stroke="black"/>"#
        );
        for i in 0..TICKS {
            let f = i as f64 / (TICKS - 1) as f64;
            let xv = x0 + f * (x1 - x0);
            let yv = y0 + f * (y1 - y0);
            let (px, py) = (sx(xv), sy(yv));
            let _ = writeln!(
                s,
                r#"<line x1="{px:.2}" y1="{bottom}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                bottom + 4.0,
                bottom + 16.0,
                tick_label(xv, x1 - x0)
            );
            let _ = writeln!(
                s,
                r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 4.0,
                LEFT - 6.0,
                py + 4.0,
                tick_label(yv, y1 - y0)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + plot_w / 2.0,
            bottom + 32.0,
            escape(x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
            top + PANEL_HEIGHT / 2.0,
            top + PANEL_HEIGHT / 2.0,
            escape(&panel.label)
        );
        let _ = writeln!(s, "</g>");

        let _ = write!(s, r##"<g fill="#1f4e9c" stroke="none">"##);
        for &(x, y) in &panel.points {
            let _ = write!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="1.4"/>"#, sx(x), sy(y));
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}
