//! Minimal static SVG rendering for the experiment panels.

use std::fmt::Write;

const PANEL_W: f64 = 420.0;
const PANEL_H: f64 = 320.0;
const MARGIN_L: f64 = 56.0;
const MARGIN_R: f64 = 16.0;
const MARGIN_T: f64 = 28.0;
const MARGIN_B: f64 = 44.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Style {
    Line,
    Markers,
    /// Markers with symmetric error bars taken from `Series::errors`.
    ErrorBars,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub style: Style,
    pub points: Vec<(f64, f64)>,
    pub errors: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

impl Panel {
    fn bounds(&self) -> (f64, f64, f64, f64) {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for s in &self.series {
            for (i, &(x, y)) in s.points.iter().enumerate() {
                let e = s.errors.get(i).copied().unwrap_or(0.0);
                x0 = x0.min(x);
                x1 = x1.max(x);
                y0 = y0.min(y - e);
                y1 = y1.max(y + e);
            }
        }
        if !x0.is_finite() {
            return (0.0, 1.0, 0.0, 1.0);
        }
        let pad_x = ((x1 - x0) * 0.04).max(1e-9);
        let pad_y = ((y1 - y0) * 0.06).max(1e-9);
        (x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y)
    }

    fn render(&self, out: &mut String, offset_x: f64) {
        let (x0, x1, y0, y1) = self.bounds();
        let pw = PANEL_W - MARGIN_L - MARGIN_R;
        let ph = PANEL_H - MARGIN_T - MARGIN_B;
        let sx = |x: f64| offset_x + MARGIN_L + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| MARGIN_T + (1.0 - (y - y0) / (y1 - y0)) * ph;

        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#,
            offset_x + MARGIN_L
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="18" font-size="13" text-anchor="middle">{}</text>"#,
            offset_x + PANEL_W / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"#,
            offset_x + MARGIN_L + pw / 2.0,
            PANEL_H - 8.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">{}</text>"#,
            offset_x + 14.0,
            MARGIN_T + ph / 2.0,
            offset_x + 14.0,
            MARGIN_T + ph / 2.0,
            escape(&self.y_label)
        );
        for i in 0..=4 {
            let t = i as f64 / 4.0;
            let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{}</text>"#,
                sx(xv),
                MARGIN_T + ph + 14.0,
                tick(xv)
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="end">{}</text>"#,
                offset_x + MARGIN_L - 4.0,
                sy(yv) + 3.0,
                tick(yv)
            );
        }

        for (k, s) in self.series.iter().enumerate() {
            match s.style {
                Style::Line => {
                    let path: Vec<String> = s
                        .points
                        .iter()
                        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                        .collect();
                    let _ = writeln!(
                        out,
                        r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
                        path.join(" "),
                        s.color
                    );
                }
                Style::Markers | Style::ErrorBars => {
                    for (i, &(x, y)) in s.points.iter().enumerate() {
                        if s.style == Style::ErrorBars {
                            let e = s.errors.get(i).copied().unwrap_or(0.0);
                            let _ = writeln!(
                                out,
                                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}"/>"#,
                                sx(x),
                                sy(y - e),
                                sx(x),
                                sy(y + e),
                                s.color
                            );
                        }
                        let _ = writeln!(
                            out,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#,
                            sx(x),
                            sy(y),
                            s.color
                        );
                    }
                }
            }
            let ly = MARGIN_T + 14.0 + 14.0 * k as f64;
            let lx = offset_x + PANEL_W - MARGIN_R - 120.0;
            let _ = writeln!(
                out,
                r#"<rect x="{lx:.2}" y="{:.2}" width="10" height="10" fill="{}"/><text x="{:.2}" y="{ly:.2}" font-size="10">{}</text>"#,
                ly - 9.0,
                s.color,
                lx + 14.0,
                escape(&s.label)
            );
        }
    }
}

/// Renders panels side by side into a standalone SVG document.
pub fn render(panels: &[Panel]) -> String {
    let width = PANEL_W * panels.len().max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL_H}" viewBox="0 0 {width} {PANEL_H}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, p) in panels.iter().enumerate() {
        p.render(&mut out, i as f64 * PANEL_W);
    }
    out.push_str("</svg>\n");
    out
}

fn tick(v: f64) -> String {
    let s = format!("{v:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
