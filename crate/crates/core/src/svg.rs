//! Self-contained SVG scatter plots: computed samples over an exact curve.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

#[derive(Debug, Clone)]
pub struct ScatterPlot<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    /// `(x, computed, exact)` triples, one per sample.
    pub points: &'a [(f64, f64, f64)],
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * lo.abs().max(1.0) {
        let pad = 0.5 * lo.abs().max(1.0);
        return (lo - pad, hi + pad);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl ScatterPlot<'_> {
    pub fn render(&self) -> String {
        let (x0, x1) = range(self.points.iter().map(|p| p.0));
        let (y0, y1) = range(self.points.iter().flat_map(|p| [p.1, p.2]));
        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w;
        let sy = |y: f64| MARGIN_TOP + (y1 - y) / (y1 - y0) * plot_h;

        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        )
        .unwrap();
        writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            escape(self.title)
        )
        .unwrap();
        writeln!(
            out,
            r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
        )
        .unwrap();

        for i in 0..=5 {
            let fx = x0 + (x1 - x0) * i as f64 / 5.0;
            let fy = y0 + (y1 - y0) * i as f64 / 5.0;
            let (px, py) = (sx(fx), sy(fy));
            let bottom = MARGIN_TOP + plot_h;
            writeln!(out, r#"<line x1="{px:.2}" y1="{bottom}" x2="{px:.2}" y2="{}" stroke="black"/>"#, bottom + 5.0).unwrap();
            writeln!(
                out,
                r#"<text x="{px:.2}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{fx:.3}</text>"#,
                bottom + 18.0
            )
            .unwrap();
            writeln!(out, r#"<line x1="{}" y1="{py:.2}" x2="{MARGIN_LEFT}" y2="{py:.2}" stroke="black"/>"#, MARGIN_LEFT - 5.0).unwrap();
            writeln!(
                out,
                r#"<text x="{}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{fy:.3}</text>"#,
                MARGIN_LEFT - 8.0,
                py + 4.0
            )
            .unwrap();
        }
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
            MARGIN_LEFT + plot_w / 2.0,
            HEIGHT - 12.0,
            escape(self.x_label)
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="16" y="{0}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
            MARGIN_TOP + plot_h / 2.0,
            escape(self.y_label)
        )
        .unwrap();

        let mut curve: Vec<(f64, f64)> = self.points.iter().map(|p| (p.0, p.2)).collect();
        curve.sort_by(|a, b| a.0.total_cmp(&b.0));
        let path: Vec<String> = curve.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        writeln!(out, r#"<polyline fill="none" stroke="red" stroke-width="1.5" points="{}"/>"#, path.join(" ")).unwrap();

        writeln!(out, r#"<g fill="steelblue" fill-opacity="0.6">"#).unwrap();
        for &(x, y, _) in self.points {
            writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="2"/>"#, sx(x), sy(y)).unwrap();
        }
        writeln!(out, "</g>").unwrap();
        writeln!(out, "</svg>").unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_marker_per_point_and_no_external_refs() {
        let pts = [(1.0, 0.9, 1.0), (1.5, 0.7, 0.666), (2.0, 0.48, 0.5)];
        let svg = ScatterPlot { title: "speed <r>", x_label: "r", y_label: "speed", points: &pts }.render();
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("speed &lt;r&gt;"));
        assert!(!svg.contains("href"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn degenerate_ranges_do_not_produce_nan() {
        let pts = [(1.0, 0.0, 0.0), (1.0, 0.0, 0.0)];
        let svg = ScatterPlot { title: "", x_label: "", y_label: "", points: &pts }.render();
        assert!(!svg.contains("NaN"));
        let empty = ScatterPlot { title: "", x_label: "", y_label: "", points: &[] }.render();
        assert!(!empty.contains("NaN"));
    }
}
