//! Density-overlay SVG: the KDE curve and candidate densities on the KDE grid.

use std::fmt::Write as _;

const W: f64 = 720.0;
const H: f64 = 450.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 48.0;
const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityPlot {
    pub grid: Vec<f64>,
    pub kde: Vec<f64>,
    pub curves: Vec<Curve>,
    /// Observations, drawn as a rug.
    pub data: Vec<f64>,
}

/// Roughly five round-numbered ticks spanning `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0 && span.is_finite()) {
        return vec![lo];
    }
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn label(v: f64) -> String {
    let s = format!("{:.6}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl DensityPlot {
    pub fn to_svg(&self) -> String {
        let (x0, x1) = (
            self.grid.first().copied().unwrap_or(0.0),
            self.grid.last().copied().unwrap_or(1.0),
        );
        let ymax = self
            .kde
            .iter()
            .chain(self.curves.iter().flat_map(|c| c.values.iter()))
            .copied()
            .filter(|v| v.is_finite())
            .fold(0.0f64, f64::max)
            .max(f64::MIN_POSITIVE)
            * 1.05;
        let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * (W - LEFT - RIGHT);
        let py = |y: f64| H - BOTTOM - y / ymax * (H - TOP - BOTTOM);
        let path = |vals: &[f64]| -> String {
            let mut d = String::new();
            for (x, y) in self.grid.iter().zip(vals) {
                let y = if y.is_finite() { y.min(ymax) } else { ymax };
                let _ = write!(d, "{}{:.2},{:.2}", if d.is_empty() { "M" } else { " L" }, px(*x), py(y));
            }
            d
        };

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        // Axes.
        let _ = writeln!(
            s,
            r#"<path d="M{LEFT},{TOP} L{LEFT},{b} L{r},{b}" fill="none" stroke="black"/>"#,
            b = H - BOTTOM,
            r = W - RIGHT
        );
        for t in ticks(x0, x1) {
            let x = px(t);
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{b}" x2="{x:.2}" y2="{b2}" stroke="black"/><text x="{x:.2}" y="{ty}" text-anchor="middle">{l}</text>"#,
                b = H - BOTTOM,
                b2 = H - BOTTOM + 5.0,
                ty = H - BOTTOM + 18.0,
                l = label(t)
            );
        }
        for t in ticks(0.0, ymax) {
            let y = py(t);
            let _ = writeln!(
                s,
                r#"<line x1="{l0}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{tx}" y="{y:.2}" text-anchor="end" dominant-baseline="middle">{l}</text>"#,
                l0 = LEFT - 5.0,
                tx = LEFT - 8.0,
                l = label(t)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{y}" text-anchor="middle">x</text>"#,
            x = (LEFT + W - RIGHT) / 2.0,
            y = H - 10.0
        );
        // Rug.
        for &v in &self.data {
            let x = px(v);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{a}" x2="{x:.2}" y2="{b}" stroke="#555" stroke-width="0.8"/>"##,
                a = H - BOTTOM,
                b = H - BOTTOM - 8.0
            );
        }
        let _ = writeln!(
            s,
            r#"<path d="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            path(&self.kde)
        );
        for (i, c) in self.curves.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<path d="{}" fill="none" stroke="{}" stroke-width="1.6" stroke-dasharray="{}"/>"#,
                path(&c.values),
                PALETTE[i % PALETTE.len()],
                if i % 2 == 0 { "6 3" } else { "2 2" }
            );
        }
        // Legend.
        let entries =
            std::iter::once(("KDE".to_string(), "black")).chain(self.curves.iter().enumerate().map(|(i, c)| (c.label.clone(), PALETTE[i % PALETTE.len()])));
        for (k, (name, colour)) in entries.enumerate() {
            let y = TOP + 10.0 + 18.0 * k as f64;
            let x = W - RIGHT - 230.0;
            let _ = writeln!(
                s,
                r#"<line x1="{x}" y1="{y}" x2="{x2}" y2="{y}" stroke="{colour}" stroke-width="2"/><text x="{tx}" y="{y}" dominant-baseline="middle">{n}</text>"#,
                x2 = x + 24.0,
                tx = x + 30.0,
                n = escape(&name)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tick_spacing() {
        assert_eq!(ticks(0.0, 10.0), vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
        let t = ticks(-3.7, 141.2);
        assert!(t.len() >= 3 && t.len() <= 7, "{t:?}");
    }

    #[test]
    fn svg_has_one_path_per_curve() {
        let p = DensityPlot {
            grid: vec![0.0, 1.0, 2.0],
            kde: vec![0.1, 0.5, 0.1],
            curves: vec![
                Curve { label: "a<b".into(), values: vec![0.2, 0.4, 0.2] },
                Curve { label: "c".into(), values: vec![0.3, 0.3, f64::NAN] },
            ],
            data: vec![1.0],
        };
        let svg = p.to_svg();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<path").count(), 4);
        assert!(svg.contains("a&lt;b"));
    }
}
