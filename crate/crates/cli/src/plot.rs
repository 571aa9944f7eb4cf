//! Minimal SVG line plots with a logarithmic temperature axis.

use std::fmt::Write;

use thermo_core::TransitionTable;

use crate::run::{Marker, QfiCurve};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 8] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

#[derive(Debug, Clone)]
pub struct PlotOptions {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
}

impl PlotOptions {
    pub fn temperature(title: &str, y_label: &str, log_y: bool) -> Self {
        Self {
            title: title.to_string(),
            x_label: "T".to_string(),
            y_label: y_label.to_string(),
            log_x: true,
            log_y,
        }
    }
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
    from: f64,
    to: f64,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>, log: bool, from: f64, to: f64) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| v.is_finite() && (!log || *v > 0.0)) {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if hi - lo < 1e-300 {
            hi = lo + 1.0;
        }
        if !log {
            let pad = 0.05 * (hi - lo);
            lo = if lo >= 0.0 { 0.0f64.max(lo - pad) } else { lo - pad };
            hi += pad;
        }
        Self { lo, hi, log, from, to }
    }

    fn map(&self, v: f64) -> Option<f64> {
        if !v.is_finite() || (self.log && v <= 0.0) {
            return None;
        }
        let v = if self.log { v.log10() } else { v };
        Some(self.from + (v - self.lo) / (self.hi - self.lo) * (self.to - self.from))
    }

    /// Tick positions in data units with their labels.
    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let (a, b) = (self.lo.ceil() as i32, self.hi.floor() as i32);
            let step = ((b - a) / 8 + 1).max(1);
            (a..=b).step_by(step as usize).map(|k| (10f64.powi(k), format!("1e{k}"))).collect()
        } else {
            let raw = (self.hi - self.lo) / 5.0;
            let mag = 10f64.powf(raw.log10().floor());
            let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(raw);
            let mut out = Vec::new();
            let mut v = (self.lo / step).ceil() * step;
            while v <= self.hi + 1e-9 * step {
                out.push((v, format!("{v:.3e}").replace("e0", "")));
                v += step;
            }
            out
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Series<'a> {
    name: &'a str,
    x: &'a [f64],
    y: &'a [f64],
}

fn render(series: &[Series<'_>], markers: &[Marker], opts: &PlotOptions) -> String {
    let x = Axis::new(series.iter().flat_map(|s| s.x.iter().copied()), opts.log_x, LEFT, WIDTH - RIGHT);
    let y = Axis::new(series.iter().flat_map(|s| s.y.iter().copied()), opts.log_y, HEIGHT - BOTTOM, TOP);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        escape(&opts.title)
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - RIGHT - LEFT,
        HEIGHT - BOTTOM - TOP
    );
    for (v, label) in x.ticks() {
        if let Some(px) = x.map(v) {
            let _ = writeln!(
                svg,
                r#"<line x1="{px:.2}" y1="{}" x2="{px:.2}" y2="{}" stroke="black"/><text x="{px:.2}" y="{}" text-anchor="middle">{label}</text>"#,
                HEIGHT - BOTTOM,
                HEIGHT - BOTTOM + 5.0,
                HEIGHT - BOTTOM + 20.0
            );
        }
    }
    for (v, label) in y.ticks() {
        if let Some(py) = y.map(v) {
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{label}</text>"#,
                LEFT - 5.0,
                LEFT - 8.0,
                py + 4.0
            );
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 15.0,
        escape(&opts.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{0}" text-anchor="middle" transform="rotate(-90 20 {0})">{1}</text>"#,
        (TOP + HEIGHT - BOTTOM) / 2.0,
        escape(&opts.y_label)
    );
    for m in markers {
        if let Some(px) = x.map(m.temperature).filter(|p| (LEFT..=WIDTH - RIGHT).contains(p)) {
            let _ = writeln!(
                svg,
                r##"<line x1="{px:.2}" y1="{TOP}" x2="{px:.2}" y2="{}" stroke="#888" stroke-dasharray="4 3"/>"##,
                HEIGHT - BOTTOM
            );
        }
    }
    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        // break the line wherever a point cannot be drawn
        let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for (&xv, &yv) in s.x.iter().zip(s.y) {
            match (x.map(xv), y.map(yv)) {
                (Some(px), Some(py)) => segments.last_mut().unwrap().push((px, py)),
                _ => segments.push(Vec::new()),
            }
        }
        for seg in segments.iter().filter(|s| s.len() > 1) {
            let points: Vec<String> = seg.iter().map(|(a, b)| format!("{a:.2},{b:.2}")).collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                points.join(" ")
            );
        }
        let ly = TOP + 10.0 + 18.0 * k as f64;
        let lx = WIDTH - RIGHT + 12.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(s.name)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Plots the named columns of a curve; markers become dashed vertical lines.
pub fn curve_svg(curve: &QfiCurve, columns: &[&str], opts: &PlotOptions) -> String {
    let series: Vec<Series<'_>> = curve
        .columns
        .iter()
        .filter(|c| columns.contains(&c.name.as_str()))
        .map(|c| Series { name: &c.name, x: &curve.temperatures, y: &c.values })
        .collect();
    render(&series, &curve.markers, opts)
}

/// Transition energies against the swept parameter, one line per branch.
pub fn transitions_svg(table: &TransitionTable, title: &str) -> String {
    let branches = table.energies.first().map_or(0, Vec::len);
    let data: Vec<(String, Vec<f64>)> =
        (0..branches).map(|l| (format!("E{}", l + 1), table.branch(l))).collect();
    let series: Vec<Series<'_>> =
        data.iter().map(|(n, y)| Series { name: n, x: &table.values, y }).collect();
    let opts = PlotOptions {
        title: title.to_string(),
        x_label: table.parameter.to_string(),
        y_label: "transition energy".to_string(),
        log_x: false,
        log_y: false,
    };
    render(&series, &[], &opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::Column;

    #[test]
    fn draws_every_series_and_marker() {
        let t = thermo_core::numeric::logspace(1e-3, 1.0, 50);
        let curve = QfiCurve {
            columns: vec![
                Column { name: "a".into(), values: t.iter().map(|x| x.sin()).collect() },
                Column { name: "b<1>".into(), values: vec![0.0; 50] },
            ],
            temperatures: t,
            markers: vec![Marker { group: String::new(), energy: 0.1, temperature: 0.04 }],
            metadata: vec![],
        };
        let svg = curve_svg(&curve, &["a", "b<1>"], &PlotOptions::temperature("x", "y", false));
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert!(svg.contains("b&lt;1&gt;"));
        // log-y drops the zero curve entirely
        let svg = curve_svg(&curve, &["a", "b<1>"], &PlotOptions::temperature("x", "y", true));
        assert_eq!(svg.matches("<polyline").count(), 1);
    }
}
