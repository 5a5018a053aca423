//! Minimal static SVG figures: axes, polylines, filled envelopes, error bars.

use std::fmt::Write as _;

use crate::io::documents::{BandDocument, PointwiseDocument};
use crate::simulation::CoverageReport;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

const PALETTE: [&str; 6] = ["#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];

/// Data-to-pixel mapping for one rectangular panel.
#[derive(Debug, Clone, Copy)]
struct Panel {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
}

impl Panel {
    fn new(left: f64, top: f64, width: f64, height: f64, x_range: (f64, f64), y_range: (f64, f64)) -> Self {
        Panel { left, top, width, height, x_range: widen(x_range), y_range: widen(y_range) }
    }

    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x_range.0) / (self.x_range.1 - self.x_range.0) * self.width
    }

    fn py(&self, y: f64) -> f64 {
        self.top + self.height - (y - self.y_range.0) / (self.y_range.1 - self.y_range.0) * self.height
    }

    fn points(&self, xs: &[f64], ys: &[f64]) -> String {
        let mut s = String::new();
        for (&x, &y) in xs.iter().zip(ys) {
            if x.is_finite() && y.is_finite() {
                let _ = write!(s, "{:.2},{:.2} ", self.px(x), self.py(y));
            }
        }
        s.trim_end().to_string()
    }

    fn axes(&self, out: &mut String, x_label: &str, y_label: &str) {
        let (l, t, w, h) = (self.left, self.top, self.width, self.height);
        let _ = writeln!(out, r##"<rect x="{l:.2}" y="{t:.2}" width="{w:.2}" height="{h:.2}" fill="none" stroke="#333"/>"##);
        for v in ticks(self.x_range) {
            let x = self.px(v);
            let _ = writeln!(out, r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#333"/>"##, t + h, t + h + 5.0);
            let _ = writeln!(out, r#"<text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#, t + h + 18.0, fmt_tick(v));
        }
        for v in ticks(self.y_range) {
            let y = self.py(v);
            let _ = writeln!(out, r##"<line x1="{:.2}" y1="{y:.2}" x2="{l:.2}" y2="{y:.2}" stroke="#333"/>"##, l - 5.0);
            let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#, l - 8.0, y + 4.0, fmt_tick(v));
        }
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{}</text>"#, l + w / 2.0, t + h + 38.0, escape(x_label));
        let (cx, cy) = (l - 48.0, t + h / 2.0);
        let _ = writeln!(
            out,
            r#"<text x="{cx:.2}" y="{cy:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 {cx:.2} {cy:.2})">{}</text>"#,
            escape(y_label)
        );
    }

    fn polyline(&self, out: &mut String, xs: &[f64], ys: &[f64], color: &str, extra: &str) {
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.6" {extra}/>"#,
            self.points(xs, ys)
        );
    }

    /// Filled region between `lower` and `upper`.
    fn envelope(&self, out: &mut String, xs: &[f64], lower: &[f64], upper: &[f64], color: &str, opacity: f64) {
        let mut pts = self.points(xs, upper);
        let rx: Vec<f64> = xs.iter().rev().copied().collect();
        let rl: Vec<f64> = lower.iter().rev().copied().collect();
        pts.push(' ');
        pts.push_str(&self.points(&rx, &rl));
        let _ = writeln!(out, r#"<polygon points="{pts}" fill="{color}" fill-opacity="{opacity:.2}" stroke="none"/>"#);
    }

    fn clip(&self, out: &mut String, id: &str) {
        let _ = writeln!(
            out,
            r#"<clipPath id="{id}"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/></clipPath>"#,
            self.left, self.top, self.width, self.height
        );
    }
}

fn widen((lo, hi): (f64, f64)) -> (f64, f64) {
    if !(lo.is_finite() && hi.is_finite()) {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * lo.abs().max(1.0) {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

fn extent<'a>(values: impl IntoIterator<Item = &'a f64>) -> (f64, f64) {
    values
        .into_iter()
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

fn pad((lo, hi): (f64, f64), frac: f64) -> (f64, f64) {
    let d = (hi - lo) * frac;
    (lo - d, hi + d)
}

/// About five round-numbered ticks inside the range.
fn ticks((lo, hi): (f64, f64)) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let mut v = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while v <= hi + 1e-9 * step {
        out.push(if v.abs() < 1e-12 * step { 0.0 } else { v });
        v += step;
    }
    out
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open(width: f64, height: f64, title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{:.1}" y="20" font-size="14" text-anchor="middle">{}</text>"#, width / 2.0, escape(title));
    s
}

fn legend(out: &mut String, x: f64, y: f64, entries: &[(String, String)]) {
    for (i, (label, color)) in entries.iter().enumerate() {
        let yy = y + 16.0 * i as f64;
        let _ = writeln!(out, r#"<line x1="{x:.2}" y1="{yy:.2}" x2="{:.2}" y2="{yy:.2}" stroke="{color}" stroke-width="3"/>"#, x + 18.0);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="11">{}</text>"#, x + 24.0, yy + 4.0, escape(label));
    }
}

/// Estimated map with band envelopes (widest first) and the identity as a red
/// dashed reference line.
pub fn band_svg(docs: &[BandDocument]) -> String {
    let mut sorted: Vec<&BandDocument> = docs.iter().collect();
    sorted.sort_by(|a, b| a.meta.alpha.total_cmp(&b.meta.alpha));
    let Some(first) = sorted.first() else {
        return open(WIDTH, HEIGHT, "empty band");
    };
    let xs: Vec<f64> = first.band.iter().map(|p| p.x).collect();
    let center: Vec<f64> = first.band.iter().map(|p| p.center).collect();
    let ys = sorted.iter().flat_map(|d| d.band.iter().flat_map(|p| [p.lower, p.upper]));
    let ys: Vec<f64> = ys.chain(xs.iter().copied()).collect();
    let panel = Panel::new(
        MARGIN_LEFT,
        MARGIN_TOP,
        WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
        HEIGHT - MARGIN_TOP - MARGIN_BOTTOM,
        extent(&xs),
        pad(extent(&ys), 0.03),
    );
    let mut s = open(WIDTH, HEIGHT, &format!("Transport map estimate, n = {}, m = {}", first.meta.n, first.meta.m));
    panel.clip(&mut s, "plot");
    let _ = writeln!(s, r#"<g clip-path="url(#plot)">"#);
    let mut entries = Vec::new();
    for (i, d) in sorted.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let lower: Vec<f64> = d.band.iter().map(|p| p.lower).collect();
        let upper: Vec<f64> = d.band.iter().map(|p| p.upper).collect();
        panel.envelope(&mut s, &xs, &lower, &upper, color, 0.25);
        entries.push((format!("{:.0}% band", 100.0 * (1.0 - d.meta.alpha)), color.to_string()));
    }
    panel.polyline(&mut s, &xs, &xs, "#d62728", r#"stroke-dasharray="6 4""#);
    panel.polyline(&mut s, &xs, &center, "#111", "");
    let _ = writeln!(s, "</g>");
    panel.axes(&mut s, "x", "T(x)");
    entries.push(("estimate".into(), "#111".into()));
    entries.push(("identity".into(), "#d62728".into()));
    legend(&mut s, MARGIN_LEFT + 12.0, MARGIN_TOP + 16.0, &entries);
    s.push_str("</svg>\n");
    s
}

/// Pointwise intervals as vertical error bars around the plug-in estimate.
pub fn pointwise_svg(docs: &[PointwiseDocument]) -> String {
    let Some(first) = docs.first() else {
        return open(WIDTH, HEIGHT, "no intervals");
    };
    let xs: Vec<f64> = first.intervals.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = docs
        .iter()
        .flat_map(|d| d.intervals.iter().flat_map(|p| [p.lower, p.upper]))
        .chain(xs.iter().copied())
        .collect();
    let panel = Panel::new(
        MARGIN_LEFT,
        MARGIN_TOP,
        WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
        HEIGHT - MARGIN_TOP - MARGIN_BOTTOM,
        pad(extent(&xs), 0.03),
        pad(extent(&ys), 0.03),
    );
    let mut s = open(WIDTH, HEIGHT, &format!("Pointwise intervals, n = {}, m = {}", first.meta.n, first.meta.m));
    let mut entries = Vec::new();
    let k = docs.len() as f64;
    let spacing = if xs.len() > 1 { (panel.px(xs[1]) - panel.px(xs[0])).abs() } else { 20.0 };
    for (i, d) in docs.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let offset = (i as f64 - (k - 1.0) / 2.0) * (spacing / (k + 1.0)).min(6.0);
        for p in &d.intervals {
            let x = panel.px(p.x) + offset;
            let dash = if p.extrapolation { r#" stroke-dasharray="2 2""# } else { "" };
            let _ = writeln!(
                s,
                r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="{color}" stroke-width="1.4"{dash}/>"#,
                panel.py(p.lower),
                panel.py(p.upper)
            );
        }
        entries.push((format!("{:.0}% interval", 100.0 * (1.0 - d.meta.alpha)), color.to_string()));
    }
    for p in &first.intervals {
        let _ = writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="2.2" fill="#111"/>"##, panel.px(p.x), panel.py(p.center));
    }
    panel.polyline(&mut s, &xs, &xs, "#d62728", r#"stroke-dasharray="6 4""#);
    panel.axes(&mut s, "x", "T(x)");
    entries.push(("identity".into(), "#d62728".into()));
    legend(&mut s, MARGIN_LEFT + 12.0, MARGIN_TOP + 16.0, &entries);
    s.push_str("</svg>\n");
    s
}

/// Coverage (left) and median average width (right) against `n`, one line per
/// confidence level, with dotted nominal levels on the left.
pub fn coverage_svg(report: &CoverageReport) -> String {
    let width = 2.0 * WIDTH;
    let mut s = open(width, HEIGHT, "Coverage and width against sample size");
    let mut series: Vec<(f64, Vec<f64>, Vec<f64>, Vec<f64>, &str)> = Vec::new();
    let mut alphas: Vec<f64> = report.uniform.iter().map(|c| c.alpha).collect();
    let mut kind = "uniform";
    if alphas.is_empty() {
        alphas = report.pointwise.iter().map(|c| c.alpha).collect();
        kind = "pointwise";
    }
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    for &a in &alphas {
        let cells: Vec<(f64, f64, f64)> = if kind == "uniform" {
            report.uniform.iter().filter(|c| c.alpha == a).map(|c| (c.n as f64, c.coverage, c.median_average_width)).collect()
        } else {
            report
                .pointwise
                .iter()
                .filter(|c| c.alpha == a)
                .map(|c| (c.n as f64, c.average_coverage, c.median_average_width))
                .collect()
        };
        let ns = cells.iter().map(|c| c.0).collect();
        let cov = cells.iter().map(|c| c.1).collect();
        let wid = cells.iter().map(|c| c.2).collect();
        series.push((a, ns, cov, wid, kind));
    }
    let all_n: Vec<f64> = series.iter().flat_map(|t| t.1.clone()).collect();
    let all_cov: Vec<f64> = series.iter().flat_map(|t| t.2.clone()).chain(alphas.iter().map(|a| 1.0 - a)).collect();
    let all_w: Vec<f64> = series.iter().flat_map(|t| t.3.clone()).chain([0.0]).collect();
    let pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let left = Panel::new(MARGIN_LEFT, MARGIN_TOP, pw, ph, pad(extent(&all_n), 0.03), pad(extent(&all_cov), 0.05));
    let right = Panel::new(WIDTH + MARGIN_LEFT, MARGIN_TOP, pw, ph, pad(extent(&all_n), 0.03), pad(extent(&all_w), 0.05));
    let mut entries = Vec::new();
    for (i, (a, ns, cov, wid, _)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let nominal = vec![1.0 - a; ns.len()];
        left.polyline(&mut s, ns, &nominal, color, r#"stroke-dasharray="2 3" stroke-opacity="0.7""#);
        left.polyline(&mut s, ns, cov, color, "");
        right.polyline(&mut s, ns, wid, color, "");
        for (j, &n) in ns.iter().enumerate() {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, left.px(n), left.py(cov[j]));
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, right.px(n), right.py(wid[j]));
        }
        entries.push((format!("1 - alpha = {:.2}", 1.0 - a), color.to_string()));
    }
    let label = if kind == "uniform" { "coverage probability" } else { "average pointwise coverage" };
    left.axes(&mut s, "n", label);
    right.axes(&mut s, "n", "median average width");
    legend(&mut s, WIDTH + MARGIN_LEFT + pw - 130.0, MARGIN_TOP + 16.0, &entries);
    s.push_str("</svg>\n");
    s
}
