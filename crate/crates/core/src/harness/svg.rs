//! Minimal static SVG plots. Coordinates are printed with fixed precision so
//! the same report always renders to the same bytes.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn new(x: (f64, f64), y: (f64, f64)) -> Self {
        let pad = |(lo, hi): (f64, f64)| if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
        Self { x: pad(x), y: pad(y) }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (H - TOP - BOTTOM)
    }
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn header(out: &mut String, title: &str, x_label: &str, y_label: &str, frame: &Frame) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{:.2}" y="18" text-anchor="middle" font-size="14">{title}</text>"#, W / 2.0);
    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(
        out,
        r#"<path d="M{x0:.2},{y0:.2} L{x0:.2},{y1:.2} L{x1:.2},{y1:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x_label}</text>"#, (x0 + x1) / 2.0, H - 12.0);
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{y_label}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
    for (v, anchor) in [(frame.x.0, "start"), (frame.x.1, "end")] {
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{v:.3}</text>"#, frame.px(v), y1 + 16.0);
    }
    for v in [frame.y.0, frame.y.1] {
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3}</text>"#, x0 - 6.0, frame.py(v) + 4.0);
    }
}

fn polyline(out: &mut String, frame: &Frame, pts: &[(f64, f64)], colour: &str, dashed: bool) {
    let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y))).collect();
    let dash = if dashed { r#" stroke-dasharray="6,4""# } else { "" };
    let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{colour}"{dash}/>"#, coords.join(" "));
}

fn legend(out: &mut String, row: usize, colour: &str, label: &str) {
    let y = TOP + 8.0 + 16.0 * row as f64;
    let x = W - RIGHT - 170.0;
    let _ = writeln!(out, r#"<rect x="{x:.2}" y="{:.2}" width="10" height="10" fill="{colour}"/>"#, y - 9.0);
    let _ = writeln!(out, r#"<text x="{:.2}" y="{y:.2}">{label}</text>"#, x + 16.0);
}

/// Log-log scatter of median deviation against n, one circle per sample size,
/// with the fitted line `ln m = intercept + slope·ln n`.
pub(crate) fn rate_plot(points: &[(usize, f64)], slope: f64, intercept: f64) -> String {
    let lx: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ly: Vec<f64> = points.iter().map(|&(_, m)| m.ln()).collect();
    let fit = |x: f64| intercept + slope * x;
    let (x0, x1) = extent(lx.iter().copied());
    let frame = Frame::new((x0, x1), extent(ly.iter().copied().chain([fit(x0), fit(x1)])));
    let mut out = String::new();
    header(&mut out, "median |LoO - L_P| vs n", "ln n", "ln median deviation", &frame);
    polyline(&mut out, &frame, &[(x0, fit(x0)), (x1, fit(x1))], PALETTE[3], false);
    for (x, y) in lx.iter().zip(&ly) {
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{}"/>"#, frame.px(*x), frame.py(*y), PALETTE[0]);
    }
    legend(&mut out, 0, PALETTE[0], "median deviation");
    legend(&mut out, 1, PALETTE[3], &format!("fit, slope {slope:.4}"));
    out.push_str("</svg>\n");
    out
}

/// Exceedance rate against x, one curve per n, with the failure bound `e·e^{−x}`.
pub(crate) fn coverage_plot(series: &[(usize, Vec<(f64, f64)>)], reference: &[(f64, f64)]) -> String {
    let (x0, x1) = extent(reference.iter().map(|p| p.0));
    let frame = Frame::new((x0, x1), (0.0, 1.0));
    let clip = |pts: &[(f64, f64)]| pts.iter().map(|&(x, y)| (x, y.min(1.0))).collect::<Vec<_>>();
    let mut out = String::new();
    header(&mut out, "exceedance rate vs x", "x", "exceedance rate", &frame);
    polyline(&mut out, &frame, &clip(reference), "black", true);
    legend(&mut out, 0, "black", "e exp(-x), capped at 1");
    for (i, (n, pts)) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        polyline(&mut out, &frame, pts, colour, false);
        for &(x, y) in pts {
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{colour}"/>"#, frame.px(x), frame.py(y));
        }
        legend(&mut out, i + 1, colour, &format!("n = {n}"));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_plot_has_one_circle_per_point() {
        let pts = [(64, 0.1), (128, 0.07), (256, 0.05), (512, 0.035)];
        let svg = rate_plot(&pts, -0.5, 0.0);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn degenerate_ranges_do_not_divide_by_zero() {
        let svg = rate_plot(&[(10, 1.0)], 0.0, 0.0);
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
