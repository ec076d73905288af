//! Self-contained SVG line plots for piecewise polynomials.
//!
//! No drawing dependencies: the output is a single `<svg>` document with
//! polylines, axes, tick labels, and a legend, suitable for diffing.

use crate::poly::PiecewisePolynomial;
use crate::Error;

/// Every piece is sampled at least this densely.
pub const MIN_SAMPLES_PER_PIECE: usize = 512;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 600.0;
const MARGIN_L: f64 = 90.0;
const MARGIN_R: f64 = 30.0;
const MARGIN_T: f64 = 50.0;
const MARGIN_B: f64 = 60.0;

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// One labelled curve.
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Samples a piecewise polynomial on each of its pieces, breakpoints included.
///
/// `per_piece` is clamped up to [`MIN_SAMPLES_PER_PIECE`]; evaluation happens
/// in the function's own arithmetic and only the plotted value is rounded.
pub fn sample_curve(f: &PiecewisePolynomial, per_piece: usize) -> Result<Vec<(f64, f64)>, Error> {
    let n = per_piece.max(MIN_SAMPLES_PER_PIECE);
    let mode = f.mode();
    let breaks = f.breakpoints().to_vec();
    let mut out = Vec::with_capacity(f.pieces().len() * (n + 1));
    for w in breaks.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let width = b.clone() - a.clone();
        for j in 0..=n {
            let frac = mode.from_ratio(j as i64, n as i64);
            let t = a.clone() + width.clone() * frac;
            let y = f.evaluate(&t, 0)?;
            out.push((t.to_f64(), y.to_f64()));
        }
    }
    Ok(out)
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 0.01 && v.abs() < 1000.0 {
        format!("{v:.3}")
    } else {
        format!("{v:.2e}")
    }
}

/// Renders labelled series into one SVG document.
pub fn line_plot(title: &str, series: &[Series]) -> String {
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in series {
        for &(x, y) in &s.points {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
    }
    if !xmin.is_finite() {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    if xmax - xmin < 1e-300 {
        xmax = xmin + 1.0;
    }
    // Pad the value range so extrema do not sit on the frame.
    let pad = ((ymax - ymin) * 0.05).max(f64::max(1e-300, ymax.abs() * 1e-12));
    ymin -= pad;
    ymax += pad;

    let pw = WIDTH - MARGIN_L - MARGIN_R;
    let ph = HEIGHT - MARGIN_T - MARGIN_B;
    let sx = |x: f64| MARGIN_L + (x - xmin) / (xmax - xmin) * pw;
    let sy = |y: f64| MARGIN_T + (ymax - y) / (ymax - ymin) * ph;

    let mut doc = String::with_capacity(1 << 16);
    doc.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    doc.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    doc.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    doc.push_str(&format!(
        "<text x=\"{}\" y=\"30\" font-family=\"monospace\" font-size=\"16\" \
         text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        esc(title)
    ));

    // Frame and ticks.
    doc.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{pw}\" height=\"{ph}\" \
         fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n"
    ));
    for i in 0..=4 {
        let fx = xmin + (xmax - xmin) * i as f64 / 4.0;
        let x = sx(fx);
        doc.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#333\"/>\n",
            MARGIN_T + ph,
            MARGIN_T + ph + 6.0
        ));
        doc.push_str(&format!(
            "<text x=\"{x}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" \
             text-anchor=\"middle\">{}</text>\n",
            MARGIN_T + ph + 22.0,
            fmt_tick(fx)
        ));
        let fy = ymin + (ymax - ymin) * i as f64 / 4.0;
        let y = sy(fy);
        doc.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{MARGIN_L}\" y2=\"{y}\" stroke=\"#333\"/>\n",
            MARGIN_L - 6.0
        ));
        doc.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" \
             text-anchor=\"end\">{}</text>\n",
            MARGIN_L - 10.0,
            y + 4.0,
            fmt_tick(fy)
        ));
    }
    // Zero line when it is inside the plotted range.
    if ymin < 0.0 && ymax > 0.0 {
        let y = sy(0.0);
        doc.push_str(&format!(
            "<line x1=\"{MARGIN_L}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" \
             stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n",
            MARGIN_L + pw
        ));
    }

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut pts = String::with_capacity(s.points.len() * 16);
        for &(x, y) in &s.points {
            pts.push_str(&format!("{:.3},{:.3} ", sx(x), sy(y)));
        }
        doc.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            pts.trim_end()
        ));
        let ly = MARGIN_T + 18.0 + 20.0 * i as f64;
        let lx = MARGIN_L + pw - 220.0;
        doc.push_str(&format!(
            "<line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n",
            lx + 28.0
        ));
        doc.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\">{}</text>\n",
            lx + 36.0,
            ly + 4.0,
            esc(&s.label)
        ));
    }

    doc.push_str("</svg>\n");
    doc
}
