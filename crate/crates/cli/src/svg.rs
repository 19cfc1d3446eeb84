//! Static drawings of planar configurations.
//!
//! Coordinates are converted to `f64` here and only here; the picture is the
//! one place where exactness does not matter.

use std::fmt::Write;

use convex_embed::geometry::{Point, PointConfig};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 6] = ["#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377"];

fn xy(p: &Point) -> (f64, f64) {
    match p.as_slice() {
        [] => (0.0, 0.0),
        [x] => (x.to_f64(), 0.0),
        [x, y, ..] => (x.to_f64(), y.to_f64()),
    }
}

struct Frame {
    min: (f64, f64),
    scale: f64,
}

impl Frame {
    fn fit(points: &[Point]) -> Frame {
        let coords: Vec<(f64, f64)> = points.iter().map(xy).collect();
        let lo = |f: fn(&(f64, f64)) -> f64| coords.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = |f: fn(&(f64, f64)) -> f64| coords.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        let (x0, x1, y0, y1) = (lo(|c| c.0), hi(|c| c.0), lo(|c| c.1), hi(|c| c.1));
        let span = (x1 - x0).max(y1 - y0);
        let scale = if span.is_finite() && span > 0.0 { (SIZE - 2.0 * MARGIN) / span } else { 1.0 };
        let min = if x0.is_finite() { (x0, y0) } else { (0.0, 0.0) };
        Frame { min, scale }
    }

    // SVG's y axis points down.
    fn map(&self, p: &Point) -> (f64, f64) {
        let (x, y) = xy(p);
        (MARGIN + (x - self.min.0) * self.scale, SIZE - MARGIN - (y - self.min.1) * self.scale)
    }
}

/// Points with labels, plus each region drawn as a translucent polygon.
pub fn draw(cfg: &PointConfig, labels: &[String], regions: &[(String, Vec<Point>)]) -> String {
    let frame = Frame::fit(cfg.points());
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (k, (name, vertices)) in regions.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = vertices
            .iter()
            .map(|v| {
                let (x, y) = frame.map(v);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            out,
            r#"<polygon points="{}" fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="1.5"><title>{}</title></polygon>"#,
            pts.join(" "),
            escape(name)
        )
        .unwrap();
    }
    for (i, p) in cfg.points().iter().enumerate() {
        let (x, y) = frame.map(p);
        let label = labels.get(i).map(String::as_str).unwrap_or("");
        writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#).unwrap();
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="11">{}</text>"#,
            x + 6.0,
            y - 6.0,
            escape(label)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Tab-separated exact coordinates, one point per line.
pub fn table(cfg: &PointConfig, labels: &[String]) -> String {
    let mut out = String::from("label");
    for k in 0..cfg.dim() {
        write!(out, "\tx{k}").unwrap();
    }
    out.push('\n');
    for (i, p) in cfg.points().iter().enumerate() {
        out.push_str(labels.get(i).map(String::as_str).unwrap_or(""));
        for v in p {
            write!(out, "\t{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
