//! Static SVG rendering of 2D curves.
//!
//! The drawing shows the input curve (blue, with vertex dots), an optional
//! simplification (red, thicker, square markers), and an optional closed
//! `delta`-tube around the input.  The tube is drawn by stroking the curve
//! path with width `2 * delta` and round caps and joins, which is exactly
//! the Minkowski sum of the polyline with a radius-`delta` disk.
//!
//! Output is self-contained SVG 1.1 with a fixed viewport width; world
//! coordinates are mapped y-up (mathematical convention).

use minlink::geom::PolyCurve;
use minlink::{Error, Result};

const VIEW_W: f64 = 800.0;
const MARGIN_PX: f64 = 20.0;

struct Mapper {
    scale: f64,
    min_x: f64,
    max_y: f64,
}

impl Mapper {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            MARGIN_PX + (x - self.min_x) * self.scale,
            MARGIN_PX + (self.max_y - y) * self.scale,
        )
    }
}

fn polyline_points(c: &PolyCurve, m: &Mapper) -> String {
    c.vertices()
        .iter()
        .map(|p| {
            let (x, y) = m.map(p.0[0], p.0[1]);
            format!("{x:.3},{y:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Render `curve` (2D), an optional `simplified` overlay, and an optional
/// `delta`-tube to an SVG document.
pub fn render(
    curve: &PolyCurve,
    simplified: Option<&PolyCurve>,
    delta: Option<f64>,
) -> Result<String> {
    if curve.dim() != 2 {
        return Err(Error::InvalidInput(format!(
            "plotting requires a 2D curve, got dimension {}",
            curve.dim()
        )));
    }
    if let Some(s) = simplified {
        if s.dim() != 2 {
            return Err(Error::InvalidInput(format!(
                "plotting requires a 2D simplification, got dimension {}",
                s.dim()
            )));
        }
    }

    // World bounding box over everything drawn, inflated by the tube.
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for c in std::iter::once(curve).chain(simplified) {
        for p in c.vertices() {
            min_x = min_x.min(p.0[0]);
            max_x = max_x.max(p.0[0]);
            min_y = min_y.min(p.0[1]);
            max_y = max_y.max(p.0[1]);
        }
    }
    let pad = delta.unwrap_or(0.0) + 0.02 * ((max_x - min_x) + (max_y - min_y)).max(1e-9);
    min_x -= pad;
    max_x += pad;
    min_y -= pad;
    max_y += pad;

    let world_w = (max_x - min_x).max(1e-9);
    let world_h = (max_y - min_y).max(1e-9);
    let scale = (VIEW_W - 2.0 * MARGIN_PX) / world_w;
    let view_h = (world_h * scale + 2.0 * MARGIN_PX).max(60.0);
    let m = Mapper { scale, min_x, max_y };

    let mut out = String::new();
    out.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{VIEW_W:.0}\" height=\"{view_h:.0}\" \
         viewBox=\"0 0 {VIEW_W:.0} {view_h:.0}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");

    let curve_pts = polyline_points(curve, &m);

    if let Some(d) = delta {
        if d > 0.0 {
            out.push_str(&format!(
                "<polyline points=\"{curve_pts}\" fill=\"none\" stroke=\"#c6dbef\" \
                 stroke-width=\"{:.3}\" stroke-linecap=\"round\" \
                 stroke-linejoin=\"round\" opacity=\"0.8\"/>\n",
                2.0 * d * scale
            ));
        }
    }

    out.push_str(&format!(
        "<polyline points=\"{curve_pts}\" fill=\"none\" stroke=\"#1f77b4\" \
         stroke-width=\"1.5\" stroke-linejoin=\"round\"/>\n"
    ));
    for p in curve.vertices() {
        let (x, y) = m.map(p.0[0], p.0[1]);
        out.push_str(&format!(
            "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"2.2\" fill=\"#1f77b4\"/>\n"
        ));
    }

    if let Some(s) = simplified {
        let pts = polyline_points(s, &m);
        out.push_str(&format!(
            "<polyline points=\"{pts}\" fill=\"none\" stroke=\"#d62728\" \
             stroke-width=\"2\" stroke-linejoin=\"round\" opacity=\"0.9\"/>\n"
        ));
        for p in s.vertices() {
            let (x, y) = m.map(p.0[0], p.0[1]);
            out.push_str(&format!(
                "<rect x=\"{:.3}\" y=\"{:.3}\" width=\"6\" height=\"6\" fill=\"#d62728\"/>\n",
                x - 3.0,
                y - 3.0
            ));
        }
    }

    out.push_str("</svg>\n");
    Ok(out)
}
