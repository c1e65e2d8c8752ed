//! Self-contained SVG figures in the complex plane.
//!
//! Regions are filled paths, hulls are outlined, points are dots. Output
//! depends only on the geometry passed in, with coordinates printed at a
//! fixed precision.

use std::fmt::Write;

use srg_core::C64;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 40.0;
/// Points farther out than this are left to the clip path.
const VIEW_LIMIT: f64 = 50.0;

pub const REGION_FILL: &str = "#f5a04a";
pub const HULL_STROKE: &str = "#707070";
pub const CURVE_STROKE: &str = "#1f4e9c";
pub const DOT_FILL: &str = "#000000";

#[derive(Clone, Debug)]
pub enum Shape {
    /// Closed, filled polygon.
    Region(Vec<C64>),
    /// Closed outline without fill.
    Hull(Vec<C64>),
    /// Open polyline; consecutive `None`s break it.
    Curve(Vec<Option<C64>>),
    Dot(C64),
}

#[derive(Clone, Debug, Default)]
pub struct Figure {
    pub title: String,
    pub shapes: Vec<Shape>,
}

struct View {
    x0: f64,
    y1: f64,
    scale: f64,
}

impl View {
    fn fit(shapes: &[Shape]) -> Self {
        let mut pts: Vec<C64> = Vec::new();
        for s in shapes {
            match s {
                Shape::Region(p) | Shape::Hull(p) => pts.extend(p),
                Shape::Curve(p) => pts.extend(p.iter().flatten()),
                Shape::Dot(z) => pts.push(*z),
            }
        }
        pts.retain(|z| z.norm() <= VIEW_LIMIT);
        pts.push(C64::new(0.0, 0.0));
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for z in &pts {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        // keep a visible box around degenerate sets
        let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1.0);
        let (x0, x1, y0, y1) = (x0 - pad, x1 + pad, y0 - pad, y1 + pad);
        let scale = ((WIDTH - 2.0 * MARGIN) / (x1 - x0)).min((HEIGHT - 2.0 * MARGIN) / (y1 - y0));
        // centre the box
        let cx = 0.5 * (x0 + x1);
        let cy = 0.5 * (y0 + y1);
        Self {
            x0: cx - 0.5 * WIDTH / scale,
            y1: cy + 0.5 * HEIGHT / scale,
            scale,
        }
    }

    fn px(&self, z: C64) -> (f64, f64) {
        ((z.re - self.x0) * self.scale, (self.y1 - z.im) * self.scale)
    }

    fn coord(&self, z: C64) -> String {
        let (x, y) = self.px(z);
        // clamp far points so the path stays well formed; the clip hides them
        let c = |v: f64| v.clamp(-1e5, 1e5);
        format!("{:.3},{:.3}", c(x), c(y))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn closed_path(view: &View, pts: &[C64]) -> String {
    let mut d = String::new();
    for (k, &z) in pts.iter().enumerate() {
        d.push(if k == 0 { 'M' } else { 'L' });
        d.push_str(&view.coord(z));
    }
    d.push('Z');
    d
}

pub fn render(fig: &Figure) -> String {
    let view = View::fit(&fig.shapes);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&fig.title));
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="frame"><rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}"/></clipPath></defs>"#
    );
    let _ = writeln!(s, r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    let (ox, oy) = view.px(C64::new(0.0, 0.0));
    let _ = writeln!(
        s,
        r##"<g stroke="#c8c8c8" stroke-width="1"><line x1="0" y1="{oy:.3}" x2="{WIDTH}" y2="{oy:.3}"/><line x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="{HEIGHT}"/></g>"##
    );
    let _ = writeln!(s, r#"<g clip-path="url(#frame)">"#);
    for shape in &fig.shapes {
        match shape {
            Shape::Region(p) if !p.is_empty() => {
                let _ = writeln!(
                    s,
                    r#"<path class="region" d="{}" fill="{REGION_FILL}" stroke="{REGION_FILL}" stroke-width="1.5" stroke-linejoin="round"/>"#,
                    closed_path(&view, p)
                );
            }
            Shape::Hull(p) if !p.is_empty() => {
                let _ = writeln!(
                    s,
                    r#"<path class="hull" d="{}" fill="none" stroke="{HULL_STROKE}" stroke-width="1.5"/>"#,
                    closed_path(&view, p)
                );
            }
            Shape::Curve(p) => {
                let mut d = String::new();
                let mut pen_down = false;
                for z in p {
                    match z {
                        Some(z) => {
                            d.push(if pen_down { 'L' } else { 'M' });
                            d.push_str(&view.coord(*z));
                            pen_down = true;
                        }
                        None => pen_down = false,
                    }
                }
                if !d.is_empty() {
                    let _ = writeln!(
                        s,
                        r#"<path class="curve" d="{d}" fill="none" stroke="{CURVE_STROKE}" stroke-width="1.5"/>"#
                    );
                }
            }
            Shape::Dot(z) => {
                let (x, y) = view.px(*z);
                let _ = writeln!(s, r#"<circle class="dot" cx="{x:.3}" cy="{y:.3}" r="3" fill="{DOT_FILL}"/>"#);
            }
            _ => {}
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}
