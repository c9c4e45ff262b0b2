//! SVG pictures of two-dimensional colored fans.
//!
//! The left panel shows `N_R` with the valuation cone shaded pink, the
//! colors as blue dots and the cones of the fan in translucent gray. The
//! right panel shows the image of the retraction: each maximal cone in gray
//! with its piece over the zero face outlined in deep pink. Drawing uses
//! floating point and is not part of any exact output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num::ToPrimitive;
use sphtrop::compactify::p_image;
use sphtrop::fan::{ColoredFan, SphericalData};
use sphtrop::{RatCone, RatVec};

const PINK: &str = "#ffc0cb";
const DEEP_PINK: &str = "#ff1493";
const VIOLET_BLUE: &str = "#324ab2";
const LIGHT_GRAY: &str = "#d3d3d3";

/// Half the side of the drawn box, in picture units.
const HALF: f64 = 2.5;
/// Picture units per lattice unit.
const UNIT: f64 = 1.25;
/// Pixels per picture unit.
const PX: f64 = 48.0;
const PANEL: f64 = 260.0;

type P = (f64, f64);

fn point(v: &RatVec) -> P {
    let f = |i: usize| v[i].to_f64().unwrap_or(0.0);
    (f(0), f(1))
}

fn to_px(origin: f64, p: P) -> P {
    (origin + PANEL / 2.0 + PX * p.0, 10.0 + PANEL / 2.0 - PX * p.1)
}

/// Clips a convex polygon to `a . x >= 0`.
fn clip(poly: &[P], a: P) -> Vec<P> {
    let side = |p: &P| a.0 * p.0 + a.1 * p.1;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (sp, sq) = (side(&p), side(&q));
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp >= 0.0) != (sq >= 0.0) {
            let t = sp / (sp - sq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

/// The part of a full-dimensional cone inside the drawn box.
fn region(c: &RatCone) -> Vec<P> {
    let mut poly = vec![(-HALF, -HALF), (HALF, -HALF), (HALF, HALF), (-HALF, HALF)];
    for h in c.halfspaces() {
        poly = clip(&poly, point(h));
    }
    poly
}

/// Where the ray through `v` leaves the box.
fn to_edge(v: &RatVec) -> P {
    let (x, y) = point(v);
    let s = HALF / x.abs().max(y.abs()).max(f64::MIN_POSITIVE);
    (x * s, y * s)
}

fn polygon(svg: &mut String, origin: f64, poly: &[P], style: &str) {
    if poly.len() < 3 {
        return;
    }
    let pts: Vec<String> = poly
        .iter()
        .map(|&p| {
            let (x, y) = to_px(origin, p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(svg, r#"  <polygon points="{}" {style}/>"#, pts.join(" "));
}

fn segment(svg: &mut String, origin: f64, a: P, b: P, style: &str) {
    let (x1, y1) = to_px(origin, a);
    let (x2, y2) = to_px(origin, b);
    let _ = writeln!(
        svg,
        r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" {style}/>"#
    );
}

fn text(svg: &mut String, at: P, fill: &str, body: &str) {
    let _ = writeln!(
        svg,
        r#"  <text x="{:.2}" y="{:.2}" fill="{fill}" font-family="serif" font-size="14">{}</text>"#,
        at.0,
        at.1,
        escape(body)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Draws a cone: filled when two-dimensional, otherwise its rays.
fn cone(svg: &mut String, origin: f64, c: &RatCone, fill: &str, stroke: &str) {
    if c.cone_dim() == 2 {
        polygon(svg, origin, &region(c), fill);
    }
    if c.cone_dim() < 2 || !stroke.is_empty() {
        for r in c.rays() {
            segment(svg, origin, (0.0, 0.0), to_edge(r), stroke);
        }
    }
}

fn axes(svg: &mut String, origin: f64) {
    let dash = r#"stroke="black" stroke-dasharray="4 3""#;
    segment(svg, origin, (-HALF, 0.0), (HALF, 0.0), dash);
    segment(svg, origin, (0.0, -HALF), (0.0, HALF), dash);
}

pub fn render(sd: &SphericalData, title: &str, fan: &ColoredFan) -> Result<String, String> {
    if sd.dim() != 2 {
        return Err(format!("only rank-2 data can be drawn, this has rank {}", sd.dim()));
    }
    let arrow = r#"stroke="black" stroke-width="1.5" marker-end="url(#arrow)""#;
    let gray = format!(r#"fill="{LIGHT_GRAY}" fill-opacity="0.5""#);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = 2.0 * PANEL + 20.0,
        h = PANEL + 40.0
    );
    svg.push_str(
        "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
    );

    // Left: N_R, V, the colors and the fan.
    let left = 0.0;
    polygon(&mut svg, left, &region(sd.vcone()), &format!(r#"fill="{PINK}""#));
    axes(&mut svg, left);
    for cc in &fan.cones {
        if cc.cone.cone_dim() == 2 {
            polygon(&mut svg, left, &region(&cc.cone), &gray);
        }
        for r in cc.cone.rays() {
            segment(&mut svg, left, (0.0, 0.0), to_edge(r), arrow);
        }
    }
    let (vx, vy) = point(&sd.vcone().relative_interior_point());
    let s = 0.8 * HALF / vx.abs().max(vy.abs()).max(f64::MIN_POSITIVE);
    text(&mut svg, to_px(left, (vx * s, vy * s)), DEEP_PINK, "V");
    for c in sd.colors() {
        let (x, y) = point(&c.rho);
        let (px, py) = to_px(left, (UNIT * x, UNIT * y));
        let _ = writeln!(svg, r#"  <circle cx="{px:.2}" cy="{py:.2}" r="4.8" fill="{VIOLET_BLUE}"/>"#);
        text(&mut svg, (px + 6.0, py - 6.0), VIOLET_BLUE, &c.name);
    }

    // Right: the image of the retraction.
    let right = PANEL + 20.0;
    match p_image(sd, fan) {
        Ok(img) => {
            for (cc, pieces) in &img.cones {
                cone(&mut svg, right, &cc.cone, &gray, r#"stroke="black""#);
                if let Some(open) = pieces.piece(&RatCone::zero(2)) {
                    let style = format!(r#"fill="{PINK}" stroke="{DEEP_PINK}" stroke-width="1.5""#);
                    cone(&mut svg, right, &open.cone, &style, &format!(r#"stroke="{DEEP_PINK}" stroke-width="2""#));
                }
            }
        }
        Err(e) => text(&mut svg, to_px(right, (-HALF, 0.0)), "black", &format!("no image: {e}")),
    }
    text(&mut svg, (10.0, PANEL + 30.0), "black", title);
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub enum Written {
    Stdout(String),
    Files(Vec<PathBuf>),
}

fn file_stem(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

/// Writes `(stem, svg)` pairs: a single picture to `target` or standard
/// output, several into the directory `target`.
pub fn write_all(svgs: &[(String, String)], target: Option<&Path>) -> Result<Written, String> {
    match (target, svgs) {
        (_, []) => Err("nothing was drawn".into()),
        (None, [(_, svg)]) => Ok(Written::Stdout(svg.clone())),
        (None, _) => Err("several fans were drawn; pass --out DIR".into()),
        (Some(dir), _) if dir.is_dir() => {
            let mut paths = Vec::new();
            for (stem, svg) in svgs {
                let p = dir.join(format!("{}.svg", file_stem(stem)));
                std::fs::write(&p, svg).map_err(|e| format!("writing {}: {e}", p.display()))?;
                paths.push(p);
            }
            Ok(Written::Files(paths))
        }
        (Some(file), [(_, svg)]) => {
            std::fs::write(file, svg).map_err(|e| format!("writing {}: {e}", file.display()))?;
            Ok(Written::Files(vec![file.to_path_buf()]))
        }
        (Some(_), _) => Err("several fans were drawn; --out must be a directory".into()),
    }
}
