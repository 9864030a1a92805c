//! Schematic SVG pictures: boundary circles, arcs as polylines, face labels.

use std::f64::consts::PI;
use std::fmt::Write as _;

use super::{Dissection, Point, QuotientDissection, Surface};

const SIZE: f64 = 400.0;
const R_OUT: f64 = 170.0;
const R_IN: f64 = 60.0;
const PALETTE: [&str; 8] = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999"];

struct Geometry {
    n: f64,
    m: f64,
    inner_radius: f64,
}

impl Geometry {
    /// Angle (unwrapped) and radius of a lifted point.
    fn polar(&self, p: Point) -> (f64, f64) {
        match p {
            Point::Outer(g) => (PI / 2.0 + 2.0 * PI * (g - 1) as f64 / self.n, R_OUT),
            Point::Inner(h) => (PI / 2.0 + 2.0 * PI * (h - 1) as f64 / self.m, self.inner_radius),
            Point::Inf => (f64::NAN, 0.0),
        }
    }

    fn xy(theta: f64, r: f64) -> (f64, f64) {
        if r == 0.0 {
            return (SIZE / 2.0, SIZE / 2.0);
        }
        (SIZE / 2.0 + r * theta.cos(), SIZE / 2.0 - r * theta.sin())
    }

    /// Points along an arc between two lifted points.
    fn path(&self, p: Point, q: Point, polygon: bool) -> Vec<(f64, f64)> {
        let (t0, r0) = self.polar(p);
        let (t1, r1) = self.polar(q);
        if polygon || r1 == 0.0 {
            return vec![Self::xy(t0, r0), Self::xy(t1, r1)];
        }
        let steps = 24;
        (0..=steps)
            .map(|s| {
                let u = s as f64 / steps as f64;
                let theta = t0 + (t1 - t0) * u;
                let r = if matches!(q, Point::Outer(_)) {
                    // peripheral: dip towards the middle
                    let depth = (R_OUT - self.inner_radius) * 0.8 * ((t1 - t0) / (2.0 * PI)).min(1.0);
                    R_OUT - depth * (PI * u).sin()
                } else {
                    r0 + (r1 - r0) * u
                };
                Self::xy(theta, r)
            })
            .collect()
    }
}

fn polyline(out: &mut String, pts: &[(f64, f64)], stroke: &str) {
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{:.1},{:.1}", x, y)).collect();
    let _ = writeln!(out, "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>", coords.join(" "), stroke);
}

/// Render a dissection, optionally shading faces by identification class.
pub fn render_svg(d: &Dissection, quotient: Option<&QuotientDissection>) -> String {
    let s = d.surface();
    let polygon = s.is_polygon();
    let geo = Geometry {
        n: s.n() as f64,
        m: s.m().max(1) as f64,
        inner_radius: if matches!(s, Surface::Annulus { .. }) { R_IN } else { 0.0 },
    };
    let mut out = String::new();
    let _ = writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">", SIZE);

    if let Some(q) = quotient {
        for (ci, class) in q.face_classes().iter().enumerate() {
            if class.len() < 2 && !q.pairs().iter().any(|&(a, b, _)| a == class[0] || b == class[0]) {
                continue;
            }
            for &f in class {
                let verts = &d.faces()[f].vertices;
                let mut pts = Vec::new();
                for t in 0..verts.len() {
                    let mut seg = geo.path(verts[t], verts[(t + 1) % verts.len()], polygon);
                    seg.pop();
                    pts.extend(seg);
                }
                let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{:.1},{:.1}", x, y)).collect();
                let _ = writeln!(
                    out,
                    "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.3\" stroke=\"none\"/>",
                    coords.join(" "),
                    PALETTE[ci % PALETTE.len()]
                );
            }
        }
    }

    if polygon {
        let pts: Vec<(f64, f64)> = (1..=s.n() as i64 + 1).map(|g| {
            let (t, r) = geo.polar(Point::Outer(g));
            Geometry::xy(t, r)
        }).collect();
        polyline(&mut out, &pts, "black");
    } else {
        let c = SIZE / 2.0;
        let _ = writeln!(out, "<circle cx=\"{c}\" cy=\"{c}\" r=\"{R_OUT}\" fill=\"none\" stroke=\"black\"/>");
        if geo.inner_radius > 0.0 {
            let _ = writeln!(out, "<circle cx=\"{c}\" cy=\"{c}\" r=\"{R_IN}\" fill=\"none\" stroke=\"black\"/>");
        } else {
            let _ = writeln!(out, "<circle cx=\"{c}\" cy=\"{c}\" r=\"3\" fill=\"black\"/>");
        }
    }
    for a in d.arcs() {
        let (p, q) = d.arc_lift(a, 0);
        polyline(&mut out, &geo.path(p, q, polygon), "#1f3a93");
    }
    for g in 1..=s.n() as i64 {
        let (t, r) = geo.polar(Point::Outer(g));
        let (x, y) = Geometry::xy(t, r);
        let (lx, ly) = Geometry::xy(t, r + 14.0);
        let _ = writeln!(out, "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"3\"/>");
        let _ = writeln!(out, "<text x=\"{lx:.1}\" y=\"{ly:.1}\" font-size=\"11\" text-anchor=\"middle\">v{g}</text>");
    }
    for h in 1..=s.m() as i64 {
        let (t, r) = geo.polar(Point::Inner(h));
        let (x, y) = Geometry::xy(t, r);
        let (lx, ly) = Geometry::xy(t, r - 12.0);
        let _ = writeln!(out, "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"3\"/>");
        let _ = writeln!(out, "<text x=\"{lx:.1}\" y=\"{ly:.1}\" font-size=\"9\" text-anchor=\"middle\">w{h}</text>");
    }
    for f in d.faces() {
        let pts: Vec<(f64, f64)> = f
            .vertices
            .iter()
            .map(|&p| {
                let (t, r) = geo.polar(p);
                if r == 0.0 {
                    (SIZE / 2.0, SIZE / 2.0)
                } else {
                    Geometry::xy(t, r)
                }
            })
            .collect();
        let k = pts.len() as f64;
        let (x, y) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 / k, a.1 + p.1 / k));
        let _ = writeln!(out, "<text x=\"{x:.1}\" y=\"{y:.1}\" font-size=\"10\" fill=\"#555\" text-anchor=\"middle\">{}</text>", f.id);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_dissection;

    #[test]
    fn svg_is_well_formed_and_deterministic() {
        let d = parse_dissection("annulus 3 3\nbridge 1 2 0\nbridge 3 3 0\nbridge 3 2 1\nperi 1 3\n").unwrap();
        let a = render_svg(&d, None);
        assert_eq!(a, render_svg(&d, None));
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<polyline").count(), 4);
        let p = parse_dissection("polygon 6\ndiag 1 3\ndiag 1 5\n").unwrap();
        assert!(render_svg(&p, None).contains(">v6<"));
    }
}
