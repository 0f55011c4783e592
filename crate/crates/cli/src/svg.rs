//! SVG pictures of moment images.
//!
//! Edges are black and labelled with their weights, rays are dashed, the
//! contact boundary is drawn as a green copy of the edge chain shrunk toward
//! the cone apex (or the centroid of a closed polygon), with blue dots where
//! it meets the rays. Coordinates are the exact vertices converted to
//! floating point only at the last step.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use num_traits::ToPrimitive;
use toric_core::lattice::{LatticeVec, Rational};
use toric_core::moment::{CyclicImage, MomentImage, Point};
use toric_core::BigInt;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 0.05;
const BOUNDARY_SCALE: f64 = 0.5;
const RAY_EXTENT: f64 = 1.35;

type P = (f64, f64);

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("finite")
}

fn pt(p: &Point) -> P {
    (to_f64(&p.x), to_f64(&p.y))
}

fn scaled(p: P, k: f64) -> P {
    (p.0 * k, p.1 * k)
}

fn unit(v: &LatticeVec) -> P {
    let (x, y) = (v.x.to_f64().expect("finite"), v.y.to_f64().expect("finite"));
    let len = x.hypot(y);
    (x / len, y / len)
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

struct Canvas {
    min: P,
    scale: f64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn fit(points: &[P]) -> Self {
        let (mut lo, mut hi) = (points[0], points[0]);
        for &(x, y) in points {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let pad = span * MARGIN;
        let scale = SIZE / (span + 2.0 * pad);
        Canvas {
            min: (lo.0 - pad, lo.1 - pad),
            scale,
            width: ((hi.0 - lo.0) + 2.0 * pad) * scale,
            height: ((hi.1 - lo.1) + 2.0 * pad) * scale,
            body: String::new(),
        }
    }

    /// Model coordinates to pixels, with `y` pointing up.
    fn px(&self, p: P) -> P {
        ((p.0 - self.min.0) * self.scale, self.height - (p.1 - self.min.1) * self.scale)
    }

    fn line(&mut self, a: P, b: P, style: &str) {
        let (a, b) = (self.px(a), self.px(b));
        let _ = writeln!(
            self.body,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        );
    }

    fn polyline(&mut self, pts: &[P], closed: bool, style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let q = self.px(p);
                format!("{},{}", num(q.0), num(q.1))
            })
            .collect();
        let tag = if closed { "polygon" } else { "polyline" };
        let _ = writeln!(self.body, r#"  <{tag} points="{}" {style}/>"#, coords.join(" "));
    }

    fn dot(&mut self, p: P, color: &str) {
        let q = self.px(p);
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{}" cy="{}" r="4" fill="{color}"/>"#,
            num(q.0),
            num(q.1)
        );
    }

    /// Weight label at the edge midpoint, pushed along the inward normal.
    fn label(&mut self, a: P, b: P, normal: &LatticeVec, text: &BigInt) {
        let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
        let n = unit(normal);
        let q = self.px(mid);
        let off = 14.0;
        let _ = writeln!(
            self.body,
            r#"  <text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle" dominant-baseline="middle">{text}</text>"#,
            num(q.0 + n.0 * off),
            num(q.1 - n.1 * off)
        );
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             {body}</svg>\n",
            w = num(self.width),
            h = num(self.height),
            body = self.body
        )
    }
}

const EDGE: &str = r#"stroke="black" stroke-width="2""#;
const RAY: &str = r#"stroke="black" stroke-width="1" stroke-dasharray="6,4""#;
const BOUNDARY: &str = r#"fill="none" stroke="green" stroke-width="2""#;

/// Picture of a linear moment image; the rays start at the origin.
pub fn linear_svg(img: &MomentImage) -> String {
    let verts: Vec<P> = img.vertices().iter().map(pt).collect();
    let n = verts.len() - 1;
    let (e1, e2) = (scaled(verts[0], RAY_EXTENT), scaled(verts[n], RAY_EXTENT));
    let curve: Vec<P> = verts.iter().map(|&p| scaled(p, BOUNDARY_SCALE)).collect();

    let mut all = verts.clone();
    all.extend([(0.0, 0.0), e1, e2]);
    let mut c = Canvas::fit(&all);
    c.line((0.0, 0.0), e1, RAY);
    c.line((0.0, 0.0), e2, RAY);
    c.polyline(&curve, false, BOUNDARY);
    let weights = toric_core::moment::recover_weights(img.chain());
    for j in 1..=n {
        c.line(verts[j - 1], verts[j], EDGE);
    }
    for j in 1..=n {
        c.label(verts[j - 1], verts[j], img.chain().edge_normal(j), &weights[j - 1]);
    }
    for &v in &verts {
        c.dot(v, "black");
    }
    c.dot(curve[0], "blue");
    c.dot(curve[n], "blue");
    c.finish()
}

/// Picture of a closed polygon; there are no rays.
pub fn cyclic_svg(img: &CyclicImage) -> String {
    let verts: Vec<P> = img.vertices().iter().map(pt).collect();
    let n = verts.len();
    let c0 = verts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let c0 = (c0.0 / n as f64, c0.1 / n as f64);
    let curve: Vec<P> = verts
        .iter()
        .map(|&p| {
            let d = scaled((p.0 - c0.0, p.1 - c0.1), BOUNDARY_SCALE);
            (c0.0 + d.0, c0.1 + d.1)
        })
        .collect();
    let mut c = Canvas::fit(&verts);
    c.polyline(&curve, true, BOUNDARY);
    for i in 0..n {
        c.line(verts[(i + n - 1) % n], verts[i], EDGE);
    }
    let weights = img.graph().weights();
    for i in 0..n {
        c.label(verts[(i + n - 1) % n], verts[i], &img.normals()[i], &weights[i]);
    }
    for &v in &verts {
        c.dot(v, "black");
    }
    c.finish()
}

pub fn write_svg(path: &Path, svg: &str) -> io::Result<()> {
    std::fs::write(path, svg)
}
