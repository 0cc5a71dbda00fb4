//! SVG rendering of circle families and envelope cyclics.

use std::fmt::Write;

use super::circle::HermForm;
use super::cyclic::Cyclic;
use super::family::CircleFamily;
use crate::scalar::rational_to_f64;
use crate::surface::param_grid;

const PALETTE: [&str; 4] = ["#1f77b4", "#2ca02c", "#9467bd", "#8c564b"];
const ENVELOPE_COLOR: &str = "#d62728";
const GRID: usize = 200;

/// Families as lists of member equations, plus envelope curves.
#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub families: Vec<Vec<HermForm>>,
    pub envelopes: Vec<Cyclic>,
}

impl Scene {
    /// Adds the members of `fam` at the first `members` grid parameters.
    pub fn add_family(&mut self, fam: &CircleFamily, members: usize) {
        self.families.push((0..members).map(|k| fam.member(&param_grid(k))).collect());
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Circle { cx: f64, cy: f64, r: f64 },
    Line { a: f64, b: f64, c: f64 },
    None,
}

fn shape(h: &HermForm) -> Shape {
    let [p, a, b, r] = [
        rational_to_f64(&h.p),
        2.0 * rational_to_f64(&h.q.re),
        -2.0 * rational_to_f64(&h.q.im),
        rational_to_f64(&h.r),
    ];
    if p != 0.0 {
        let (cx, cy) = (-a / (2.0 * p), -b / (2.0 * p));
        let r2 = cx * cx + cy * cy - r / p;
        if r2 > 0.0 {
            return Shape::Circle { cx, cy, r: r2.sqrt() };
        }
        return Shape::None;
    }
    if a == 0.0 && b == 0.0 {
        return Shape::None;
    }
    Shape::Line { a, b, c: r }
}

/// `[xmin, ymin, xmax, ymax]` covering the moderate-size circles.
fn view_box(shapes: &[Shape]) -> [f64; 4] {
    let mut bx = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for s in shapes {
        if let Shape::Circle { cx, cy, r } = *s {
            if r <= 50.0 && cx.abs() <= 50.0 && cy.abs() <= 50.0 {
                bx = [bx[0].min(cx - r), bx[1].min(cy - r), bx[2].max(cx + r), bx[3].max(cy + r)];
            }
        }
    }
    if !bx[0].is_finite() {
        bx = [-5.0, -5.0, 5.0, 5.0];
    }
    let pad = 0.1 * (bx[2] - bx[0]).max(bx[3] - bx[1]).max(1.0);
    [bx[0] - pad, bx[1] - pad, bx[2] + pad, bx[3] + pad]
}

/// Segment of `a x + b y + c = 0` inside the box.
fn clip_line(a: f64, b: f64, c: f64, bx: &[f64; 4]) -> Option<[f64; 4]> {
    let mut pts = Vec::new();
    for x in [bx[0], bx[2]] {
        if b != 0.0 {
            let y = -(a * x + c) / b;
            if y >= bx[1] && y <= bx[3] {
                pts.push((x, y));
            }
        }
    }
    for y in [bx[1], bx[3]] {
        if a != 0.0 {
            let x = -(b * y + c) / a;
            if x >= bx[0] && x <= bx[2] {
                pts.push((x, y));
            }
        }
    }
    if pts.len() < 2 {
        return None;
    }
    Some([pts[0].0, pts[0].1, pts[1].0, pts[1].1])
}

/// Zero-level segments of `f` on a regular grid over the box.
fn contour(f: impl Fn(f64, f64) -> f64, bx: &[f64; 4]) -> Vec<[f64; 4]> {
    let (dx, dy) = ((bx[2] - bx[0]) / GRID as f64, (bx[3] - bx[1]) / GRID as f64);
    let vals: Vec<Vec<f64>> = (0..=GRID)
        .map(|j| (0..=GRID).map(|i| f(bx[0] + i as f64 * dx, bx[1] + j as f64 * dy)).collect())
        .collect();
    let mut segs = Vec::new();
    for j in 0..GRID {
        for i in 0..GRID {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let mut hits = Vec::new();
            for k in 0..4 {
                let (p, q) = (corners[k], corners[(k + 1) % 4]);
                let (fp, fq) = (vals[p.1][p.0], vals[q.1][q.0]);
                if (fp < 0.0) != (fq < 0.0) {
                    let t = fp / (fp - fq);
                    let x = bx[0] + (p.0 as f64 + t * (q.0 as f64 - p.0 as f64)) * dx;
                    let y = bx[1] + (p.1 as f64 + t * (q.1 as f64 - p.1 as f64)) * dy;
                    hits.push((x, y));
                }
            }
            for pair in hits.chunks_exact(2) {
                segs.push([pair[0].0, pair[0].1, pair[1].0, pair[1].1]);
            }
        }
    }
    segs
}

pub fn render(scene: &Scene) -> String {
    let shapes: Vec<Vec<Shape>> = scene.families.iter().map(|f| f.iter().map(shape).collect()).collect();
    let flat: Vec<Shape> = shapes.iter().flatten().copied().collect();
    let bx = view_box(&flat);
    let (w, h) = (bx[2] - bx[0], bx[3] - bx[1]);
    let stroke = 0.004 * w.max(h);
    let mut out = String::new();
    // the body flips y so that the plane is drawn with y up
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.4} {:.4} {:.4} {:.4}">"#,
        bx[0], -bx[3], w, h
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" fill="none">"#);
    for (k, fam) in shapes.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        for s in fam {
            let d = match *s {
                Shape::Circle { cx, cy, r } => format!(
                    "M {:.4} {:.4} A {r:.4} {r:.4} 0 1 0 {:.4} {:.4} A {r:.4} {r:.4} 0 1 0 {:.4} {:.4}",
                    cx - r,
                    cy,
                    cx + r,
                    cy,
                    cx - r,
                    cy
                ),
                Shape::Line { a, b, c } => match clip_line(a, b, c, &bx) {
                    Some([x1, y1, x2, y2]) => format!("M {x1:.4} {y1:.4} L {x2:.4} {y2:.4}"),
                    None => continue,
                },
                Shape::None => continue,
            };
            let _ = writeln!(
                out,
                r#"<path class="member family{k}" d="{d}" stroke="{color}" stroke-width="{stroke:.4}"/>"#
            );
        }
    }
    for (k, env) in scene.envelopes.iter().enumerate() {
        let segs = contour(|x, y| env.poly().eval_f64(x, y), &bx);
        let mut d = String::new();
        for [x1, y1, x2, y2] in segs {
            let _ = write!(d, "M {x1:.4} {y1:.4} L {x2:.4} {y2:.4} ");
        }
        let _ = writeln!(
            out,
            r#"<path class="envelope envelope{k}" d="{}" stroke="{ENVELOPE_COLOR}" stroke-width="{:.4}"/>"#,
            d.trim_end(),
            2.5 * stroke
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss_int, rat};
    use crate::topview::{envelope_cyclic, family_product, GeneralizedCircle};
    use crate::bilinfrac::{Mat2, Moebius};

    #[test]
    fn renders_members_and_envelope() {
        let unit = GeneralizedCircle::unit_circle();
        let data = Moebius::new(Mat2::new(gauss_int(0, 1), gauss_int(2, 0), gauss_int(0, 0), gauss_int(1, 0))).unwrap();
        let fam = family_product(&unit, &data);
        let mut scene = Scene::default();
        scene.add_family(&fam, 5);
        scene.envelopes.push(envelope_cyclic(&fam).unwrap());
        let svg = render(&scene);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("class=\"member").count(), 5);
        assert_eq!(svg.matches("class=\"envelope").count(), 1);
        assert!(svg.contains(ENVELOPE_COLOR));
        assert_eq!(render(&scene), svg);
    }

    #[test]
    fn shapes_and_clipping() {
        let line = HermForm::new(rat(0), gauss_int(1, 0), rat(-2));
        assert_eq!(shape(&line), Shape::Line { a: 2.0, b: 0.0, c: -2.0 });
        let seg = clip_line(2.0, 0.0, -2.0, &[-5.0, -5.0, 5.0, 5.0]).unwrap();
        assert_eq!(seg, [1.0, -5.0, 1.0, 5.0]);
        assert_eq!(shape(&HermForm::new(rat(1), gauss_int(0, 0), rat(1))), Shape::None);
    }
}
