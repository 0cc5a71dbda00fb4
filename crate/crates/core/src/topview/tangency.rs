//! Tangency points of family members with the envelope: the solutions of
//! `member(v₀) = 0`, `2A·v₀ + B = 0`, over the complex numbers.

use num_complex::Complex64;
use num_traits::Zero;

use super::circle::HermForm;
use super::family::CircleFamily;
use crate::bilinfrac::Moebius;
use crate::scalar::{rational_to_f64, GaussianRational, Rational};
use crate::surface::param_grid;

/// A point `(x, y) ∈ ℂ²`; real points have real coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoPoint {
    pub x: Complex64,
    pub y: Complex64,
}

impl IsoPoint {
    pub fn is_real(&self, tol: f64) -> bool {
        self.x.im.abs() <= tol && self.y.im.abs() <= tol
    }

    /// `(z, z̄*) = (x + iy, x − iy)`; the second is `conj(z)` only for real points.
    pub fn isotropic(&self) -> (Complex64, Complex64) {
        let i = Complex64::i();
        (self.x + i * self.y, self.x - i * self.y)
    }

    pub fn from_isotropic(z: Complex64, zb: Complex64) -> Self {
        Self {
            x: (z + zb) / 2.0,
            y: (z - zb) / (2.0 * Complex64::i()),
        }
    }

    /// Image under `f`, acting on `z` by `f` and on `z̄` by the conjugate map.
    pub fn moebius(&self, f: &Moebius<GaussianRational>) -> Option<Self> {
        let m = f.to_c64();
        let mm = m.matrix();
        let (z, zb) = self.isotropic();
        let dz = mm.c * z + mm.d;
        let dzb = mm.c.conj() * zb + mm.d.conj();
        if dz.norm() == 0.0 || dzb.norm() == 0.0 {
            return None;
        }
        Some(Self::from_isotropic((mm.a * z + mm.b) / dz, (mm.a.conj() * zb + mm.b.conj()) / dzb))
    }
}

/// `p(x² + y²) + a·x + b·y + r` with `a = 2 Re q`, `b = −2 Im q`, as floats.
fn real_coeffs(h: &HermForm) -> [f64; 4] {
    [
        rational_to_f64(&h.p),
        2.0 * rational_to_f64(&h.q.re),
        -2.0 * rational_to_f64(&h.q.im),
        rational_to_f64(&h.r),
    ]
}

/// Roots of `a t² + b t + c` (or of the linear or constant case).
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<Complex64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() <= 1e-14 * scale {
        if b.abs() <= 1e-14 * scale {
            return Vec::new();
        }
        return vec![Complex64::new(-c / b, 0.0)];
    }
    let disc = Complex64::new(b * b - 4.0 * a * c, 0.0).sqrt();
    // stable pairing: q = −(b + sign(b)·√disc)/2
    let sb = if b >= 0.0 { 1.0 } else { -1.0 };
    let q = -(Complex64::new(b, 0.0) + sb * disc) / 2.0;
    if q.norm() == 0.0 {
        return vec![Complex64::new(0.0, 0.0); 2];
    }
    vec![q / a, Complex64::new(c, 0.0) / q]
}

/// Points of the curve `e = 0` on the line `l = 0` (`l` has `p = 0`).
fn line_meets(l: [f64; 4], e: [f64; 4]) -> Vec<IsoPoint> {
    let [_, a, b, r] = l;
    // parametrize the line by the coordinate with the smaller coefficient
    let (param_is_x, k, m) = if b.abs() >= a.abs() { (true, -a / b, -r / b) } else { (false, -b / a, -r / a) };
    // other coordinate = k·t + m
    let [p2, a2, b2, r2] = e;
    let (cx, cy) = if param_is_x { (a2, b2) } else { (b2, a2) };
    let qa = p2 * (1.0 + k * k);
    let qb = p2 * 2.0 * k * m + cx + cy * k;
    let qc = p2 * m * m + cy * m + r2;
    quadratic_roots(qa, qb, qc)
        .into_iter()
        .map(|t| {
            let o = t * k + m;
            if param_is_x {
                IsoPoint { x: t, y: o }
            } else {
                IsoPoint { x: o, y: t }
            }
        })
        .collect()
}

/// Intersection of two generalized-circle equations. Proportional inputs
/// yield no points.
fn intersect(m: &HermForm, d: &HermForm) -> Vec<IsoPoint> {
    let (line, other) = if !d.p.is_zero() {
        (m.add(&d.scale(&(-(&m.p / &d.p)))), d)
    } else if !m.p.is_zero() {
        (d.clone(), m)
    } else {
        // two lines
        let [_, a1, b1, r1] = real_coeffs(m);
        let [_, a2, b2, r2] = real_coeffs(d);
        let det = a1 * b2 - a2 * b1;
        if det == 0.0 {
            return Vec::new();
        }
        let x = (-r1 * b2 + r2 * b1) / det;
        let y = (-a1 * r2 + a2 * r1) / det;
        return vec![IsoPoint {
            x: Complex64::new(x, 0.0),
            y: Complex64::new(y, 0.0),
        }];
    };
    if line.q.is_zero() {
        return Vec::new();
    }
    line_meets(real_coeffs(&line), real_coeffs(other))
}

/// Real points on a single circle or line equation.
fn sample_member(m: &HermForm, count: usize) -> Vec<IsoPoint> {
    let [p, a, b, r] = real_coeffs(m);
    let re = |x: f64, y: f64| IsoPoint {
        x: Complex64::new(x, 0.0),
        y: Complex64::new(y, 0.0),
    };
    if p != 0.0 {
        let (cx, cy) = (-a / (2.0 * p), -b / (2.0 * p));
        let r2 = cx * cx + cy * cy - r / p;
        if r2 < 0.0 {
            return Vec::new();
        }
        let rho = r2.sqrt();
        (0..count)
            .map(|k| {
                let t = std::f64::consts::TAU * (k as f64 + 0.25) / count as f64;
                re(cx + rho * t.cos(), cy + rho * t.sin())
            })
            .collect()
    } else {
        let n = (a * a + b * b).sqrt();
        if n == 0.0 {
            return Vec::new();
        }
        let (x0, y0) = (-r * a / (n * n), -r * b / (n * n));
        (0..count)
            .map(|k| {
                let t = k as f64 - (count as f64) / 2.0;
                re(x0 - t * b / n, y0 + t * a / n)
            })
            .collect()
    }
}

/// A point on every member (`A = B = C = 0`). It solves the tangency system
/// for each `v` without lying on the envelope proper.
fn is_base_point(fam: &CircleFamily, p: &IsoPoint) -> bool {
    let cmax = [&fam.a, &fam.b, &fam.c]
        .iter()
        .flat_map(|h| real_coeffs(h))
        .fold(0.0f64, |m, c| m.max(c.abs()));
    let scale = 1e-9 * cmax * (1.0 + p.x.norm_sqr() + p.y.norm_sqr());
    [0.0, 1.0, -1.0].iter().all(|&v| fam.eval_c64(v, p.x, p.y).norm() <= scale)
}

/// Tangency points of the member at `v`, base points of the family excluded.
pub fn tangency_points(fam: &CircleFamily, v: &Rational) -> Vec<IsoPoint> {
    let m = fam.member(v);
    let d = fam.derivative_member(v);
    if m.is_zero() {
        return Vec::new();
    }
    if d.is_zero() {
        // the member is a double root: all of its points are on the envelope
        return sample_member(&m, 4);
    }
    intersect(&m, &d).into_iter().filter(|p| !is_base_point(fam, p)).collect()
}

/// Tangency points of the members at the first `members` grid parameters.
pub fn tangency_samples(fam: &CircleFamily, members: usize) -> Vec<IsoPoint> {
    (0..members).flat_map(|k| tangency_points(fam, &param_grid(k))).collect()
}
