//! Sampling and exact shape recognition of isoparametric curves.

use num_traits::{One, Zero};

use super::{IsoCircleSurface, ParabolicSurface, SurfaceError};
use crate::linalg::{rank, solve};
use crate::polyring::Axis;
use crate::projgeom::AffinePoint3;
use crate::scalar::{rat, Rational};

/// Surfaces whose isoparametric curves can be sampled.
pub trait Isoparametric {
    fn point(&self, u: &Rational, v: &Rational) -> Result<AffinePoint3, SurfaceError>;
}

impl Isoparametric for ParabolicSurface {
    fn point(&self, u: &Rational, v: &Rational) -> Result<AffinePoint3, SurfaceError> {
        self.eval(u, v)
    }
}

impl Isoparametric for IsoCircleSurface {
    fn point(&self, u: &Rational, v: &Rational) -> Result<AffinePoint3, SurfaceError> {
        self.eval(u, v)
    }
}

/// The grid `0, 1, −1, 2, −2, …`.
pub fn param_grid(k: usize) -> Rational {
    let m = k.div_ceil(2) as i64;
    rat(if k % 2 == 1 { m } else { -m })
}

/// `n` points of the curve `axis = value`, skipping poles on the parameter grid.
pub fn isocurve_sample<S: Isoparametric>(
    s: &S,
    axis: Axis,
    value: &Rational,
    n: usize,
) -> Result<Vec<AffinePoint3>, SurfaceError> {
    let tries = 10 * n;
    let mut out = Vec::with_capacity(n);
    for k in 0..tries {
        let t = param_grid(k);
        let res = match axis {
            Axis::U => s.point(value, &t),
            Axis::V => s.point(&t, value),
        };
        match res {
            Ok(p) => out.push(p),
            Err(SurfaceError::Pole { .. }) => continue,
            Err(e) => return Err(e),
        }
        if out.len() == n {
            return Ok(out);
        }
    }
    Err(SurfaceError::TooFewSamples {
        needed: n,
        found: out.len(),
        tried: tries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    VerticalParabola,
    IsotropicEllipse,
    Line,
    Point,
    Other,
}

impl CurveKind {
    pub fn name(self) -> &'static str {
        match self {
            CurveKind::VerticalParabola => "vertical_parabola",
            CurveKind::IsotropicEllipse => "isotropic_ellipse",
            CurveKind::Line => "line",
            CurveKind::Point => "point",
            CurveKind::Other => "other",
        }
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, CurveKind::Line | CurveKind::Point)
    }
}

fn rows(pts: &[AffinePoint3], f: impl Fn(&AffinePoint3) -> Vec<Rational>) -> Vec<Vec<Rational>> {
    pts.iter().map(f).collect()
}

/// Exact shape of a sampled curve, by rank tests on the coordinates.
pub fn classify_isocurve(pts: &[AffinePoint3]) -> Result<CurveKind, SurfaceError> {
    if pts.len() < 7 {
        return Err(SurfaceError::TooFewPoints(pts.len()));
    }
    let one = Rational::one;
    let spatial = rank(&rows(pts, |p| vec![p.x.clone(), p.y.clone(), p.z.clone(), one()]));
    if spatial == 1 {
        return Ok(CurveKind::Point);
    }
    if spatial == 2 {
        return Ok(CurveKind::Line);
    }
    let top = rank(&rows(pts, |p| vec![p.x.clone(), p.y.clone(), one()]));
    if top <= 2 {
        // Top view on a line; `x` (or `y` when the line is vertical) is an
        // affine function of arclength along it.
        let use_x = pts.iter().any(|p| p.x != pts[0].x);
        let t = |p: &AffinePoint3| if use_x { p.x.clone() } else { p.y.clone() };
        let mut distinct: Vec<&AffinePoint3> = Vec::new();
        for p in pts {
            if distinct.iter().all(|q| t(q) != t(p)) {
                distinct.push(p);
            }
        }
        if distinct.len() < 3 {
            return Ok(CurveKind::Other);
        }
        let a: Vec<Vec<Rational>> = distinct[..3]
            .iter()
            .map(|p| vec![t(p) * t(p), t(p), one()])
            .collect();
        let b: Vec<Rational> = distinct[..3].iter().map(|p| p.z.clone()).collect();
        let c = solve(&a, &b).expect("distinct abscissae give a Vandermonde system");
        let fits = pts.iter().all(|p| &c[0] * t(p) * t(p) + &c[1] * t(p) + &c[2] == p.z);
        return Ok(if fits && !c[0].is_zero() {
            CurveKind::VerticalParabola
        } else {
            CurveKind::Other
        });
    }
    let concyclic = rank(&rows(pts, |p| {
        vec![&p.x * &p.x + &p.y * &p.y, p.x.clone(), p.y.clone(), one()]
    })) <= 3;
    if concyclic && spatial == 3 {
        return Ok(CurveKind::IsotropicEllipse);
    }
    Ok(CurveKind::Other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rconst, RPoly};
    use crate::scalar::ratio;

    #[test]
    fn grid_order() {
        let g: Vec<Rational> = (0..5).map(param_grid).collect();
        assert_eq!(g, vec![rat(0), rat(1), rat(-1), rat(2), rat(-2)]);
    }

    #[test]
    fn parabola_isocurve() {
        let (u, v) = (RPoly::u(), RPoly::v());
        let s = ParabolicSurface::new(u.clone(), v.clone(), rconst(1), &u.square() + &v.square()).unwrap();
        let pts = isocurve_sample(&s, Axis::U, &rat(1), 7).unwrap();
        for (k, p) in pts.iter().enumerate() {
            let y = param_grid(k);
            assert_eq!(p, &AffinePoint3::new(rat(1), y.clone(), rat(1) + &y * &y));
        }
        assert_eq!(classify_isocurve(&pts).unwrap(), CurveKind::VerticalParabola);
    }

    #[test]
    fn line_isocurve_of_flat_surface() {
        let (u, v) = (RPoly::u(), RPoly::v());
        let s = IsoCircleSurface::new(rconst(1), u, v, RPoly::zero(), RPoly::zero()).unwrap();
        let pts = isocurve_sample(&s, Axis::V, &rat(0), 7).unwrap();
        assert!(pts.iter().all(|p| p.y.is_zero() && p.z.is_zero()));
        assert_eq!(classify_isocurve(&pts).unwrap(), CurveKind::Line);
    }

    #[test]
    fn rational_circle_is_isotropic_ellipse() {
        let pts: Vec<AffinePoint3> = (0..7)
            .map(|t| {
                let d = rat(1 + t * t);
                AffinePoint3::new(rat(1 - t * t) / &d, rat(2 * t) / &d, ratio(3, 2))
            })
            .collect();
        assert_eq!(classify_isocurve(&pts).unwrap(), CurveKind::IsotropicEllipse);
        // tilted plane z = x + y keeps the top view a circle
        let tilted: Vec<AffinePoint3> =
            pts.iter().map(|p| AffinePoint3::new(p.x.clone(), p.y.clone(), &p.x + &p.y)).collect();
        assert_eq!(classify_isocurve(&tilted).unwrap(), CurveKind::IsotropicEllipse);
    }

    #[test]
    fn other_and_point_shapes() {
        let cubic: Vec<AffinePoint3> = (0..7).map(|k| AffinePoint3::from_ints(k, 0, k * k * k)).collect();
        assert_eq!(classify_isocurve(&cubic).unwrap(), CurveKind::Other);
        let still: Vec<AffinePoint3> = (0..7).map(|_| AffinePoint3::from_ints(1, 2, 3)).collect();
        assert_eq!(classify_isocurve(&still).unwrap(), CurveKind::Point);
        let vertical: Vec<AffinePoint3> = (0..7).map(|k| AffinePoint3::from_ints(1, 2, k)).collect();
        assert_eq!(classify_isocurve(&vertical).unwrap(), CurveKind::Line);
        assert_eq!(classify_isocurve(&still[..6]), Err(SurfaceError::TooFewPoints(6)));
    }

    #[test]
    fn pole_dense_curve_errors() {
        // R(0, v) ≡ 0: every sample on u = 0 is a pole
        let (u, v) = (RPoly::u(), RPoly::v());
        let s = ParabolicSurface::new(u.clone(), v, &u * &RPoly::v(), RPoly::zero()).unwrap();
        assert!(matches!(
            isocurve_sample(&s, Axis::U, &rat(0), 7),
            Err(SurfaceError::TooFewSamples { needed: 7, found: 0, tried: 70 })
        ));
    }
}
