//! Cyclics `a(x²+y²)² + (x²+y²)(bx + cy) + Q(x, y) = 0`, stored as real
//! polynomials in `x` (first variable) and `y` (second variable).

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::TopviewError;
use crate::bilinfrac::Moebius;
use crate::polyring::{CPoly, RPoly};
use crate::scalar::{gauss, rat, rational_to_f64, GaussianRational, Rational};

/// A nonzero cyclic polynomial, monic in graded-lex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Cyclic {
    poly: RPoly,
}

/// Exponents `(i, j)` of `x^i y^j` in the dense 15-vector order: by total
/// degree, then by decreasing power of `x`.
pub fn dense_order() -> Vec<(u32, u32)> {
    (0..=4u32).flat_map(|d| (0..=d).rev().map(move |i| (i, d - i))).collect()
}

fn check_shape(p: &RPoly) -> Result<(), TopviewError> {
    let bad = |m: &str| Err(TopviewError::NotCyclicShape(m.to_string()));
    if p.is_zero() {
        return Err(TopviewError::ZeroCyclic);
    }
    if p.total_degree() > 4 {
        return bad("total degree exceeds 4");
    }
    let c = |i, j| p.coeff(i, j);
    let a = c(4, 0);
    if c(0, 4) != a || c(2, 2) != &a * rat(2) || !c(3, 1).is_zero() || !c(1, 3).is_zero() {
        return bad("quartic part is not a multiple of (x^2+y^2)^2");
    }
    if c(3, 0) != c(1, 2) || c(0, 3) != c(2, 1) {
        return bad("cubic part is not (x^2+y^2)(bx+cy)");
    }
    Ok(())
}

impl Cyclic {
    pub fn new(poly: RPoly) -> Result<Self, TopviewError> {
        check_shape(&poly)?;
        Ok(Self { poly: poly.monic() })
    }

    pub fn from_dense(c: &[Rational]) -> Result<Self, TopviewError> {
        if c.len() != 15 {
            return Err(TopviewError::NotCyclicShape(format!("expected 15 coefficients, got {}", c.len())));
        }
        Self::new(RPoly::from_terms(dense_order().into_iter().zip(c).map(|((i, j), v)| (i, j, v.clone()))))
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        dense_order().into_iter().map(|(i, j)| self.poly.coeff(i, j)).collect()
    }

    pub fn poly(&self) -> &RPoly {
        &self.poly
    }

    /// The coefficient `a` of `(x²+y²)²`.
    pub fn quartic_coeff(&self) -> Rational {
        self.poly.coeff(4, 0)
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        self.poly.eval(x, y).is_zero()
    }

    pub fn eval_c64(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.poly
            .terms()
            .map(|(i, j, c)| rational_to_f64(c) * x.powu(i) * y.powu(j))
            .sum()
    }

    /// `|c(x, y)|` divided by `Σ |c_ij|·max(1, |x|)^i·max(1, |y|)^j`: relative
    /// far out, relative to the coefficient size near the origin.
    pub fn residual(&self, x: Complex64, y: Complex64) -> f64 {
        let (ax, ay) = (x.norm().max(1.0), y.norm().max(1.0));
        let scale: f64 = self
            .poly
            .terms()
            .map(|(i, j, c)| rational_to_f64(c).abs() * ax.powi(i as i32) * ay.powi(j as i32))
            .sum();
        self.eval_c64(x, y).norm() / scale
    }

    /// `(∂c/∂x, ∂c/∂y)` at a real point.
    pub fn gradient(&self, x: f64, y: f64) -> [f64; 2] {
        [
            self.poly.derivative(crate::polyring::Axis::U).eval_f64(x, y),
            self.poly.derivative(crate::polyring::Axis::V).eval_f64(x, y),
        ]
    }

    /// The same curve in the variables `z = x + iy`, `z̄ = x − iy`.
    pub fn to_isotropic(&self) -> CPoly {
        let half = GaussianRational::new(Rational::new(1.into(), 2.into()), Rational::zero());
        let (z, zb) = (CPoly::u(), CPoly::v());
        let x = (&z + &zb).scale(&half);
        // (z − z̄)/(2i) = −i(z − z̄)/2
        let y = (&z - &zb).scale(&(half * gauss(Rational::zero(), -Rational::one())));
        self.poly.complexify().substitute(&x, &y)
    }

    /// Inverse of [`Cyclic::to_isotropic`] for a polynomial in `(z, z̄)`
    /// that takes real values.
    pub fn from_isotropic(p: &CPoly) -> Result<Self, TopviewError> {
        let (x, y) = (CPoly::u(), CPoly::v());
        let iy = &y * &CPoly::constant(GaussianRational::i());
        let back = p.substitute(&(&x + &iy), &(&x - &iy));
        // A real-valued form has conjugate-symmetric coefficients; scale by
        // a nonzero coefficient to make it real in x, y.
        let lead = back.leading_coeff().cloned().ok_or(TopviewError::ZeroCyclic)?;
        let real = back.scale(&(GaussianRational::one() / lead));
        if !real.is_real() {
            return Err(TopviewError::NotCyclicShape("transformed form is not real".to_string()));
        }
        Self::new(real.real_part())
    }
}

impl fmt::Display for Cyclic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display_with("x", "y"))
    }
}

/// The image `f(c)`: substitutes `z = f⁻¹(w)` in the isotropic form and
/// clears the denominators `(rw + s)^k (r̄w̄ + s̄)^k`.
pub fn cyclic_transform(f: &Moebius<GaussianRational>, c: &Cyclic) -> Result<Cyclic, TopviewError> {
    let iso = c.to_isotropic();
    let inv = f.inverse();
    let m = inv.matrix();
    let lin = |a: &GaussianRational, b: &GaussianRational, var: &CPoly| &var.scale(a) + &CPoly::constant(b.clone());
    let (w, wb) = (CPoly::u(), CPoly::v());
    let nu = lin(&m.a, &m.b, &w);
    let du = lin(&m.c, &m.d, &w);
    let nv = lin(&m.a.conj(), &m.b.conj(), &wb);
    let dv = lin(&m.c.conj(), &m.d.conj(), &wb);
    let d = iso.bidegree();
    let cap = d.deg_u.max(d.deg_v);
    let image = iso.substitute_fractions((&nu, &du, cap), (&nv, &dv, cap))?;
    Cyclic::from_isotropic(&image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinfrac::Mat2;
    use crate::polyring::rconst;
    use crate::scalar::{gauss_int, ratio};
    use crate::topview::GeneralizedCircle;

    fn x() -> RPoly {
        RPoly::u()
    }
    fn y() -> RPoly {
        RPoly::v()
    }
    fn circle_poly(r2: i64) -> RPoly {
        &(&x().square() + &y().square()) - &rconst(r2)
    }

    #[test]
    fn shape_validation() {
        let c = Cyclic::new(circle_poly(4).scale(&rat(3))).unwrap();
        assert_eq!(c.to_string(), "x^2 + y^2 - 4");
        let prod = &circle_poly(4) * &circle_poly(16);
        assert!(Cyclic::new(prod).is_ok());
        assert!(matches!(Cyclic::new(x().pow(4)), Err(TopviewError::NotCyclicShape(_))));
        assert!(matches!(Cyclic::new(x().pow(3)), Err(TopviewError::NotCyclicShape(_))));
        assert!(Cyclic::new(&(&(&x().square() + &y().square()) * &x()) + &y()).is_ok());
        assert!(matches!(Cyclic::new(x().pow(5)), Err(TopviewError::NotCyclicShape(_))));
        assert_eq!(Cyclic::new(RPoly::zero()), Err(TopviewError::ZeroCyclic));
        // any conic passes: the quartic and cubic parts vanish
        assert!(Cyclic::new(&(&x().square() - &y().square()) + &rconst(1)).is_ok());
    }

    #[test]
    fn dense_round_trip() {
        let c = Cyclic::new(&circle_poly(4) * &(&circle_poly(1) + &x())).unwrap();
        let d = c.to_dense();
        assert_eq!(d.len(), 15);
        assert_eq!(Cyclic::from_dense(&d).unwrap(), c);
        assert_eq!(dense_order()[..4], [(0, 0), (1, 0), (0, 1), (2, 0)]);
        assert!(Cyclic::from_dense(&d[..14]).is_err());
    }

    #[test]
    fn isotropic_round_trip() {
        let c = Cyclic::new(&circle_poly(4) * &(&circle_poly(1) + &(&x() - &y().scale(&rat(3))))).unwrap();
        let iso = c.to_isotropic();
        assert_eq!(iso.bidegree().deg_u, 2);
        assert_eq!(Cyclic::from_isotropic(&iso).unwrap(), c);
    }

    #[test]
    fn transform_examples() {
        let c = Cyclic::new(circle_poly(4)).unwrap();
        assert_eq!(cyclic_transform(&Moebius::identity(), &c).unwrap(), c);
        let inv = Moebius::new(Mat2::swap()).unwrap();
        let img = cyclic_transform(&inv, &c).unwrap();
        assert_eq!(img.poly(), &(&(&x().square() + &y().square()) - &RPoly::constant(ratio(1, 4))));
        // z ↦ z + 1 + 2i moves the center
        let t = Moebius::new(Mat2::new(gauss_int(1, 0), gauss_int(1, 2), gauss_int(0, 0), gauss_int(1, 0))).unwrap();
        let img = cyclic_transform(&t, &c).unwrap();
        let expected = GeneralizedCircle::circle(gauss_int(1, 2), rat(4)).form().to_xy();
        assert_eq!(img.poly(), &expected.monic());
    }

    #[test]
    fn transform_maps_points_onto_image() {
        // union of two circles through rational points
        let w1 = GeneralizedCircle::circle(gauss_int(0, 0), rat(25));
        let w2 = GeneralizedCircle::circle(gauss_int(1, 1), rat(1));
        let c = Cyclic::new(&w1.form().to_xy() * &w2.form().to_xy()).unwrap();
        let f = Moebius::new(Mat2::new(gauss_int(1, 1), gauss_int(0, 2), gauss_int(1, 0), gauss_int(3, -1))).unwrap();
        let img = cyclic_transform(&f, &c).unwrap();
        let mut pts = w1.rational_points(10).unwrap();
        pts.extend(w2.rational_points(4).unwrap());
        for z in pts {
            assert!(c.contains(&z.re, &z.im));
            let fz = f.apply(&z).unwrap();
            assert!(img.contains(&fz.re, &fz.im), "{z:?}");
        }
    }
}
