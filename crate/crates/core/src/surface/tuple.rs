//! Cylinder tuples `(X1, …, X5)` in R_{2,2} and their parametrizations.

use std::fmt;

use num_traits::One;

use super::SurfaceError;
use crate::polyring::{gcd3, Axis, RPoly};
use crate::projgeom::ProjPoint4;
use crate::scalar::{rat, Rational};

/// Five polynomials with `X1² + X2² + X4² − X5² ≡ 0`, `X5 ≠ 0`, all in R_{2,2}.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderTuple {
    x: [RPoly; 5],
}

/// How a tuple fails to describe a genuine surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// `X5 = X4`: every point lies on the line through the projection center.
    OnLineL,
    /// The projected image is a single point.
    Point,
    /// The projected image lies in one vertical line.
    VerticalLine,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Degeneracy::OnLineL => "on_line_l",
            Degeneracy::Point => "point",
            Degeneracy::VerticalLine => "vertical_line",
        })
    }
}

const NAMES: [&str; 5] = ["X1", "X2", "X3", "X4", "X5"];

/// `a = c·d` for some constant `c` (including `c = 0`).
fn is_constant_multiple(a: &RPoly, d: &RPoly) -> bool {
    if a.is_zero() {
        return true;
    }
    match (a.leading_coeff(), d.leading_coeff()) {
        (Some(la), Some(ld)) => &d.scale(&(la / ld)) == a,
        _ => false,
    }
}

impl CylinderTuple {
    pub fn new(parts: [RPoly; 5]) -> Result<Self, SurfaceError> {
        check_parts(parts)
    }

    pub(crate) fn from_parts_unchecked(parts: [RPoly; 5]) -> Self {
        let t = Self { x: parts };
        debug_assert!(t.residual().is_zero());
        t
    }

    pub fn parts(&self) -> &[RPoly; 5] {
        &self.x
    }

    /// `X_k` for `k` in `1..=5`.
    pub fn x(&self, k: usize) -> &RPoly {
        &self.x[k - 1]
    }

    pub(crate) fn set_x3(&mut self, x3: RPoly) {
        self.x[2] = x3;
    }

    /// Replaces the free coordinate `X3`, which the cylinder equation ignores.
    pub fn with_x3(mut self, x3: RPoly) -> Result<Self, SurfaceError> {
        if !x3.fits(2, 2) {
            return Err(SurfaceError::Bound { name: "X3", bu: 2, bv: 2 });
        }
        self.x[2] = x3;
        Ok(self)
    }

    /// `X1² + X2² + X4² − X5²`.
    pub fn residual(&self) -> RPoly {
        let [x1, x2, _, x4, x5] = &self.x;
        &(&(&x1.square() + &x2.square()) + &x4.square()) - &x5.square()
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Result<ProjPoint4, SurfaceError> {
        ProjPoint4::new(self.x.clone().map(|p| p.eval(u, v))).map_err(|_| SurfaceError::Pole {
            u: u.to_string(),
            v: v.to_string(),
        })
    }

    pub fn degeneracy(&self) -> Option<Degeneracy> {
        let [x1, x2, x3, x4, x5] = &self.x;
        let d = x5 - x4;
        if d.is_zero() {
            return Some(Degeneracy::OnLineL);
        }
        if is_constant_multiple(x1, &d) && is_constant_multiple(x2, &d) {
            return Some(if is_constant_multiple(x3, &d) {
                Degeneracy::Point
            } else {
                Degeneracy::VerticalLine
            });
        }
        None
    }

    /// Reparametrizes by `u ↦ 1/u` and/or `v ↦ 1/v`, clearing with `u²`, `v²`.
    pub fn in_chart(&self, chart: Chart) -> CylinderTuple {
        let flip = |p: &RPoly| -> RPoly {
            let mut q = p.clone();
            if chart.flips_u() {
                q = q.flip(Axis::U, 2).expect("tuple entries lie in R_{2,2}");
            }
            if chart.flips_v() {
                q = q.flip(Axis::V, 2).expect("tuple entries lie in R_{2,2}");
            }
            q
        };
        Self::from_parts_unchecked(self.x.clone().map(|p| flip(&p)))
    }
}

fn check_parts(parts: [RPoly; 5]) -> Result<CylinderTuple, SurfaceError> {
    for (p, name) in parts.iter().zip(NAMES) {
        if !p.fits(2, 2) {
            return Err(SurfaceError::Bound { name, bu: 2, bv: 2 });
        }
    }
    if parts[4].is_zero() {
        return Err(SurfaceError::ZeroPolynomial("X5"));
    }
    let t = CylinderTuple { x: parts };
    if !t.residual().is_zero() {
        return Err(SurfaceError::NotOnCylinder);
    }
    Ok(t)
}

fn tparam_parts(p: &RPoly, q: &RPoly, r: &RPoly, t: &RPoly) -> [RPoly; 5] {
    let two = RPoly::constant(rat(2));
    let s = &p.square() + &q.square();
    let r2 = r.square();
    [
        &(&two * &(p * r)) * t,
        &(&two * &(q * r)) * t,
        RPoly::zero(),
        &(&s - &r2) * t,
        &(&s + &r2) * t,
    ]
}

/// `(2PRT, 2QRT, 0, (P²+Q²−R²)T, (P²+Q²+R²)T)`.
pub fn compose_tparam(p: &RPoly, q: &RPoly, r: &RPoly, t: &RPoly) -> Result<CylinderTuple, SurfaceError> {
    check_parts(tparam_parts(p, q, r, t))
}

/// The Pythagorean 4-tuple formulas, with `X3 = 0`.
pub fn compose_pythagorean(
    p0: &RPoly,
    p1: &RPoly,
    p2: &RPoly,
    p3: &RPoly,
    t: &RPoly,
) -> Result<CylinderTuple, SurfaceError> {
    let two = RPoly::constant(rat(2));
    let (s0, s1, s2, s3) = (p0.square(), p1.square(), p2.square(), p3.square());
    check_parts([
        &(&two * &(&(p0 * p1) - &(p2 * p3))) * t,
        &(&two * &(&(p1 * p3) + &(p0 * p2))) * t,
        RPoly::zero(),
        &(&(&s1 + &s2) - &(&s0 + &s3)) * t,
        &(&(&s0 + &s1) + &(&s2 + &s3)) * t,
    ])
}

/// `(P, Q, R, T)` reproducing a tuple through [`compose_tparam`].
#[derive(Debug, Clone, PartialEq)]
pub struct TParamWitness {
    pub p: RPoly,
    pub q: RPoly,
    pub r: RPoly,
    pub t: RPoly,
}

impl TParamWitness {
    /// The four constrained entries `(X1, X2, X4, X5)`.
    pub fn compose_parts(&self) -> [RPoly; 4] {
        let [x1, x2, _, x4, x5] = tparam_parts(&self.p, &self.q, &self.r, &self.t);
        [x1, x2, x4, x5]
    }

    pub fn compose(&self) -> Result<CylinderTuple, SurfaceError> {
        compose_tparam(&self.p, &self.q, &self.r, &self.t)
    }
}

/// Recovers `(P, Q, R, T)` from `D = gcd(X1, X2, X5 − X4)`, gauged so the
/// graded-lex leading coefficient of `R` is 1.
pub fn decompose_tparam(tuple: &CylinderTuple) -> Result<TParamWitness, SurfaceError> {
    let [x1, x2, _, x4, x5] = tuple.parts();
    if x1.is_zero() && x2.is_zero() {
        let w = if x4 == &-x5 {
            TParamWitness {
                p: RPoly::zero(),
                q: RPoly::zero(),
                r: RPoly::one(),
                t: x5.clone(),
            }
        } else if x4 == x5 {
            TParamWitness {
                p: RPoly::one(),
                q: RPoly::zero(),
                r: RPoly::zero(),
                t: x4.clone(),
            }
        } else {
            return Err(SurfaceError::NotOnCylinder);
        };
        return Ok(w);
    }
    let d5 = x5 - x4;
    let d = gcd3(x1, x2, &d5)?;
    let bd = d.bidegree();
    if bd.deg_u == 0 || bd.deg_v == 0 {
        return Err(SurfaceError::HypothesisViolated {
            deg_u: bd.deg_u,
            deg_v: bd.deg_v,
        });
    }
    let p = x1.divide_exact(&d)?;
    let q = x2.divide_exact(&d)?;
    let r = d5.divide_exact(&d)?;
    let half_t = d.divide_exact(&r).map_err(|_| SurfaceError::Inconsistent("R does not divide D"))?;
    let t = half_t.scale(&Rational::new(1.into(), 2.into()));

    let s = Rational::one() / r.leading_coeff().expect("R is nonzero");
    let w = TParamWitness {
        p: p.scale(&s),
        q: q.scale(&s),
        r: r.scale(&s),
        t: t.scale(&(Rational::one() / (&s * &s))),
    };
    if w.compose_parts() != [x1.clone(), x2.clone(), x4.clone(), x5.clone()] {
        return Err(SurfaceError::Inconsistent("recomposition differs from the input"));
    }
    Ok(w)
}

/// One of the four reparametrizations by coordinate inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    Identity,
    FlipU,
    FlipV,
    FlipBoth,
}

impl Chart {
    pub const ALL: [Chart; 4] = [Chart::Identity, Chart::FlipU, Chart::FlipV, Chart::FlipBoth];

    pub fn flips_u(self) -> bool {
        matches!(self, Chart::FlipU | Chart::FlipBoth)
    }

    pub fn flips_v(self) -> bool {
        matches!(self, Chart::FlipV | Chart::FlipBoth)
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::Identity => "identity",
            Chart::FlipU => "flip_u",
            Chart::FlipV => "flip_v",
            Chart::FlipBoth => "flip_both",
        }
    }
}

/// First chart in which `X1, X2, X5 − X4` share a divisor of degree ≥ 1 in
/// both variables.
pub fn normalize_for_parabolas(tuple: &CylinderTuple) -> Result<(CylinderTuple, Chart), SurfaceError> {
    for chart in Chart::ALL {
        let cand = tuple.in_chart(chart);
        let [x1, x2, _, x4, x5] = cand.parts();
        let Ok(d) = gcd3(x1, x2, &(x5 - x4)) else {
            continue;
        };
        let bd = d.bidegree();
        if bd.deg_u >= 1 && bd.deg_v >= 1 {
            return Ok((cand, chart));
        }
    }
    Err(SurfaceError::NotParabolicFamily)
}
