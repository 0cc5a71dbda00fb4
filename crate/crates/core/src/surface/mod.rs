//! Surfaces carrying two families of parabolas or isotropic circles, their
//! lifts to the cylinder, and the parametrizations of cylinder tuples.

mod isocurve;
mod tuple;

pub use isocurve::{classify_isocurve, isocurve_sample, param_grid, CurveKind, Isoparametric};
pub use tuple::{
    compose_pythagorean, compose_tparam, decompose_tparam, normalize_for_parabolas, Chart, CylinderTuple,
    Degeneracy, TParamWitness,
};

use num_traits::Zero;

use crate::polyring::{PolyError, RPoly};
use crate::projgeom::AffinePoint3;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{name} exceeds bidegree bound ({bu},{bv})")]
    Bound { name: &'static str, bu: u32, bv: u32 },
    #[error("{0} must be a nonzero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("parametrization has a pole at (u, v) = ({u}, {v})")]
    Pole { u: String, v: String },
    #[error("tuple violates X1^2 + X2^2 + X4^2 = X5^2")]
    NotOnCylinder,
    #[error("X1, X2, X5 - X4 lack a common divisor of degree >= 1 in u and v (gcd bidegree ({deg_u},{deg_v}))")]
    HypothesisViolated { deg_u: u32, deg_v: u32 },
    #[error("tuple is not of the form (2PRT, 2QRT, (P^2+Q^2-R^2)T, (P^2+Q^2+R^2)T): {0}")]
    Inconsistent(&'static str),
    #[error("no flip of u or v gives a common divisor of degree >= 1 in u and v")]
    NotParabolicFamily,
    #[error("only {found} pole-free parameters among the first {tried} grid values, {needed} needed")]
    TooFewSamples { needed: usize, found: usize, tried: usize },
    #[error("isocurve classification needs at least 7 points, got {0}")]
    TooFewPoints(usize),
    #[error("T must be a nonzero constant for a surface-level parametrization")]
    NonConstantT,
}

impl SurfaceError {
    pub fn tag(&self) -> &'static str {
        match self {
            SurfaceError::Poly(e) => e.tag(),
            SurfaceError::Bound { .. } => "surface.bound_exceeded",
            SurfaceError::ZeroPolynomial(_) => "surface.zero_polynomial",
            SurfaceError::Pole { .. } => "surface.pole",
            SurfaceError::NotOnCylinder => "surface.not_on_cylinder",
            SurfaceError::HypothesisViolated { .. } => "surface.hypothesis_violated",
            SurfaceError::Inconsistent(_) => "surface.internal_inconsistency",
            SurfaceError::NotParabolicFamily => "surface.not_parabolic_family",
            SurfaceError::TooFewSamples { .. } => "surface.too_few_samples",
            SurfaceError::TooFewPoints(_) => "surface.too_few_points",
            SurfaceError::NonConstantT => "surface.nonconstant_t",
        }
    }
}

fn bounded(p: &RPoly, name: &'static str, bu: u32, bv: u32) -> Result<RPoly, SurfaceError> {
    p.clone().with_bound(bu, bv).map_err(|_| SurfaceError::Bound { name, bu, bv })
}

fn pole(u: &Rational, v: &Rational) -> SurfaceError {
    SurfaceError::Pole {
        u: u.to_string(),
        v: v.to_string(),
    }
}

/// `(P/R, Q/R, Z/R²)` with `P, Q, R ∈ R_{1,1}`, `Z ∈ R_{2,2}`, `R ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicSurface {
    pub p: RPoly,
    pub q: RPoly,
    pub r: RPoly,
    pub z: RPoly,
}

impl ParabolicSurface {
    pub fn new(p: RPoly, q: RPoly, r: RPoly, z: RPoly) -> Result<Self, SurfaceError> {
        if r.is_zero() {
            return Err(SurfaceError::ZeroPolynomial("R"));
        }
        Ok(Self {
            p: bounded(&p, "P", 1, 1)?,
            q: bounded(&q, "Q", 1, 1)?,
            r: bounded(&r, "R", 1, 1)?,
            z: bounded(&z, "Z", 2, 2)?,
        })
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Result<AffinePoint3, SurfaceError> {
        let r = self.r.eval(u, v);
        if r.is_zero() {
            return Err(pole(u, v));
        }
        let r2 = &r * &r;
        Ok(AffinePoint3::new(self.p.eval(u, v) / &r, self.q.eval(u, v) / &r, self.z.eval(u, v) / r2))
    }

    /// `(2PR : 2QR : 2Z : P²+Q²−R² : P²+Q²+R²)`.
    pub fn lift(&self) -> CylinderTuple {
        let two = RPoly::constant(crate::scalar::rat(2));
        let s = &self.p.square() + &self.q.square();
        let r2 = self.r.square();
        CylinderTuple::from_parts_unchecked([
            &two * &(&self.p * &self.r),
            &two * &(&self.q * &self.r),
            &two * &self.z,
            &s - &r2,
            &s + &r2,
        ])
    }

    /// Surface with the witness's `P, Q, R` and `Z = X3 / (2T)`; needs constant `T`.
    pub fn from_witness(w: &TParamWitness, x3: &RPoly) -> Result<Self, SurfaceError> {
        if !w.t.is_constant() || w.t.is_zero() {
            return Err(SurfaceError::NonConstantT);
        }
        let k = w.t.constant_term() * crate::scalar::rat(2);
        let z = x3.scale(&(crate::scalar::rat(1) / k));
        Self::new(w.p.clone(), w.q.clone(), w.r.clone(), z)
    }
}

/// `((P0P1−P2P3), (P1P3+P0P2), Z) / (P0²+P3²)` with `P_k ∈ R_{1,1}`, `Z ∈ R_{2,2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoCircleSurface {
    pub p0: RPoly,
    pub p1: RPoly,
    pub p2: RPoly,
    pub p3: RPoly,
    pub z: RPoly,
}

impl IsoCircleSurface {
    pub fn new(p0: RPoly, p1: RPoly, p2: RPoly, p3: RPoly, z: RPoly) -> Result<Self, SurfaceError> {
        // P0² + P3² vanishes identically only when both do.
        if p0.is_zero() && p3.is_zero() {
            return Err(SurfaceError::ZeroPolynomial("P0^2 + P3^2"));
        }
        Ok(Self {
            p0: bounded(&p0, "P0", 1, 1)?,
            p1: bounded(&p1, "P1", 1, 1)?,
            p2: bounded(&p2, "P2", 1, 1)?,
            p3: bounded(&p3, "P3", 1, 1)?,
            z: bounded(&z, "Z", 2, 2)?,
        })
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Result<AffinePoint3, SurfaceError> {
        let [p0, p1, p2, p3] = [&self.p0, &self.p1, &self.p2, &self.p3].map(|p| p.eval(u, v));
        let den = &p0 * &p0 + &p3 * &p3;
        if den.is_zero() {
            return Err(pole(u, v));
        }
        Ok(AffinePoint3::new(
            (&p0 * &p1 - &p2 * &p3) / &den,
            (&p1 * &p3 + &p0 * &p2) / &den,
            self.z.eval(u, v) / den,
        ))
    }

    /// The Pythagorean lift with `T = 1` and `X3 = 2Z`.
    pub fn lift(&self) -> CylinderTuple {
        let mut t = compose_pythagorean(&self.p0, &self.p1, &self.p2, &self.p3, &RPoly::one())
            .expect("R_{1,1} inputs with T = 1 stay in R_{2,2} and X5 = sum of squares is nonzero");
        t.set_x3(self.z.scale(&crate::scalar::rat(2)));
        t
    }
}
