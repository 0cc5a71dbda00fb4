//! Points of RP⁴, the cylinder `x1²+x2²+x4² = x5²` (x5 ≠ 0), the line
//! `l: x1 = x2 = 0, x4 = x5`, and the isotropic stereographic projection
//! between the cylinder minus `l` and the chart `x4 = 0, x5 = 1`.

use num_traits::{One, Zero};

use crate::scalar::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("all homogeneous coordinates are zero")]
    ZeroPoint,
    #[error("point lies on the line x1 = x2 = 0, x4 = x5 through the projection center")]
    OnProjectionLine,
    #[error("point is not on the cylinder x1^2 + x2^2 + x4^2 = x5^2")]
    NotOnCylinder,
}

/// Homogeneous point `(x1 : x2 : x3 : x4 : x5)`. Equality is projective.
#[derive(Debug, Clone)]
pub struct ProjPoint4 {
    coords: [Rational; 5],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePoint3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl AffinePoint3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Self { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(rat(x), rat(y), rat(z))
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }
}

/// The projection center `N = (0:0:0:1:1)`.
pub fn projection_center() -> ProjPoint4 {
    ProjPoint4::from_ints([0, 0, 0, 1, 1]).expect("nonzero")
}

impl ProjPoint4 {
    pub fn new(coords: [Rational; 5]) -> Result<Self, GeomError> {
        if coords.iter().all(Zero::is_zero) {
            return Err(GeomError::ZeroPoint);
        }
        Ok(Self { coords })
    }

    pub fn from_ints(c: [i64; 5]) -> Result<Self, GeomError> {
        Self::new(c.map(rat))
    }

    pub fn coords(&self) -> &[Rational; 5] {
        &self.coords
    }

    pub fn on_cylinder(&self) -> bool {
        let [x1, x2, _, x4, x5] = &self.coords;
        !x5.is_zero() && x1 * x1 + x2 * x2 + x4 * x4 == x5 * x5
    }

    pub fn on_line_l(&self) -> bool {
        let [x1, x2, _, x4, x5] = &self.coords;
        x1.is_zero() && x2.is_zero() && x4 == x5
    }

    /// Scales so the last nonzero coordinate is 1.
    pub fn normalized(&self) -> [Rational; 5] {
        let pivot = self.coords.iter().rev().find(|c| !c.is_zero()).cloned().unwrap_or_else(Rational::one);
        self.coords.clone().map(|c| c / &pivot)
    }
}

impl PartialEq for ProjPoint4 {
    /// Proportional iff every 2×2 minor vanishes.
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&self.coords, &other.coords);
        (0..5).all(|i| (i + 1..5).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
    }
}

/// `π: (x1:…:x5) ↦ (x1, x2, x3) / (x5 − x4)`.
pub fn iso_proj(p: &ProjPoint4) -> Result<AffinePoint3, GeomError> {
    if !p.on_cylinder() {
        return Err(GeomError::NotOnCylinder);
    }
    let [x1, x2, x3, x4, x5] = &p.coords;
    let den = x5 - x4;
    if den.is_zero() {
        return Err(GeomError::OnProjectionLine);
    }
    Ok(AffinePoint3::new(x1 / &den, x2 / &den, x3 / &den))
}

/// `π⁻¹: (x, y, z) ↦ (2x : 2y : 2z : x²+y²−1 : x²+y²+1)`.
pub fn iso_unproj(a: &AffinePoint3) -> ProjPoint4 {
    let two = rat(2);
    let s = &a.x * &a.x + &a.y * &a.y;
    ProjPoint4 {
        coords: [
            &two * &a.x,
            &two * &a.y,
            &two * &a.z,
            &s - Rational::one(),
            &s + Rational::one(),
        ],
    }
}
