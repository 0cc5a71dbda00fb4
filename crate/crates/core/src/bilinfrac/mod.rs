//! Complex 2×2 matrices, Möbius maps, and bilinear-fractional maps
//! `F(u, v) = (a11·uv + a10·u + a01·v + a00) / (b11·uv + b10·u + b01·v + b00)`.
//!
//! Coefficient matrices use the layout `[[x11, x10], [x01, x00]]`.

mod classify;

pub use classify::{
    classify, classify_exact, classify_with, jordan_2x2, rank1_factor, rank1_factor_poly, verify_witness, Canonical,
    CanonicalClass, Classification, JordanKind, Jordan,
};

use num_complex::Complex64;

use crate::polyring::CPoly;
use crate::scalar::{ComplexScalar, GaussianRational};
use crate::surface::IsoCircleSurface;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BilinError {
    #[error("denominator matrix B is zero")]
    ZeroDenominator,
    #[error("matrix is singular; it does not define a Möbius map")]
    Singular,
    #[error("evaluation hits a pole")]
    Pole,
    #[error("polynomial {0} is not in C_{{1,1}}")]
    NotBilinear(String),
    #[error("polynomial is zero")]
    ZeroPolynomial,
}

impl BilinError {
    pub fn tag(&self) -> &'static str {
        match self {
            BilinError::ZeroDenominator => "bilinfrac.zero_denominator",
            BilinError::Singular => "bilinfrac.singular_matrix",
            BilinError::Pole => "bilinfrac.pole",
            BilinError::NotBilinear(_) => "bilinfrac.not_bilinear",
            BilinError::ZeroPolynomial => "bilinfrac.zero_polynomial",
        }
    }
}

/// `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<K> {
    pub a: K,
    pub b: K,
    pub c: K,
    pub d: K,
}

pub type Mat2C = Mat2<GaussianRational>;

impl<K: ComplexScalar> Mat2<K> {
    pub fn new(a: K, b: K, c: K, d: K) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(K::one(), K::zero(), K::zero(), K::one())
    }

    /// The swap `I = [[0, 1], [1, 0]]`.
    pub fn swap() -> Self {
        Self::new(K::zero(), K::one(), K::one(), K::zero())
    }

    pub fn diag(x: K, y: K) -> Self {
        Self::new(x, K::zero(), K::zero(), y)
    }

    pub fn zero() -> Self {
        Self::new(K::zero(), K::zero(), K::zero(), K::zero())
    }

    pub fn entries(&self) -> [&K; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> K {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> K {
        self.a.clone() + self.d.clone()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = |x: &K, y: &K, z: &K, w: &K| x.clone() * y.clone() + z.clone() * w.clone();
        Self::new(
            m(&self.a, &o.a, &self.b, &o.c),
            m(&self.a, &o.b, &self.b, &o.d),
            m(&self.c, &o.a, &self.d, &o.c),
            m(&self.c, &o.b, &self.d, &o.d),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::new(
            self.a.clone() * k.clone(),
            self.b.clone() * k.clone(),
            self.c.clone() * k.clone(),
            self.d.clone() * k.clone(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.a.clone() + o.a.clone(),
            self.b.clone() + o.b.clone(),
            self.c.clone() + o.c.clone(),
            self.d.clone() + o.d.clone(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-K::one()))
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let k = K::one() / det;
        Some(Self::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone()).scale(&k))
    }

    /// Largest entry modulus.
    pub fn norm_max(&self) -> f64 {
        self.entries().iter().map(|x| x.abs_f64()).fold(0.0, f64::max)
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.entries().iter().all(|x| x.is_negligible(tol))
    }

    /// True when some nonzero scalar `k` gives `self = k·o`.
    pub fn proportional(&self, o: &Self) -> bool {
        let (x, y) = (self.entries(), o.entries());
        (0..4).all(|i| (0..4).all(|j| x[i].clone() * y[j].clone() == x[j].clone() * y[i].clone()))
            && !self.is_negligible(0.0)
            && !o.is_negligible(0.0)
    }

    pub fn map<L: ComplexScalar>(&self, f: impl Fn(&K) -> L) -> Mat2<L> {
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn to_c64(&self) -> Mat2<Complex64> {
        self.map(|x| x.to_c64())
    }
}

/// Entries `[[c11, c10], [c01, c00]]` of a polynomial in C_{1,1}.
pub fn coeff_matrix(p: &CPoly) -> Result<Mat2C, BilinError> {
    if !p.fits(1, 1) {
        return Err(BilinError::NotBilinear(p.to_string()));
    }
    Ok(Mat2::new(p.coeff(1, 1), p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0)))
}

pub fn matrix_poly(m: &Mat2C) -> CPoly {
    CPoly::from_terms([
        (1, 1, m.a.clone()),
        (1, 0, m.b.clone()),
        (0, 1, m.c.clone()),
        (0, 0, m.d.clone()),
    ])
}

/// `f_M(z) = (az + b)/(cz + d)` with `det M ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Moebius<K> {
    m: Mat2<K>,
}

impl<K: ComplexScalar> Moebius<K> {
    pub fn new(m: Mat2<K>) -> Result<Self, BilinError> {
        if m.det().is_zero() {
            return Err(BilinError::Singular);
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self { m: Mat2::identity() }
    }

    pub fn matrix(&self) -> &Mat2<K> {
        &self.m
    }

    pub fn apply(&self, z: &K) -> Result<K, BilinError> {
        let den = self.m.c.clone() * z.clone() + self.m.d.clone();
        if den.is_zero() {
            return Err(BilinError::Pole);
        }
        Ok((self.m.a.clone() * z.clone() + self.m.b.clone()) / den)
    }

    /// `f_self ∘ f_m = f_{self·m}`.
    pub fn compose(&self, m: &Self) -> Self {
        Self { m: self.m.mul(&m.m) }
    }

    pub fn inverse(&self) -> Self {
        Self {
            m: self.m.inverse().expect("Möbius matrices are invertible"),
        }
    }

    /// Same map: matrices agree up to a nonzero scalar.
    pub fn same_map(&self, o: &Self) -> bool {
        self.m.proportional(&o.m)
    }

    pub fn to_c64(&self) -> Moebius<Complex64> {
        Moebius { m: self.m.to_c64() }
    }
}

/// `F^A_B` with `B ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinFrac<K> {
    pub num: Mat2<K>,
    pub den: Mat2<K>,
}

fn bilin_eval<K: ComplexScalar>(m: &Mat2<K>, u: &K, v: &K) -> K {
    let uv = u.clone() * v.clone();
    m.a.clone() * uv + m.b.clone() * u.clone() + m.c.clone() * v.clone() + m.d.clone()
}

impl<K: ComplexScalar> BilinFrac<K> {
    pub fn new(num: Mat2<K>, den: Mat2<K>) -> Result<Self, BilinError> {
        if den.is_negligible(0.0) {
            return Err(BilinError::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn eval(&self, u: &K, v: &K) -> Result<K, BilinError> {
        let d = bilin_eval(&self.den, u, v);
        if d.is_zero() {
            return Err(BilinError::Pole);
        }
        Ok(bilin_eval(&self.num, u, v) / d)
    }

    /// Numerator and denominator values at `(u, v)`.
    pub fn eval_parts(&self, u: &K, v: &K) -> (K, K) {
        (bilin_eval(&self.num, u, v), bilin_eval(&self.den, u, v))
    }

    /// `F(f_C(u), f_D(v)) = F^{CᵀAD}_{CᵀBD}(u, v)`.
    pub fn transform(&self, c: &Moebius<K>, d: &Moebius<K>) -> Self {
        let ct = c.matrix().transpose();
        Self {
            num: ct.mul(&self.num).mul(d.matrix()),
            den: ct.mul(&self.den).mul(d.matrix()),
        }
    }

    /// `f_M ∘ F`.
    pub fn post_compose(&self, m: &Moebius<K>) -> Self {
        let mm = m.matrix();
        Self {
            num: self.num.scale(&mm.a).add(&self.den.scale(&mm.b)),
            den: self.num.scale(&mm.c).add(&self.den.scale(&mm.d)),
        }
    }

    /// `F^B_A = f_I ∘ F^A_B`.
    pub fn swapped(&self) -> Self {
        Self {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn to_c64(&self) -> BilinFrac<Complex64> {
        BilinFrac {
            num: self.num.to_c64(),
            den: self.den.to_c64(),
        }
    }
}

impl BilinFrac<GaussianRational> {
    pub fn from_polys(num: &CPoly, den: &CPoly) -> Result<Self, BilinError> {
        Self::new(coeff_matrix(num)?, coeff_matrix(den)?)
    }
}

/// Top view `(P1 + iP2)/(P0 − iP3)` of an isotropic-circle surface.
pub fn topview_map(s: &IsoCircleSurface) -> BilinFrac<GaussianRational> {
    let i = CPoly::constant(GaussianRational::i());
    let num = &s.p1.complexify() + &(&i * &s.p2.complexify());
    let den = &s.p0.complexify() - &(&i * &s.p3.complexify());
    debug_assert!(!den.is_zero());
    BilinFrac::from_polys(&num, &den).expect("R_{1,1} inputs give C_{1,1} polynomials and P0 - iP3 != 0")
}
