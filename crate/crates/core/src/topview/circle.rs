//! Generalized circles `α·zz̄ + βz + β̄z̄ + γ = 0` and Hermitian forms.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::TopviewError;
use crate::bilinfrac::{Mat2, Moebius};
use crate::polyring::RPoly;
use crate::scalar::{gauss, rat, rational_sqrt, rational_to_f64, GaussianRational, Rational};

/// `p·zz̄ + q·z + q̄·z̄ + r` with real `p`, `r`; real-valued for every `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermForm {
    pub p: Rational,
    pub q: GaussianRational,
    pub r: Rational,
}

fn norm2(z: &GaussianRational) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

fn conj(z: &GaussianRational) -> GaussianRational {
    z.conj()
}

/// `2·Re(z)`.
fn two_re(z: &GaussianRational) -> Rational {
    &z.re * rat(2)
}

impl HermForm {
    pub fn new(p: Rational, q: GaussianRational, r: Rational) -> Self {
        Self { p, q, r }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), GaussianRational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.p + &o.p, &self.q + &o.q, &self.r + &o.r)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let kc = gauss(k.clone(), Rational::zero());
        Self::new(&self.p * k, &self.q * kc, &self.r * k)
    }

    /// `|λz + κ|²`.
    pub fn abs2(lam: &GaussianRational, kap: &GaussianRational) -> Self {
        Self::new(norm2(lam), lam * conj(kap), norm2(kap))
    }

    /// `L·M̄ + L̄·M` for `L = λz + κ`, `M = μz + ν`.
    pub fn re2(l: (&GaussianRational, &GaussianRational), m: (&GaussianRational, &GaussianRational)) -> Self {
        let (lam, kap) = l;
        let (mu, nu) = m;
        Self::new(two_re(&(lam * conj(mu))), lam * conj(nu) + conj(kap) * mu, two_re(&(kap * conj(nu))))
    }

    pub fn eval(&self, z: &GaussianRational) -> Rational {
        &self.p * norm2(z) + two_re(&(&self.q * z)) + &self.r
    }

    pub fn eval_c64(&self, z: Complex64) -> f64 {
        let q = Complex64::new(rational_to_f64(&self.q.re), rational_to_f64(&self.q.im));
        rational_to_f64(&self.p) * z.norm_sqr() + 2.0 * (q * z).re + rational_to_f64(&self.r)
    }

    /// `p(x² + y²) + 2 Re(q)·x − 2 Im(q)·y + r` with `u ↦ x`, `v ↦ y`.
    pub fn to_xy(&self) -> RPoly {
        RPoly::from_terms([
            (2, 0, self.p.clone()),
            (0, 2, self.p.clone()),
            (1, 0, two_re(&self.q)),
            (0, 1, -(&self.q.im * rat(2))),
            (0, 0, self.r.clone()),
        ])
    }
}

/// A circle or a line; the coefficients are not all zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedCircle {
    pub alpha: Rational,
    pub beta: GaussianRational,
    pub gamma: Rational,
}

/// Kind of real locus of a generalized-circle equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    Circle,
    Line,
    Point,
    Empty,
}

impl GeneralizedCircle {
    pub fn new(alpha: Rational, beta: GaussianRational, gamma: Rational) -> Result<Self, TopviewError> {
        if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
            return Err(TopviewError::DegenerateCircle);
        }
        if alpha.is_zero() && beta.is_zero() {
            return Err(TopviewError::DegenerateCircle);
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn from_form(f: &HermForm) -> Result<Self, TopviewError> {
        Self::new(f.p.clone(), f.q.clone(), f.r.clone())
    }

    /// Equal up to a nonzero real factor.
    pub fn same_locus(&self, o: &Self) -> bool {
        let a = [&self.alpha, &self.beta.re, &self.beta.im, &self.gamma];
        let b = [&o.alpha, &o.beta.re, &o.beta.im, &o.gamma];
        (0..4).all(|i| (i + 1..4).all(|j| a[i] * b[j] == a[j] * b[i]))
    }

    pub fn form(&self) -> HermForm {
        HermForm::new(self.alpha.clone(), self.beta.clone(), self.gamma.clone())
    }

    /// `|z − center|² = radius²`.
    pub fn circle(center: GaussianRational, radius_sq: Rational) -> Self {
        let gamma = norm2(&center) - radius_sq;
        Self {
            alpha: Rational::one(),
            beta: -conj(&center),
            gamma,
        }
    }

    pub fn unit_circle() -> Self {
        Self::circle(GaussianRational::zero(), Rational::one())
    }

    /// `a·x + b·y + c = 0`, encoded with `β = (a − b·i)/2`, `γ = c`.
    pub fn line(a: Rational, b: Rational, c: Rational) -> Result<Self, TopviewError> {
        let half = Rational::new(1.into(), 2.into());
        Self::new(Rational::zero(), gauss(&a * &half, -(&b * &half)), c)
    }

    pub fn real_axis() -> Self {
        Self::line(Rational::zero(), Rational::one(), Rational::zero()).expect("nonzero line")
    }

    /// `|β|² − αγ`; positive for genuine circles and lines.
    pub fn discriminant(&self) -> Rational {
        norm2(&self.beta) - &self.alpha * &self.gamma
    }

    pub fn locus(&self) -> Locus {
        if self.alpha.is_zero() {
            return Locus::Line;
        }
        match self.discriminant() {
            d if d.is_positive() => Locus::Circle,
            d if d.is_zero() => Locus::Point,
            _ => Locus::Empty,
        }
    }

    /// Center and squared radius of a circle.
    pub fn center_radius_sq(&self) -> Option<(GaussianRational, Rational)> {
        if self.alpha.is_zero() {
            return None;
        }
        let k = GaussianRational::new(self.alpha.clone(), Rational::zero());
        Some((-conj(&self.beta) / k, self.discriminant() / (&self.alpha * &self.alpha)))
    }

    pub fn contains(&self, z: &GaussianRational) -> bool {
        self.form().eval(z).is_zero()
    }

    pub fn contains_c64(&self, z: Complex64, tol: f64) -> bool {
        self.form().eval_c64(z).abs() <= tol
    }

    /// The first `count` rational points met while stepping the abscissa
    /// offset from the center (or the free coordinate of a line) through
    /// rationals of increasing height.
    pub fn rational_points(&self, count: usize) -> Result<Vec<GaussianRational>, TopviewError> {
        let mut found: Vec<GaussianRational> = Vec::new();
        let push = |found: &mut Vec<GaussianRational>, z: GaussianRational| {
            if !found.contains(&z) {
                found.push(z);
            }
        };
        let two = rat(2);
        for t in candidates_by_height(40) {
            if found.len() >= count {
                break;
            }
            if self.alpha.is_zero() {
                // 2 Re(β)·x − 2 Im(β)·y + γ = 0
                let (a, b) = (&self.beta.re * &two, -(&self.beta.im * &two));
                if !b.is_zero() {
                    let y = -(&a * &t + &self.gamma) / &b;
                    push(&mut found, gauss(t.clone(), y));
                } else {
                    let x = -&self.gamma / &a;
                    push(&mut found, gauss(x, t.clone()));
                }
                continue;
            }
            let (c, r2) = self.center_radius_sq().expect("alpha != 0");
            let rem = &r2 - &t * &t;
            if rem.is_negative() {
                continue;
            }
            if let Some(s) = rational_sqrt(&rem) {
                let x = &c.re + &t;
                push(&mut found, gauss(x.clone(), &c.im + &s));
                push(&mut found, gauss(x, &c.im - &s));
            }
        }
        if found.len() < count {
            return Err(TopviewError::NoRationalPoints);
        }
        found.truncate(count);
        Ok(found)
    }

    /// Möbius map taking `0, 1, ∞` to three rational points of the circle,
    /// so the real line maps onto it.
    pub fn parametrization(&self) -> Result<Moebius<GaussianRational>, TopviewError> {
        if matches!(self.locus(), Locus::Point | Locus::Empty) {
            return Err(TopviewError::DegenerateCircle);
        }
        let pts = self.rational_points(3)?;
        let (z1, z2, z3) = (&pts[0], &pts[1], &pts[2]);
        let k = (z2 - z1) / (z3 - z2);
        let m = Mat2::new(z3 * &k, z1.clone(), k, GaussianRational::one());
        Moebius::new(m).map_err(TopviewError::from)
    }
}

/// Rationals `n/d` in lowest terms ordered by height `max(|n|, d)`, then
/// by construction order.
fn candidates_by_height(max_height: i64) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for h in 1..=max_height {
        for d in 1..=h {
            for n in [-h, h].into_iter().chain(-h + 1..h) {
                let r = Rational::new(n.into(), d.into());
                // skip fractions that reduce to a smaller height
                if n.abs().max(d) == h && *r.denom() == d.into() {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Image of `w` under `f`: substitute `z = f⁻¹(z')` and clear `|cz' + d|²`.
pub fn moebius_image_circle(f: &Moebius<GaussianRational>, w: &GeneralizedCircle) -> GeneralizedCircle {
    let inv = f.inverse();
    let Mat2 { a: p, b: q, c: r, d: s } = inv.matrix();
    let (al, be, ga) = (
        GaussianRational::new(w.alpha.clone(), Rational::zero()),
        &w.beta,
        GaussianRational::new(w.gamma.clone(), Rational::zero()),
    );
    let beb = conj(be);
    let alpha = &al * p * conj(p) + be * p * conj(r) + &beb * conj(p) * r + &ga * r * conj(r);
    let beta = &al * p * conj(q) + be * p * conj(s) + &beb * conj(q) * r + &ga * r * conj(s);
    let gamma = &al * q * conj(q) + be * q * conj(s) + &beb * conj(q) * s + &ga * s * conj(s);
    debug_assert!(alpha.im.is_zero() && gamma.im.is_zero());
    GeneralizedCircle {
        alpha: alpha.re,
        beta,
        gamma: gamma.re,
    }
}

/// Image of the real line under `f`.
pub fn image_of_real_line(f: &Moebius<GaussianRational>) -> GeneralizedCircle {
    moebius_image_circle(f, &GeneralizedCircle::real_axis())
}
