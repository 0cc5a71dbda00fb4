//! Quadratic families `A·v² + B·v + C = 0` of generalized circles and their
//! discriminant envelopes.

use num_complex::Complex64;
use num_traits::Zero;

use super::circle::{GeneralizedCircle, HermForm, Locus};
use super::cyclic::Cyclic;
use super::TopviewError;
use crate::bilinfrac::Moebius;
use crate::linalg::rank;
use crate::polyring::RPoly;
use crate::scalar::{rat, GaussianRational, Rational};

/// Members `A·v² + B·v + C` for real `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleFamily {
    pub a: HermForm,
    pub b: HermForm,
    pub c: HermForm,
}

fn norm2(z: &GaussianRational) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

fn two_re(z: &GaussianRational) -> Rational {
    &z.re * rat(2)
}

impl CircleFamily {
    pub fn member(&self, v: &Rational) -> HermForm {
        self.a.scale(&(v * v)).add(&self.b.scale(v)).add(&self.c)
    }

    /// `2A·v + B`, the derivative of the member equation in `v`.
    pub fn derivative_member(&self, v: &Rational) -> HermForm {
        self.a.scale(&(v * rat(2))).add(&self.b)
    }

    pub fn eval_c64(&self, v: f64, x: Complex64, y: Complex64) -> Complex64 {
        let e = |h: &HermForm| hermform_eval_xy(h, x, y);
        e(&self.a) * v * v + e(&self.b) * v + e(&self.c)
    }

    /// `B² − 4AC` as a polynomial in `x, y`.
    pub fn discriminant(&self) -> RPoly {
        let (a, b, c) = (self.a.to_xy(), self.b.to_xy(), self.c.to_xy());
        &b.square() - &(&a * &c).scale(&rat(4))
    }

    /// Dimension of the real span of `A, B, C` as forms.
    pub fn span_dim(&self) -> usize {
        let row = |h: &HermForm| vec![h.p.clone(), h.q.re.clone(), h.q.im.clone(), h.r.clone()];
        rank(&[row(&self.a), row(&self.b), row(&self.c)])
    }
}

/// Value of the real form at a possibly complex point `(x, y)`.
pub(crate) fn hermform_eval_xy(h: &HermForm, x: Complex64, y: Complex64) -> Complex64 {
    let f = crate::scalar::rational_to_f64;
    f(&h.p) * (x * x + y * y) + 2.0 * f(&h.q.re) * x - 2.0 * f(&h.q.im) * y + f(&h.r)
}

/// The family `{w·ω₁ : w = (av+b)/(cv+d), v ∈ ℝ}`.
pub fn family_product(w1: &GeneralizedCircle, data: &Moebius<GaussianRational>) -> CircleFamily {
    let m = data.matrix();
    let (a, b, c, d) = (&m.a, &m.b, &m.c, &m.d);
    let (al, be, ga) = (&w1.alpha, &w1.beta, &w1.gamma);
    let q = |x: GaussianRational| be * x;
    CircleFamily {
        a: HermForm::new(al * norm2(c), q(a.conj() * c), ga * norm2(a)),
        b: HermForm::new(
            al * two_re(&(c * d.conj())),
            q(b.conj() * c + a.conj() * d),
            ga * two_re(&(a.conj() * b)),
        ),
        c: HermForm::new(al * norm2(d), q(b.conj() * d), ga * norm2(b)),
    }
}

/// The family `{w + ω₁ : w = (av+b)/(cv+d), v ∈ ℝ}`.
pub fn family_sum(w1: &GeneralizedCircle, data: &Moebius<GaussianRational>) -> Result<CircleFamily, TopviewError> {
    if matches!(w1.locus(), Locus::Point | Locus::Empty) {
        return Err(TopviewError::PointCircle);
    }
    let m = data.matrix();
    let (a, b, c, d) = (&m.a, &m.b, &m.c, &m.d);
    let (al, be, ga) = (&w1.alpha, &w1.beta, &w1.gamma);
    let zero = GaussianRational::zero();
    // z − w = (L1·v + L0)/(cv + d) with L1 = cz − a, L0 = dz − b
    let l1 = (c.clone(), -a.clone());
    let l0 = (d.clone(), -b.clone());
    let bl = |l: &(GaussianRational, GaussianRational)| (be * &l.0, be * &l.1);
    let k = |x: &GaussianRational| (zero.clone(), x.clone());
    let re2 = |l: &(GaussianRational, GaussianRational), m: &(GaussianRational, GaussianRational)| {
        HermForm::re2((&l.0, &l.1), (&m.0, &m.1))
    };
    let cst = |r: Rational| HermForm::new(Rational::zero(), zero.clone(), r);
    let (bl1, bl0) = (bl(&l1), bl(&l0));
    let fa = HermForm::abs2(&l1.0, &l1.1)
        .scale(al)
        .add(&re2(&bl1, &k(c)))
        .add(&cst(ga * norm2(c)));
    let fb = re2(&l1, &l0)
        .scale(al)
        .add(&re2(&bl1, &k(d)))
        .add(&re2(&bl0, &k(c)))
        .add(&cst(ga * two_re(&(c * d.conj()))));
    let fc = HermForm::abs2(&l0.0, &l0.1)
        .scale(al)
        .add(&re2(&bl0, &k(d)))
        .add(&cst(ga * norm2(d)));
    Ok(CircleFamily { a: fa, b: fb, c: fc })
}

/// The envelope `B² − 4AC = 0` as a cyclic.
pub fn envelope_cyclic(fam: &CircleFamily) -> Result<Cyclic, TopviewError> {
    if fam.a.is_zero() {
        return Err(TopviewError::LinearFamily);
    }
    if fam.span_dim() <= 1 {
        // all members are the same circle
        return Err(TopviewError::NoEnvelope);
    }
    let disc = fam.discriminant();
    // a nonzero constant discriminant has an empty zero set
    if disc.is_constant() {
        return Err(TopviewError::NoEnvelope);
    }
    Cyclic::new(disc)
}

/// Envelope shapes of a sum family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumShape {
    ConcentricCircles,
    Circle,
    ParallelLines,
}

impl SumShape {
    pub fn name(self) -> &'static str {
        match self {
            SumShape::ConcentricCircles => "concentric_circles",
            SumShape::Circle => "circle",
            SumShape::ParallelLines => "parallel_lines",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumEnvelope {
    pub shape: SumShape,
    pub cyclic: Cyclic,
}

impl SumEnvelope {
    pub fn of(fam: &CircleFamily) -> Result<Self, TopviewError> {
        let cyclic = envelope_cyclic(fam)?;
        let p = cyclic.poly();
        let a = cyclic.quartic_coeff();
        let shape = if !a.is_zero() {
            let four_a = &a * rat(4);
            let center = (-p.coeff(3, 0) / &four_a, -p.coeff(0, 3) / &four_a);
            // one of the two radii vanishes: a point and a circle
            if p.eval(&center.0, &center.1).is_zero() {
                SumShape::Circle
            } else {
                SumShape::ConcentricCircles
            }
        } else if !p.coeff(2, 0).is_zero() && p.coeff(2, 0) == p.coeff(0, 2) && p.coeff(1, 1).is_zero() {
            SumShape::Circle
        } else {
            SumShape::ParallelLines
        };
        Ok(Self { shape, cyclic })
    }
}
