//! Exact bivariate polynomials in `u` and `v`.
//!
//! A [`BiPoly`] stores only nonzero terms keyed by `(deg_u, deg_v)`. Results of
//! arithmetic never inherit a declared bidegree bound; the bound is a checked
//! annotation attached with [`BiPoly::with_bound`].

mod gcd;
mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{rat, Coeff, GaussianRational, Rational};

pub use gcd::{gcd, gcd3};

/// Real polynomial with rational coefficients.
pub type RPoly = BiPoly<Rational>;
/// Complex polynomial with Gaussian-rational coefficients.
pub type CPoly = BiPoly<GaussianRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("gcd of zero polynomials is undefined")]
    DegenerateInput,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("degree {actual} along {axis} exceeds cap {cap}")]
    CapTooSmall { axis: Axis, actual: u32, cap: u32 },
    #[error("bidegree ({du},{dv}) exceeds declared bound ({bu},{bv})")]
    BoundExceeded { du: u32, dv: u32, bu: u32, bv: u32 },
}

impl PolyError {
    pub fn tag(&self) -> &'static str {
        match self {
            PolyError::DegenerateInput => "polyring.degenerate_input",
            PolyError::DivisionByZero => "polyring.division_by_zero",
            PolyError::NotDivisible => "polyring.not_divisible",
            PolyError::CapTooSmall { .. } => "polyring.cap_too_small",
            PolyError::BoundExceeded { .. } => "polyring.bound_exceeded",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    U,
    V,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::U => Axis::V,
            Axis::V => Axis::U,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::U => "u",
            Axis::V => "v",
        })
    }
}

/// Maximal exponents of a polynomial. The zero polynomial reports `(0, 0)`
/// with `is_zero` set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bidegree {
    pub deg_u: u32,
    pub deg_v: u32,
    pub is_zero: bool,
}

impl Bidegree {
    pub fn along(&self, axis: Axis) -> u32 {
        match axis {
            Axis::U => self.deg_u,
            Axis::V => self.deg_v,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BiPoly<K> {
    terms: BTreeMap<(u32, u32), K>,
    bound: Option<(u32, u32)>,
}

impl<K: Coeff> PartialEq for BiPoly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<K: Coeff> Default for BiPoly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

/// Graded-lexicographic comparison with `u` ranked before `v`.
fn grlex(a: &(u32, u32), b: &(u32, u32)) -> Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

impl<K: Coeff> BiPoly<K> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
            bound: None,
        }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(du: u32, dv: u32, c: K) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert((du, dv), c);
        }
        p
    }

    pub fn u() -> Self {
        Self::monomial(1, 0, K::one())
    }

    pub fn v() -> Self {
        Self::monomial(0, 1, K::one())
    }

    pub fn var(axis: Axis) -> Self {
        match axis {
            Axis::U => Self::u(),
            Axis::V => Self::v(),
        }
    }

    /// Sums duplicate keys and drops zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, K)>) -> Self {
        let mut p = Self::zero();
        for (du, dv, c) in terms {
            p.add_term(du, dv, c);
        }
        p
    }

    /// `c11·uv + c10·u + c01·v + c00` from `[c11, c10, c01, c00]`.
    pub fn from_ints11(c: &[i64]) -> Self {
        assert_eq!(c.len(), 4);
        Self::from_terms([
            (1, 1, K::from_i64(c[0])),
            (1, 0, K::from_i64(c[1])),
            (0, 1, K::from_i64(c[2])),
            (0, 0, K::from_i64(c[3])),
        ])
    }

    fn add_term(&mut self, du: u32, dv: u32, c: K) {
        if c.is_zero() {
            return;
        }
        let key = (du, dv);
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Attaches a bidegree cap after checking every term against it.
    pub fn with_bound(mut self, bu: u32, bv: u32) -> Result<Self, PolyError> {
        let d = self.bidegree();
        if !self.fits(bu, bv) {
            return Err(PolyError::BoundExceeded {
                du: d.deg_u,
                dv: d.deg_v,
                bu,
                bv,
            });
        }
        self.bound = Some((bu, bv));
        Ok(self)
    }

    pub fn declared_bound(&self) -> Option<(u32, u32)> {
        self.bound
    }

    pub fn fits(&self, bu: u32, bv: u32) -> bool {
        self.terms.keys().all(|&(a, b)| a <= bu && b <= bv)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn constant_term(&self) -> K {
        self.coeff(0, 0)
    }

    pub fn coeff(&self, du: u32, dv: u32) -> K {
        self.terms.get(&(du, dv)).cloned().unwrap_or_else(K::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &K)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn bidegree(&self) -> Bidegree {
        let deg_u = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let deg_v = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        Bidegree {
            deg_u,
            deg_v,
            is_zero: self.is_zero(),
        }
    }

    pub fn deg(&self, axis: Axis) -> u32 {
        self.bidegree().along(axis)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    /// Lowest exponent of `axis` over all terms (0 for the zero polynomial).
    pub fn min_exponent(&self, axis: Axis) -> u32 {
        self.terms
            .keys()
            .map(|k| match axis {
                Axis::U => k.0,
                Axis::V => k.1,
            })
            .min()
            .unwrap_or(0)
    }

    /// Leading term under graded-lex order (u before v).
    pub fn leading_term(&self) -> Option<((u32, u32), &K)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0)).map(|(k, c)| (*k, c))
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Scales so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&(K::one() / lc.clone())),
            None => Self::zero(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (*k, x.clone() * c.clone())).collect(),
            bound: None,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn eval(&self, u: &K, v: &K) -> K {
        let du = self.bidegree().deg_u as usize;
        let dv = self.bidegree().deg_v as usize;
        let upow = powers(u, du);
        let vpow = powers(v, dv);
        self.terms.iter().fold(K::zero(), |acc, (&(a, b), c)| {
            acc + c.clone() * upow[a as usize].clone() * vpow[b as usize].clone()
        })
    }

    /// Fixes one variable, returning a polynomial in the other one (kept in
    /// its own slot).
    pub fn restrict(&self, axis: Axis, value: &K) -> Self {
        let d = self.deg(axis) as usize;
        let pw = powers(value, d);
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            match axis {
                Axis::U => out.add_term(0, b, c.clone() * pw[a as usize].clone()),
                Axis::V => out.add_term(a, 0, c.clone() * pw[b as usize].clone()),
            }
        }
        out
    }

    pub fn derivative(&self, axis: Axis) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            match axis {
                Axis::U if a > 0 => out.add_term(a - 1, b, c.clone() * K::from_i64(a as i64)),
                Axis::V if b > 0 => out.add_term(a, b - 1, c.clone() * K::from_i64(b as i64)),
                _ => {}
            }
        }
        out
    }

    /// Exchanges the roles of `u` and `v`.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| (b, a, c.clone())))
    }

    pub fn map<L: Coeff>(&self, f: impl Fn(&K) -> L) -> BiPoly<L> {
        BiPoly::from_terms(self.terms.iter().map(|(&(a, b), c)| (a, b, f(c))))
    }

    /// `q` with `self = d·q`, or an error when `d` does not divide `self`.
    pub fn divide_exact(&self, d: &Self) -> Result<Self, PolyError> {
        let (lead_d, lc_d) = d.leading_term().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        rem.bound = None;
        let mut quot = Self::zero();
        while let Some(((a, b), lc_r)) = rem.leading_term() {
            if a < lead_d.0 || b < lead_d.1 {
                return Err(PolyError::NotDivisible);
            }
            let t = Self::monomial(a - lead_d.0, b - lead_d.1, lc_r.clone() / lc_d.clone());
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    pub fn divides(&self, p: &Self) -> bool {
        !self.is_zero() && p.divide_exact(self).is_ok()
    }

    /// `axis^cap · p(…, 1/axis, …)`: reverses coefficients along `axis`.
    pub fn flip(&self, axis: Axis, cap: u32) -> Result<Self, PolyError> {
        let actual = self.deg(axis);
        if actual > cap {
            return Err(PolyError::CapTooSmall { axis, actual, cap });
        }
        Ok(Self::from_terms(self.terms.iter().map(|(&(a, b), c)| match axis {
            Axis::U => (cap - a, b, c.clone()),
            Axis::V => (a, cap - b, c.clone()),
        })))
    }

    /// `Σ c_ab · U^a · V^b` for polynomials `U`, `V`.
    pub fn substitute(&self, u_expr: &Self, v_expr: &Self) -> Self {
        let d = self.bidegree();
        let upow = poly_powers(u_expr, d.deg_u as usize);
        let vpow = poly_powers(v_expr, d.deg_v as usize);
        self.terms.iter().fold(Self::zero(), |acc, (&(a, b), c)| {
            &acc + &(&upow[a as usize] * &vpow[b as usize]).scale(c)
        })
    }

    /// Substitutes `u = nu/du`, `v = nv/dv` and clears denominators with the
    /// given caps: `Σ c_ab · nu^a du^(cap_u-a) · nv^b dv^(cap_v-b)`.
    pub fn substitute_fractions(
        &self,
        (nu, du, cap_u): (&Self, &Self, u32),
        (nv, dv, cap_v): (&Self, &Self, u32),
    ) -> Result<Self, PolyError> {
        let d = self.bidegree();
        if d.deg_u > cap_u {
            return Err(PolyError::CapTooSmall {
                axis: Axis::U,
                actual: d.deg_u,
                cap: cap_u,
            });
        }
        if d.deg_v > cap_v {
            return Err(PolyError::CapTooSmall {
                axis: Axis::V,
                actual: d.deg_v,
                cap: cap_v,
            });
        }
        let nu_p = poly_powers(nu, cap_u as usize);
        let du_p = poly_powers(du, cap_u as usize);
        let nv_p = poly_powers(nv, cap_v as usize);
        let dv_p = poly_powers(dv, cap_v as usize);
        Ok(self.terms.iter().fold(Self::zero(), |acc, (&(a, b), c)| {
            let uu = &nu_p[a as usize] * &du_p[(cap_u - a) as usize];
            let vv = &nv_p[b as usize] * &dv_p[(cap_v - b) as usize];
            &acc + &(&uu * &vv).scale(c)
        }))
    }
}

impl BiPoly<Rational> {
    /// Embeds a real polynomial into the Gaussian rationals.
    pub fn complexify(&self) -> BiPoly<GaussianRational> {
        self.map(GaussianRational::from_rational)
    }

    pub fn eval_f64(&self, u: f64, v: f64) -> f64 {
        self.terms()
            .map(|(a, b, c)| crate::scalar::rational_to_f64(c) * u.powi(a as i32) * v.powi(b as i32))
            .sum()
    }

    /// Sum of absolute term values at a point; the natural scale for
    /// judging a floating residual of [`BiPoly::eval_f64`].
    pub fn eval_abs_f64(&self, u: f64, v: f64) -> f64 {
        self.terms()
            .map(|(a, b, c)| (crate::scalar::rational_to_f64(c) * u.powi(a as i32) * v.powi(b as i32)).abs())
            .sum()
    }
}

impl BiPoly<GaussianRational> {
    pub fn real_part(&self) -> BiPoly<Rational> {
        self.map(|c| c.re.clone())
    }

    pub fn imag_part(&self) -> BiPoly<Rational> {
        self.map(|c| c.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.terms().all(|(_, _, c)| num_traits::Zero::is_zero(&c.im))
    }

    pub fn conj_coeffs(&self) -> Self {
        self.map(|c| c.conj())
    }
}

fn powers<K: Coeff>(x: &K, n: usize) -> Vec<K> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(K::one());
    for k in 0..n {
        let next = out[k].clone() * x.clone();
        out.push(next);
    }
    out
}

fn poly_powers<K: Coeff>(x: &BiPoly<K>, n: usize) -> Vec<BiPoly<K>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BiPoly::one());
    for k in 0..n {
        let next = &out[k] * x;
        out.push(next);
    }
    out
}

impl<K: Coeff> Add for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn add(self, rhs: &BiPoly<K>) -> BiPoly<K> {
        let mut out = self.clone();
        out.bound = None;
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl<K: Coeff> Sub for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn sub(self, rhs: &BiPoly<K>) -> BiPoly<K> {
        let mut out = self.clone();
        out.bound = None;
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c.clone());
        }
        out
    }
}

impl<K: Coeff> Mul for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn mul(self, rhs: &BiPoly<K>) -> BiPoly<K> {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                out.add_term(a + x, b + y, c.clone() * d.clone());
            }
        }
        out
    }
}

impl<K: Coeff> Neg for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn neg(self) -> BiPoly<K> {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
            bound: None,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<K: Coeff> $tr for BiPoly<K> {
            type Output = BiPoly<K>;
            fn $m(self, rhs: BiPoly<K>) -> BiPoly<K> {
                (&self).$m(&rhs)
            }
        }
        impl<K: Coeff> $tr<&BiPoly<K>> for BiPoly<K> {
            type Output = BiPoly<K>;
            fn $m(self, rhs: &BiPoly<K>) -> BiPoly<K> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<K: Coeff> Neg for BiPoly<K> {
    type Output = BiPoly<K>;
    fn neg(self) -> BiPoly<K> {
        -&self
    }
}

impl<K: Coeff> BiPoly<K> {
    /// Text form with custom names for the two variables.
    pub fn display_with(&self, x: &str, y: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| grlex(b, a));
        for (k, key) in keys.iter().enumerate() {
            let text = self.terms[key].to_text();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if !text.starts_with('(') => (true, rest.to_string()),
                _ => (false, text),
            };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let mono = monomial_text(key.0, key.1, x, y);
            match (body.as_str(), mono.is_empty()) {
                (_, true) => out.push_str(&body),
                ("1", false) => out.push_str(&mono),
                (_, false) => {
                    out.push_str(&body);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

impl<K: Coeff> fmt::Display for BiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("u", "v"))
    }
}

fn monomial_text(a: u32, b: u32, x: &str, y: &str) -> String {
    let part = |name: &str, e: u32| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    match (part(x, a), part(y, b)) {
        (p, q) if p.is_empty() => q,
        (p, q) if q.is_empty() => p,
        (p, q) => format!("{p}*{q}"),
    }
}

/// Shorthand for a rational constant polynomial.
pub fn rconst(n: i64) -> RPoly {
    RPoly::constant(rat(n))
}
