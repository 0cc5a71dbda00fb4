//! Exact and floating coefficient fields.
//!
//! `Rational` and `GaussianRational` are the exact fields used throughout the
//! crate. `Complex64` shows up only in the float fallback of the map
//! classifier and in tangency sampling.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::{Complex, Complex64};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

/// `re + im·i` with rational parts.
pub type GaussianRational = Complex<Rational>;

/// A commutative field usable as a polynomial coefficient.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&rat(n))
    }

    /// Human-readable form; complex values are parenthesised when they have
    /// two nonzero parts.
    fn to_text(&self) -> String;
}

impl Coeff for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Coeff for GaussianRational {
    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.clone(), Rational::zero())
    }

    fn to_text(&self) -> String {
        let s = format_gaussian(self);
        if !self.re.is_zero() && !self.im.is_zero() {
            format!("({s})")
        } else {
            s
        }
    }
}

impl Coeff for Complex64 {
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }

    fn to_text(&self) -> String {
        format!("({})", format_c64(*self))
    }
}

/// Complex-valued fields the bilinear-fractional classifier runs over.
pub trait ComplexScalar: Coeff {
    /// True for exact fields; zero tests ignore the tolerance.
    const EXACT: bool;

    fn i() -> Self;
    fn conj(&self) -> Self;
    fn abs_f64(&self) -> f64;
    fn to_c64(&self) -> Complex64;
    /// Square root inside the field, `None` when it does not exist there.
    fn sqrt_in_field(&self) -> Option<Self>;

    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs_f64() <= tol
        }
    }
}

impl ComplexScalar for GaussianRational {
    const EXACT: bool = true;

    fn i() -> Self {
        Complex::new(Rational::zero(), Rational::one())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn sqrt_in_field(&self) -> Option<Self> {
        gaussian_sqrt(self)
    }
}

impl ComplexScalar for Complex64 {
    const EXACT: bool = false;

    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn abs_f64(&self) -> f64 {
        self.norm()
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn sqrt_in_field(&self) -> Option<Self> {
        Some(self.sqrt())
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn gauss_int(re: i64, im: i64) -> GaussianRational {
    Complex::new(rat(re), rat(im))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratios of huge integers overflow the direct conversion.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Square root in Q(i): the root with nonnegative real part (and nonnegative
/// imaginary part when the real part vanishes).
pub fn gaussian_sqrt(z: &GaussianRational) -> Option<GaussianRational> {
    if z.is_zero() {
        return Some(GaussianRational::zero());
    }
    let modulus = rational_sqrt(&(&z.re * &z.re + &z.im * &z.im))?;
    let two = rat(2);
    let re = rational_sqrt(&((&modulus + &z.re) / &two))?;
    let mut im = rational_sqrt(&((&modulus - &z.re) / &two))?;
    if z.im.is_negative() {
        im = -im;
    }
    let root = Complex::new(re, im);
    debug_assert_eq!(&(&root * &root), z);
    Some(root)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {what} from {text:?}")]
pub struct ScalarParseError {
    pub what: &'static str,
    pub text: String,
}

/// Parses `"3"`, `"-3/4"` or a finite decimal such as `"0.125"`, exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarParseError> {
    let err = || ScalarParseError {
        what: "rational",
        text: text.to_string(),
    };
    let t = text.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if t.contains('/') || frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let mantissa = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    let r = Rational::from_str(t).map_err(|_| err())?;
    if r.denom().sign() == Sign::NoSign {
        return Err(err());
    }
    Ok(r)
}

/// Canonical text of a Gaussian rational: `"2"`, `"-i"`, `"1/2+3i"`, `"-3/4i"`.
pub fn format_gaussian(z: &GaussianRational) -> String {
    let imag = |im: &Rational| -> String {
        if im.is_one() {
            "i".to_string()
        } else if *im == -Rational::one() {
            "-i".to_string()
        } else {
            format!("{im}i")
        }
    };
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => imag(&z.im),
        (false, false) => {
            let im = imag(&z.im);
            if im.starts_with('-') {
                format!("{}{}", z.re, im)
            } else {
                format!("{}+{}", z.re, im)
            }
        }
    }
}

/// Inverse of [`format_gaussian`]; also accepts decimal parts.
pub fn parse_gaussian(text: &str) -> Result<GaussianRational, ScalarParseError> {
    let err = || ScalarParseError {
        what: "gaussian rational",
        text: text.to_string(),
    };
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(gauss(parse_rational(&t).map_err(|_| err())?, Rational::zero()));
    };
    // Split "re±im" at the last sign that is not leading.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(k, _)| k)
        .last();
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_text {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        s => parse_rational(s.trim_start_matches('+')).map_err(|_| err())?,
    };
    let re = if re_text.is_empty() {
        Rational::zero()
    } else {
        parse_rational(re_text).map_err(|_| err())?
    };
    Ok(gauss(re, im))
}

pub fn format_c64(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}-{}i", z.re, -z.im)
    }
}

/// Largest absolute value among numerator and denominator, as a height
/// measure for generated data.
pub fn height(r: &Rational) -> BigInt {
    r.numer().abs().max(r.denom().clone())
}
