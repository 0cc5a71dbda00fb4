//! JSON encodings of the library's values.
//!
//! Rationals are strings `"n/d"` (integers and finite decimals are accepted
//! on input); complex numbers are strings such as `"1/2-3i"` or `[re, im]`
//! pairs. Polynomials are `{"field": "Q" | "Q(i)", "terms": [[du, dv, c], …]}`
//! where a `Q(i)` term carries two coefficient entries, real then imaginary.

use serde_json::{json, Map, Value};

use crate::bilinfrac::{BilinFrac, Canonical, CanonicalClass, Mat2, Moebius};
use crate::polyring::{BiPoly, CPoly, RPoly};
use crate::projgeom::{AffinePoint3, ProjPoint4};
use crate::scalar::{
    format_c64, format_gaussian, gauss, parse_gaussian, parse_rational, ComplexScalar, GaussianRational, Rational,
};
use crate::surface::{CylinderTuple, IsoCircleSurface, ParabolicSurface, TParamWitness};
use crate::topview::{Cyclic, DualConic, DualConicFit, GeneralizedCircle, HermForm, Top2Report};

/// Malformed input; the CLI maps it to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct CodecError(pub String);

impl CodecError {
    pub fn tag(&self) -> &'static str {
        "codec.schema"
    }
}

type Res<T> = Result<T, CodecError>;

fn err<T>(msg: impl Into<String>) -> Res<T> {
    Err(CodecError(msg.into()))
}

pub fn field<'a>(v: &'a Value, key: &str) -> Res<&'a Value> {
    v.get(key).ok_or_else(|| CodecError(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Res<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| CodecError(format!("{what} must be an array")))
}

fn array_n<'a>(v: &'a Value, n: usize, what: &str) -> Res<&'a Vec<Value>> {
    let a = array(v, what)?;
    if a.len() != n {
        return err(format!("{what} must have {n} entries, got {}", a.len()));
    }
    Ok(a)
}

// ---- scalars ----

pub fn enc_rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn dec_rational(v: &Value) -> Res<Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return err(format!("expected a rational string, got {v}")),
    };
    parse_rational(&text).map_err(|e| CodecError(e.to_string()))
}

pub fn enc_gaussian(z: &GaussianRational) -> Value {
    Value::String(format_gaussian(z))
}

pub fn dec_gaussian(v: &Value) -> Res<GaussianRational> {
    match v {
        Value::String(s) => parse_gaussian(s).map_err(|e| CodecError(e.to_string())),
        Value::Array(a) if a.len() == 2 => Ok(gauss(dec_rational(&a[0])?, dec_rational(&a[1])?)),
        Value::Number(_) => Ok(gauss(dec_rational(v)?, Rational::from_integer(0.into()))),
        _ => err(format!("expected a complex string or [re, im], got {v}")),
    }
}

/// Generic scalar encoding used by witness matrices of either field.
pub fn enc_scalar<K: ComplexScalar>(z: &K) -> Value {
    Value::String(format_c64_or_exact(z))
}

fn format_c64_or_exact<K: ComplexScalar>(z: &K) -> String {
    let t = z.to_text();
    if K::EXACT {
        t.trim_start_matches('(').trim_end_matches(')').to_string()
    } else {
        format_c64(z.to_c64())
    }
}

// ---- polynomials ----

fn check_exponent(v: &Value) -> Res<u32> {
    v.as_u64()
        .filter(|&e| e <= 64)
        .map(|e| e as u32)
        .ok_or_else(|| CodecError(format!("exponent must be a small nonnegative integer, got {v}")))
}

pub fn enc_rpoly(p: &RPoly) -> Value {
    let terms: Vec<Value> = p.terms().map(|(a, b, c)| json!([a, b, c.to_string()])).collect();
    json!({"field": "Q", "terms": terms})
}

pub fn enc_cpoly(p: &CPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(a, b, c)| json!([a, b, c.re.to_string(), c.im.to_string()]))
        .collect();
    json!({"field": "Q(i)", "terms": terms})
}

/// Decodes either field into Gaussian-rational coefficients.
pub fn dec_cpoly(v: &Value) -> Res<CPoly> {
    let f = field(v, "field")?.as_str().unwrap_or("");
    let complex = match f {
        "Q" => false,
        "Q(i)" => true,
        _ => return err(format!("field must be \"Q\" or \"Q(i)\", got {f:?}")),
    };
    let mut out: Vec<(u32, u32, GaussianRational)> = Vec::new();
    for t in array(field(v, "terms")?, "terms")? {
        let t = array(t, "term")?;
        let c = match (complex, t.len()) {
            (false, 3) => gauss(dec_rational(&t[2])?, Rational::from_integer(0.into())),
            (true, 4) => gauss(dec_rational(&t[2])?, dec_rational(&t[3])?),
            (true, 3) => dec_gaussian(&t[2])?,
            _ => return err("term must be [du, dv, c] (Q) or [du, dv, re, im] (Q(i))"),
        };
        let (a, b) = (check_exponent(&t[0])?, check_exponent(&t[1])?);
        if num_traits::Zero::is_zero(&c) {
            return err(format!("term [{a}, {b}] has zero coefficient"));
        }
        if out.iter().any(|(x, y, _)| (*x, *y) == (a, b)) {
            return err(format!("duplicate term [{a}, {b}]"));
        }
        out.push((a, b, c));
    }
    Ok(BiPoly::from_terms(out))
}

pub fn dec_rpoly(v: &Value) -> Res<RPoly> {
    let p = dec_cpoly(v)?;
    if !p.is_real() {
        return err("expected a real polynomial");
    }
    Ok(p.real_part())
}

fn dec_rpoly_field(v: &Value, key: &str) -> Res<RPoly> {
    dec_rpoly(field(v, key)?).map_err(|e| CodecError(format!("{key}: {}", e.0)))
}

// ---- points ----

pub fn enc_proj(p: &ProjPoint4) -> Value {
    Value::Array(p.coords().iter().map(enc_rational).collect())
}

pub fn dec_proj(v: &Value) -> Res<ProjPoint4> {
    let a = array_n(v, 5, "projective point")?;
    let c: Vec<Rational> = a.iter().map(dec_rational).collect::<Res<_>>()?;
    ProjPoint4::new(c.try_into().expect("length 5")).map_err(|e| CodecError(e.to_string()))
}

pub fn enc_affine(p: &AffinePoint3) -> Value {
    Value::Array(p.coords().iter().map(|c| enc_rational(c)).collect())
}

pub fn dec_affine(v: &Value) -> Res<AffinePoint3> {
    let a = array_n(v, 3, "affine point")?;
    Ok(AffinePoint3::new(dec_rational(&a[0])?, dec_rational(&a[1])?, dec_rational(&a[2])?))
}

// ---- surfaces and tuples ----

/// A surface document: `{"kind": "param1", "P", "Q", "R", "Z"}` or
/// `{"kind": "param2", "P0", "P1", "P2", "P3", "Z"}`. `Z` defaults to 0.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceDoc {
    Param1(ParabolicSurface),
    Param2(IsoCircleSurface),
}

fn z_or_zero(v: &Value) -> Res<RPoly> {
    match v.get("Z") {
        Some(z) => dec_rpoly(z).map_err(|e| CodecError(format!("Z: {}", e.0))),
        None => Ok(RPoly::zero()),
    }
}

/// Decodes a surface; domain violations (bounds, zero denominators) are
/// reported through the second result layer.
pub fn dec_surface(v: &Value) -> Res<Result<SurfaceDoc, crate::surface::SurfaceError>> {
    let kind = field(v, "kind")?.as_str().unwrap_or("");
    match kind {
        "param1" => {
            let [p, q, r] = ["P", "Q", "R"].map(|k| dec_rpoly_field(v, k));
            Ok(ParabolicSurface::new(p?, q?, r?, z_or_zero(v)?).map(SurfaceDoc::Param1))
        }
        "param2" => {
            let [p0, p1, p2, p3] = ["P0", "P1", "P2", "P3"].map(|k| dec_rpoly_field(v, k));
            Ok(IsoCircleSurface::new(p0?, p1?, p2?, p3?, z_or_zero(v)?).map(SurfaceDoc::Param2))
        }
        _ => err(format!("surface kind must be \"param1\" or \"param2\", got {kind:?}")),
    }
}

pub fn enc_surface(s: &SurfaceDoc) -> Value {
    match s {
        SurfaceDoc::Param1(s) => json!({
            "kind": "param1", "P": enc_rpoly(&s.p), "Q": enc_rpoly(&s.q), "R": enc_rpoly(&s.r), "Z": enc_rpoly(&s.z),
        }),
        SurfaceDoc::Param2(s) => json!({
            "kind": "param2", "P0": enc_rpoly(&s.p0), "P1": enc_rpoly(&s.p1), "P2": enc_rpoly(&s.p2),
            "P3": enc_rpoly(&s.p3), "Z": enc_rpoly(&s.z),
        }),
    }
}

pub fn enc_tuple(t: &CylinderTuple) -> Value {
    Value::Array(t.parts().iter().map(enc_rpoly).collect())
}

/// A tuple is an array of 5 polynomials, or `{"tuple": [...]}`.
pub fn dec_tuple_parts(v: &Value) -> Res<[RPoly; 5]> {
    let v = v.get("tuple").unwrap_or(v);
    let a = array_n(v, 5, "cylinder tuple")?;
    let parts: Vec<RPoly> = a
        .iter()
        .enumerate()
        .map(|(k, p)| dec_rpoly(p).map_err(|e| CodecError(format!("X{}: {}", k + 1, e.0))))
        .collect::<Res<_>>()?;
    Ok(parts.try_into().expect("length 5"))
}

pub fn enc_witness(w: &TParamWitness) -> Value {
    json!({"P": enc_rpoly(&w.p), "Q": enc_rpoly(&w.q), "R": enc_rpoly(&w.r), "T": enc_rpoly(&w.t)})
}

// ---- matrices and maps ----

pub fn enc_mat<K: ComplexScalar>(m: &Mat2<K>) -> Value {
    json!([[enc_scalar(&m.a), enc_scalar(&m.b)], [enc_scalar(&m.c), enc_scalar(&m.d)]])
}

pub fn dec_mat(v: &Value) -> Res<Mat2<GaussianRational>> {
    let rows = array_n(v, 2, "matrix")?;
    let r0 = array_n(&rows[0], 2, "matrix row")?;
    let r1 = array_n(&rows[1], 2, "matrix row")?;
    Ok(Mat2::new(dec_gaussian(&r0[0])?, dec_gaussian(&r0[1])?, dec_gaussian(&r1[0])?, dec_gaussian(&r1[1])?))
}

pub fn enc_moebius<K: ComplexScalar>(m: &Moebius<K>) -> Value {
    enc_mat(m.matrix())
}

/// `{"A": matrix, "B": matrix}` in the layout `[[x11, x10], [x01, x00]]`,
/// or `{"num": poly, "den": poly}`.
pub fn dec_bilinfrac(v: &Value) -> Res<Result<BilinFrac<GaussianRational>, crate::bilinfrac::BilinError>> {
    if let (Some(a), Some(b)) = (v.get("A"), v.get("B")) {
        return Ok(BilinFrac::new(dec_mat(a)?, dec_mat(b)?));
    }
    if let (Some(n), Some(d)) = (v.get("num"), v.get("den")) {
        return Ok(BilinFrac::from_polys(&dec_cpoly(n)?, &dec_cpoly(d)?));
    }
    err("bilinear-fractional map needs {\"A\", \"B\"} matrices or {\"num\", \"den\"} polynomials")
}

pub fn enc_bilinfrac<K: ComplexScalar>(f: &BilinFrac<K>) -> Value {
    json!({"A": enc_mat(&f.num), "B": enc_mat(&f.den)})
}

pub fn enc_class<K: ComplexScalar>(c: &CanonicalClass<K>) -> Value {
    json!({
        "tag": c.tag.name(), "case": c.case,
        "M": enc_moebius(&c.m), "C": enc_moebius(&c.c), "D": enc_moebius(&c.d),
    })
}

pub fn dec_canonical(v: &Value) -> Res<Canonical> {
    let s = v.as_str().unwrap_or("");
    Canonical::from_name(s).ok_or_else(|| CodecError(format!("unknown canonical tag {s:?}")))
}

// ---- circles, forms, cyclics ----

pub fn enc_circle(w: &GeneralizedCircle) -> Value {
    json!({
        "alpha": enc_rational(&w.alpha),
        "beta": [enc_rational(&w.beta.re), enc_rational(&w.beta.im)],
        "gamma": enc_rational(&w.gamma),
    })
}

pub fn dec_circle(v: &Value) -> Res<Result<GeneralizedCircle, crate::topview::TopviewError>> {
    let alpha = dec_rational(field(v, "alpha")?)?;
    let beta = dec_gaussian(field(v, "beta")?)?;
    let gamma = dec_rational(field(v, "gamma")?)?;
    Ok(GeneralizedCircle::new(alpha, beta, gamma))
}

pub fn enc_hermform(h: &HermForm) -> Value {
    json!({
        "p": enc_rational(&h.p),
        "q": [enc_rational(&h.q.re), enc_rational(&h.q.im)],
        "r": enc_rational(&h.r),
        "xy": h.to_xy().display_with("x", "y"),
    })
}

pub fn enc_cyclic(c: &Cyclic) -> Value {
    json!({
        "coefficients": c.to_dense().iter().map(enc_rational).collect::<Vec<_>>(),
        "text": c.to_string(),
    })
}

/// A 15-entry dense vector, or `{"coefficients": [...]}`.
pub fn dec_cyclic(v: &Value) -> Res<Result<Cyclic, crate::topview::TopviewError>> {
    let v = v.get("coefficients").unwrap_or(v);
    let a = array_n(v, 15, "cyclic")?;
    let c: Vec<Rational> = a.iter().map(dec_rational).collect::<Res<_>>()?;
    Ok(Cyclic::from_dense(&c))
}

fn enc_vec3(p: &[Rational; 3]) -> Value {
    Value::Array(p.iter().map(enc_rational).collect())
}

pub fn enc_dual(f: &DualConicFit) -> Value {
    let mut m = Map::new();
    m.insert("outcome".into(), json!(f.outcome.name()));
    m.insert("rank".into(), json!(f.rank));
    m.insert("lines_used".into(), json!(f.lines_used));
    m.insert(
        "matrix".into(),
        Value::Array(f.matrix.iter().map(|r| Value::Array(r.iter().map(enc_rational).collect())).collect()),
    );
    match &f.outcome {
        DualConic::SmoothConic(c) => {
            m.insert("C".into(), Value::Array(c.iter().map(enc_vec3).collect()));
        }
        DualConic::TwoPencils { p1, p2 } => {
            m.insert("p1".into(), enc_vec3(p1));
            m.insert("p2".into(), enc_vec3(p2));
        }
        DualConic::Line(l) => {
            m.insert("line".into(), enc_vec3(l));
        }
        DualConic::Point(p) => {
            m.insert("point".into(), enc_vec3(p));
        }
    }
    Value::Object(m)
}

pub fn enc_top2(r: &Top2Report) -> Value {
    let opt = |c: &Option<Cyclic>| c.as_ref().map(enc_cyclic).unwrap_or(Value::Null);
    json!({
        "class": r.class.name(),
        "case": r.case,
        "omega1": enc_circle(&r.omega1),
        "omega2": enc_circle(&r.omega2),
        "envelope1": opt(&r.envelope1),
        "envelope2": opt(&r.envelope2),
        "same_cyclic": r.same_cyclic,
        "max_residual": r.max_residual,
        "samples": r.samples,
    })
}
