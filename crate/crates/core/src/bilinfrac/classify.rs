//! Reduction of a bilinear-fractional map to one of `uv, u+v, u, v, 0`.

use std::fmt;

use num_complex::Complex64;

use super::{coeff_matrix, BilinError, BilinFrac, Mat2, Moebius};
use crate::polyring::CPoly;
use crate::rng::InstanceRng;
use crate::scalar::{ratio, ComplexScalar, GaussianRational};

/// Tolerance of the automatic float fallback.
pub const FALLBACK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Canonical {
    UV,
    UPlusV,
    U,
    V,
    Zero,
}

impl Canonical {
    pub const ALL: [Canonical; 5] = [Canonical::UV, Canonical::UPlusV, Canonical::U, Canonical::V, Canonical::Zero];

    pub fn name(self) -> &'static str {
        match self {
            Canonical::UV => "UV",
            Canonical::UPlusV => "U_PLUS_V",
            Canonical::U => "U",
            Canonical::V => "V",
            Canonical::Zero => "ZERO",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn eval<K: ComplexScalar>(self, u: &K, v: &K) -> K {
        match self {
            Canonical::UV => u.clone() * v.clone(),
            Canonical::UPlusV => u.clone() + v.clone(),
            Canonical::U => u.clone(),
            Canonical::V => v.clone(),
            Canonical::Zero => K::zero(),
        }
    }
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn ratio_of<K: ComplexScalar>(num: &[K; 2], den: &[K; 2]) -> K {
    // divide by the larger component of `den` to keep float ratios stable
    let k = if den[0].abs_f64() >= den[1].abs_f64() && !den[0].is_zero() { 0 } else { 1 };
    num[k].clone() / den[k].clone()
}

/// Pair `((α, β), (γ, δ))` with `[[c11, c10], [c01, c00]] = (α, β)ᵀ (γ, δ)`,
/// i.e. `c11·uv + c10·u + c01·v + c00 = (αu + β)(γv + δ)`; `None` when the
/// determinant is not negligible.
pub fn rank1_factor<K: ComplexScalar>(m: &Mat2<K>, tol: f64) -> Option<([K; 2], [K; 2])> {
    if m.is_negligible(tol) {
        return None;
    }
    let scale = m.norm_max().max(1.0);
    if !m.det().is_negligible(tol * scale * scale) {
        return None;
    }
    let r0 = [m.a.clone(), m.b.clone()];
    let r1 = [m.c.clone(), m.d.clone()];
    let norm = |r: &[K; 2]| r[0].abs_f64().max(r[1].abs_f64());
    let pick_r0 = if K::EXACT {
        !(r0[0].is_zero() && r0[1].is_zero())
    } else {
        norm(&r0) >= norm(&r1)
    };
    let gd = if pick_r0 { r0.clone() } else { r1.clone() };
    let alpha = ratio_of(&r0, &gd);
    let beta = ratio_of(&r1, &gd);
    Some(([alpha, beta], gd))
}

/// Exact factorization `P = Q·R` with `Q ∈ C_{1,0}`, `R ∈ C_{0,1}`.
pub fn rank1_factor_poly(p: &CPoly) -> Result<Option<(CPoly, CPoly)>, BilinError> {
    if p.is_zero() {
        return Err(BilinError::ZeroPolynomial);
    }
    let m = coeff_matrix(p)?;
    Ok(rank1_factor(&m, 0.0).map(|([al, be], [ga, de])| {
        (
            CPoly::from_terms([(1, 0, al), (0, 0, be)]),
            CPoly::from_terms([(0, 1, ga), (0, 0, de)]),
        )
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JordanKind {
    Distinct,
    Scalar,
    Block,
}

impl JordanKind {
    pub fn name(self) -> &'static str {
        match self {
            JordanKind::Distinct => "distinct",
            JordanKind::Scalar => "scalar",
            JordanKind::Block => "block",
        }
    }
}

/// `J = X·N·X⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jordan<K> {
    pub x: Mat2<K>,
    pub j: Mat2<K>,
    pub kind: JordanKind,
    /// Float mode only: eigenvalue gap between `tol` and `10·tol`.
    pub ill_conditioned: bool,
}

/// Jordan form of a 2×2 matrix; `None` when the eigenvalues leave the field.
pub fn jordan_2x2<K: ComplexScalar>(n: &Mat2<K>, tol: f64) -> Option<Jordan<K>> {
    let two = K::from_i64(2);
    let tr = n.trace();
    let diff = n.a.clone() - n.d.clone();
    let disc = diff.clone() * diff + K::from_i64(4) * n.b.clone() * n.c.clone();
    let s = disc.sqrt_in_field()?;
    let gap = s.abs_f64();
    let (distinct, ill) = if K::EXACT {
        (!s.is_zero(), false)
    } else {
        (gap > 10.0 * tol, gap > tol && gap <= 10.0 * tol)
    };
    if distinct {
        let lam = (tr.clone() - s.clone()) / two.clone();
        let mu = (tr + s) / two;
        let x1 = left_eigenvector(n, &lam);
        let x2 = left_eigenvector(n, &mu);
        return Some(Jordan {
            x: Mat2::new(x1[0].clone(), x1[1].clone(), x2[0].clone(), x2[1].clone()),
            j: Mat2::diag(lam, mu),
            kind: JordanKind::Distinct,
            ill_conditioned: ill,
        });
    }
    let lam = tr / two;
    let shifted = n.sub(&Mat2::identity().scale(&lam));
    if shifted.is_negligible(tol) {
        return Some(Jordan {
            x: Mat2::identity(),
            j: Mat2::diag(lam.clone(), lam),
            kind: JordanKind::Scalar,
            ill_conditioned: ill,
        });
    }
    // x2 = x1·(N − λI) is a left eigenvector; x1 is any vector outside its span.
    let row = |x: [K; 2]| -> [K; 2] {
        [
            x[0].clone() * shifted.a.clone() + x[1].clone() * shifted.c.clone(),
            x[0].clone() * shifted.b.clone() + x[1].clone() * shifted.d.clone(),
        ]
    };
    let e1 = [K::one(), K::zero()];
    let e2 = [K::zero(), K::one()];
    let r1 = row(e1.clone());
    let use_e1 = r1[0].abs_f64().max(r1[1].abs_f64()) >= {
        let r2 = row(e2.clone());
        r2[0].abs_f64().max(r2[1].abs_f64())
    } && !(r1[0].is_zero() && r1[1].is_zero());
    let x1 = if use_e1 { e1 } else { e2 };
    let x2 = row(x1.clone());
    Some(Jordan {
        x: Mat2::new(x1[0].clone(), x1[1].clone(), x2[0].clone(), x2[1].clone()),
        j: Mat2::new(lam.clone(), K::one(), K::zero(), lam),
        kind: JordanKind::Block,
        ill_conditioned: ill,
    })
}

/// Row vector `x` with `x·N = λ·x`.
fn left_eigenvector<K: ComplexScalar>(n: &Mat2<K>, lam: &K) -> [K; 2] {
    let c1 = [n.c.clone(), lam.clone() - n.a.clone()];
    let c2 = [n.d.clone() - lam.clone(), -n.b.clone()];
    let norm = |r: &[K; 2]| r[0].abs_f64().max(r[1].abs_f64());
    if K::EXACT {
        if c1[0].is_zero() && c1[1].is_zero() {
            c2
        } else {
            c1
        }
    } else if norm(&c1) >= norm(&c2) {
        c1
    } else {
        c2
    }
}

/// Witnesses with `f_M(F(f_C(u), f_D(v))) = tag(u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalClass<K> {
    pub tag: Canonical,
    /// Proof branch: "1", "2.1", "2.2", "2.3", or "3/2.x".
    pub case: String,
    pub m: Moebius<K>,
    pub c: Moebius<K>,
    pub d: Moebius<K>,
    pub diagnostics: Vec<String>,
}

/// Eigenvalues of `AB⁻¹` are not in the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeedsFloat;

fn moebius<K: ComplexScalar>(m: Mat2<K>) -> Moebius<K> {
    Moebius::new(m).expect("witness matrices are invertible by construction")
}

/// Classification over `K` with the given tolerance (ignored when exact).
pub fn classify_with<K: ComplexScalar>(f: &BilinFrac<K>, tol: f64) -> Result<CanonicalClass<K>, NeedsFloat> {
    let scale_a = f.num.norm_max().max(1.0);
    let scale_b = f.den.norm_max().max(1.0);
    let a_sing = f.num.det().is_negligible(tol * scale_a * scale_a);
    let b_sing = f.den.det().is_negligible(tol * scale_b * scale_b);
    if a_sing && b_sing {
        return Ok(case1(f, tol));
    }
    if !b_sing {
        return case2(f, tol);
    }
    let mut inner = case2(&f.swapped(), tol)?;
    inner.m = moebius(inner.m.matrix().mul(&Mat2::swap()));
    inner.case = format!("3/{}", inner.case);
    Ok(inner)
}

fn case1<K: ComplexScalar>(f: &BilinFrac<K>, tol: f64) -> CanonicalClass<K> {
    let id = Moebius::identity;
    if f.num.is_negligible(tol) {
        return CanonicalClass {
            tag: Canonical::Zero,
            case: "1".into(),
            m: id(),
            c: id(),
            d: id(),
            diagnostics: Vec::new(),
        };
    }
    let (au, av) = rank1_factor(&f.num, tol).expect("singular nonzero numerator has rank 1");
    let (bu, bv) = rank1_factor(&f.den, tol).expect("singular nonzero denominator has rank 1");
    // F = f_Mu(u) · f_Mv(v)
    let mu = Mat2::new(au[0].clone(), au[1].clone(), bu[0].clone(), bu[1].clone());
    let mv = Mat2::new(av[0].clone(), av[1].clone(), bv[0].clone(), bv[1].clone());
    let nonconst = |m: &Mat2<K>| {
        let s = m.norm_max().max(1.0);
        !m.det().is_negligible(tol * s * s)
    };
    let (u_var, v_var) = (nonconst(&mu), nonconst(&mv));
    let kappa_u = || ratio_of(&au, &bu);
    let kappa_v = || ratio_of(&av, &bv);
    let inv = |m: &Mat2<K>| moebius(m.inverse().expect("nonconstant factor has invertible matrix"));
    let (tag, m, c, d) = match (u_var, v_var) {
        (true, true) => (Canonical::UV, id(), inv(&mu), inv(&mv)),
        (true, false) => (Canonical::U, moebius(Mat2::diag(K::one(), kappa_v())), inv(&mu), id()),
        (false, true) => (Canonical::V, moebius(Mat2::diag(K::one(), kappa_u())), id(), inv(&mv)),
        (false, false) => {
            let k = kappa_u() * kappa_v();
            (Canonical::Zero, moebius(Mat2::new(K::one(), -k, K::zero(), K::one())), id(), id())
        }
    };
    CanonicalClass {
        tag,
        case: "1".into(),
        m,
        c,
        d,
        diagnostics: Vec::new(),
    }
}

fn case2<K: ComplexScalar>(f: &BilinFrac<K>, tol: f64) -> Result<CanonicalClass<K>, NeedsFloat> {
    let binv = f.den.inverse().expect("case 2 has det B != 0");
    let jd = jordan_2x2(&f.num.mul(&binv), tol).ok_or(NeedsFloat)?;
    let mut diagnostics = Vec::new();
    if jd.ill_conditioned {
        diagnostics.push(format!(
            "ill-conditioned eigenvalues: gap within [{tol:e}, {:e}], treated as repeated",
            10.0 * tol
        ));
    }
    let xinv = jd.x.inverse().expect("Jordan basis is invertible");
    let d = moebius(binv.mul(&xinv));
    let lam = jd.j.a.clone();
    let (tag, case, m, c) = match jd.kind {
        JordanKind::Distinct => {
            let mu = jd.j.d.clone();
            (
                Canonical::UV,
                "2.1",
                Mat2::new(-K::one(), mu, K::one(), -lam),
                jd.x.transpose(),
            )
        }
        JordanKind::Scalar => (
            Canonical::Zero,
            "2.2",
            Mat2::new(K::one(), -lam, K::zero(), K::one()),
            jd.x.transpose(),
        ),
        JordanKind::Block => (
            Canonical::UPlusV,
            "2.3",
            Mat2::new(K::zero(), K::one(), K::one(), -lam),
            jd.x.transpose().mul(&Mat2::swap()),
        ),
    };
    Ok(CanonicalClass {
        tag,
        case: case.into(),
        m: moebius(m),
        c: moebius(c),
        d,
        diagnostics,
    })
}

/// Outcome of [`classify`]: exact when the eigenvalues are Gaussian rational.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    Exact(CanonicalClass<GaussianRational>),
    Float(CanonicalClass<Complex64>),
}

impl Classification {
    pub fn tag(&self) -> Canonical {
        match self {
            Classification::Exact(c) => c.tag,
            Classification::Float(c) => c.tag,
        }
    }

    pub fn case(&self) -> &str {
        match self {
            Classification::Exact(c) => &c.case,
            Classification::Float(c) => &c.case,
        }
    }

    pub fn diagnostics(&self) -> &[String] {
        match self {
            Classification::Exact(c) => &c.diagnostics,
            Classification::Float(c) => &c.diagnostics,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Classification::Exact(_))
    }
}

pub fn classify_exact(f: &BilinFrac<GaussianRational>) -> Result<CanonicalClass<GaussianRational>, NeedsFloat> {
    classify_with(f, 0.0)
}

/// Exact classification, falling back to complex floats with tolerance
/// [`FALLBACK_TOL`] when the eigenvalues are irrational.
pub fn classify(f: &BilinFrac<GaussianRational>) -> Classification {
    match classify_exact(f) {
        Ok(c) => Classification::Exact(c),
        Err(NeedsFloat) => {
            let mut c = classify_with(&f.to_c64(), FALLBACK_TOL).expect("complex floats contain every square root");
            c.diagnostics.insert(
                0,
                format!("eigenvalues are not Gaussian rational; float fallback with tol {FALLBACK_TOL:e}"),
            );
            Classification::Float(c)
        }
    }
}

/// Largest witness residual over `samples` pole-free rational pairs, and the
/// number of pairs used. Float residuals are relative to `max(1, |canonical|)`.
pub fn verify_witness<K: ComplexScalar>(
    f: &BilinFrac<K>,
    class: &CanonicalClass<K>,
    samples: usize,
    rng: &mut InstanceRng,
) -> (f64, usize) {
    let near_pole = |den: &K| {
        if K::EXACT {
            den.is_zero()
        } else {
            den.abs_f64() < 1e-6
        }
    };
    let apply = |m: &Moebius<K>, z: &K| -> Option<K> {
        let mm = m.matrix();
        let den = mm.c.clone() * z.clone() + mm.d.clone();
        (!near_pole(&den)).then(|| (mm.a.clone() * z.clone() + mm.b.clone()) / den)
    };
    let mut worst = 0.0f64;
    let mut used = 0;
    for _ in 0..samples * 20 {
        if used == samples {
            break;
        }
        let u = K::from_rational(&ratio(rng.int_in(-12, 12), rng.int_in(1, 5)));
        let v = K::from_rational(&ratio(rng.int_in(-12, 12), rng.int_in(1, 5)));
        let (Some(cu), Some(dv)) = (apply(&class.c, &u), apply(&class.d, &v)) else { continue };
        let (n, d) = f.eval_parts(&cu, &dv);
        if near_pole(&d) {
            continue;
        }
        let Some(lhs) = apply(&class.m, &(n / d)) else { continue };
        let canon = class.tag.eval(&u, &v);
        let diff = lhs - canon.clone();
        let r = if K::EXACT {
            if diff.is_zero() {
                0.0
            } else {
                diff.abs_f64().max(f64::MIN_POSITIVE)
            }
        } else {
            diff.abs_f64() / canon.abs_f64().max(1.0)
        };
        worst = worst.max(r);
        used += 1;
    }
    (worst, used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gauss_int;
    use num_traits::Zero;

    fn g(re: i64, im: i64) -> GaussianRational {
        gauss_int(re, im)
    }

    fn real(m: [i64; 4]) -> Mat2<GaussianRational> {
        Mat2::new(g(m[0], 0), g(m[1], 0), g(m[2], 0), g(m[3], 0))
    }

    fn check(f: &BilinFrac<GaussianRational>, tag: Canonical, case: &str) {
        let c = classify_exact(f).unwrap();
        assert_eq!((c.tag, c.case.as_str()), (tag, case));
        let (res, used) = verify_witness(f, &c, 100, &mut InstanceRng::new(1));
        assert_eq!((res, used), (0.0, 100));
    }

    #[test]
    fn classify_examples() {
        check(&BilinFrac::new(real([2, 0, 0, 3]), Mat2::identity()).unwrap(), Canonical::UV, "2.1");
        check(&BilinFrac::new(Mat2::identity(), Mat2::identity()).unwrap(), Canonical::Zero, "2.2");
        check(&BilinFrac::new(real([1, 1, 0, 1]), Mat2::identity()).unwrap(), Canonical::UPlusV, "2.3");
    }

    #[test]
    fn case1_and_case3_examples() {
        // (u+1)(v+2) / ((u-1)(2v+1))
        let f = BilinFrac::new(real([1, 2, 1, 2]), real([2, 1, -2, -1])).unwrap();
        check(&f, Canonical::UV, "1");
        // (u+1)(v+2) / (u-1)(v+2) depends on u only
        let f = BilinFrac::new(real([1, 2, 1, 2]), real([1, 2, -1, -2])).unwrap();
        check(&f, Canonical::U, "1");
        let f = BilinFrac::new(real([1, 1, 2, 2]), real([1, -1, 2, -2])).unwrap();
        check(&f, Canonical::V, "1");
        let f = BilinFrac::new(real([2, 4, 2, 4]), real([1, 2, 1, 2])).unwrap();
        check(&f, Canonical::Zero, "1");
        let f = BilinFrac::new(Mat2::zero(), real([1, 2, 1, 2])).unwrap();
        check(&f, Canonical::Zero, "1");
        // det A != 0, det B = 0: 1/F is polynomial uv
        let f = BilinFrac::new(Mat2::swap(), real([1, 1, 1, 1])).unwrap();
        let c = classify_exact(&f).unwrap();
        assert!(c.case.starts_with("3/"));
        assert_eq!(verify_witness(&f, &c, 50, &mut InstanceRng::new(2)), (0.0, 50));
    }

    #[test]
    fn float_fallback_on_irrational_eigenvalues() {
        // AB⁻¹ = [[0, 1], [2, 0]] has eigenvalues ±√2
        let f = BilinFrac::new(real([0, 1, 2, 0]), Mat2::identity()).unwrap();
        assert_eq!(classify_exact(&f), Err(NeedsFloat));
        let Classification::Float(c) = classify(&f) else { panic!("expected float fallback") };
        assert_eq!(c.tag, Canonical::UV);
        let (res, used) = verify_witness(&f.to_c64(), &c, 100, &mut InstanceRng::new(3));
        assert!(res <= 1e-9 && used == 100, "residual {res}");
    }

    #[test]
    fn jordan_examples() {
        let d = jordan_2x2(&real([2, 0, 0, 3]), 0.0).unwrap();
        assert_eq!(d.kind, JordanKind::Distinct);
        assert_eq!(d.j, real([2, 0, 0, 3]));
        let s = jordan_2x2(&Mat2::<GaussianRational>::identity(), 0.0).unwrap();
        assert_eq!((s.kind, s.j), (JordanKind::Scalar, Mat2::identity()));
        let b = jordan_2x2(&real([1, 1, 0, 1]), 0.0).unwrap();
        assert_eq!((b.kind, b.j.clone()), (JordanKind::Block, real([1, 1, 0, 1])));
        for n in [real([2, 0, 0, 3]), real([1, 1, 0, 1]), real([4, -1, 1, 2]), real([0, 1, -1, 0])] {
            let j = jordan_2x2(&n, 0.0).unwrap();
            assert_eq!(j.x.mul(&n), j.j.mul(&j.x));
            assert!(!j.x.det().is_zero());
        }
    }

    #[test]
    fn float_jordan_tie_break() {
        let n = Mat2::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0 + 5e-9, 0.0));
        let j = jordan_2x2(&n, 1e-9).unwrap();
        assert!(j.ill_conditioned);
        assert_ne!(j.kind, JordanKind::Distinct);
        let j = jordan_2x2(&n, 1e-12).unwrap();
        assert_eq!(j.kind, JordanKind::Distinct);
    }

    #[test]
    fn rank1_examples() {
        let (u, v) = (CPoly::u(), CPoly::v());
        let one = CPoly::one();
        let p = &(&(&u * &v) + &u) + &(&v + &one);
        let (q, r) = rank1_factor_poly(&p).unwrap().unwrap();
        assert_eq!((q.clone(), r.clone()), (&u + &one, &v + &one));
        assert_eq!(&q * &r, p);
        assert_eq!(rank1_factor_poly(&(&(&u * &v) + &one)).unwrap(), None);
        assert_eq!(rank1_factor_poly(&(&u + &one)).unwrap(), Some((&u + &one, one.clone())));
        assert_eq!(rank1_factor_poly(&CPoly::zero()), Err(BilinError::ZeroPolynomial));
    }
}
