//! Acceptance criteria 1 to 9. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails. Oracles are computed here, apart
//! from the library under test.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::{One, Zero};

use isosurf::bilinfrac::{
    classify, rank1_factor_poly, BilinFrac, Canonical, CanonicalClass, Classification, Mat2, Moebius,
};
use isosurf::polyring::{gcd3, Axis, CPoly, RPoly};
use isosurf::projgeom::{iso_proj, iso_unproj, AffinePoint3};
use isosurf::rng::InstanceRng;
use isosurf::scalar::{gauss_int, rat, ratio, rational_to_f64, ComplexScalar, GaussianRational, Rational};
use isosurf::surface::{
    classify_isocurve, compose_pythagorean, compose_tparam, decompose_tparam, isocurve_sample, param_grid, CurveKind,
    ParabolicSurface, SurfaceError,
};
use isosurf::topview::{
    dual_conic_param1, envelope_cyclic, family_product, image_of_real_line, tangency_points, CircleFamily, Cyclic,
    DualConic, GeneralizedCircle, HermForm, TopviewError, Vec3,
};

/// Float tolerance for witness residuals and tangency membership.
const TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

// ---- shared oracles ----

fn p11(rng: &mut InstanceRng) -> RPoly {
    rng.poly11(5)
}

/// `X1² + X2² + X4² − X5²`, computed from the parts directly.
fn cylinder_form(x: &[RPoly; 5]) -> RPoly {
    &(&(&x[0].square() + &x[1].square()) + &x[3].square()) - &x[4].square()
}

fn random_parabolic(rng: &mut InstanceRng) -> ParabolicSurface {
    loop {
        let (p, q, r, z) = (rng.poly11(5), rng.poly11(5), rng.poly11(5), rng.poly22(5));
        if let Ok(s) = ParabolicSurface::new(p, q, r, z) {
            return s;
        }
    }
}

fn moebius_apply<K: ComplexScalar>(m: &Mat2<K>, z: &K, pole: impl Fn(&K) -> bool) -> Option<K> {
    let den = m.c.clone() * z.clone() + m.d.clone();
    (!pole(&den)).then(|| (m.a.clone() * z.clone() + m.b.clone()) / den)
}

/// `[u 1]·X·[v 1]ᵀ` for the layout `[[x11, x10], [x01, x00]]`.
fn bilinear<K: ComplexScalar>(x: &Mat2<K>, u: &K, v: &K) -> K {
    x.a.clone() * u.clone() * v.clone() + x.b.clone() * u.clone() + x.c.clone() * v.clone() + x.d.clone()
}

fn canonical_value<K: ComplexScalar>(tag: Canonical, u: &K, v: &K) -> K {
    match tag.name() {
        "UV" => u.clone() * v.clone(),
        "U_PLUS_V" => u.clone() + v.clone(),
        "U" => u.clone(),
        "V" => v.clone(),
        "ZERO" => K::zero(),
        other => panic!("unexpected tag {other}"),
    }
}

/// Worst witness residual over `n` pole-free sample pairs, or `None` when
/// too few pairs avoid the poles.
fn witness_residual<K: ComplexScalar>(
    f: &BilinFrac<K>,
    c: &CanonicalClass<K>,
    n: usize,
    rng: &mut InstanceRng,
) -> Option<f64> {
    let pole = |d: &K| if K::EXACT { d.is_zero() } else { d.abs_f64() < 1e-6 };
    let (mut worst, mut used) = (0.0f64, 0);
    for _ in 0..50 * n {
        if used == n {
            break;
        }
        let u = K::from_rational(&ratio(rng.int_in(-30, 30), rng.int_in(1, 7)));
        let v = K::from_rational(&ratio(rng.int_in(-30, 30), rng.int_in(1, 7)));
        let (Some(cu), Some(dv)) = (moebius_apply(c.c.matrix(), &u, pole), moebius_apply(c.d.matrix(), &v, pole))
        else {
            continue;
        };
        let den = bilinear(&f.den, &cu, &dv);
        if pole(&den) {
            continue;
        }
        let fv = bilinear(&f.num, &cu, &dv) / den;
        let Some(lhs) = moebius_apply(c.m.matrix(), &fv, pole) else { continue };
        let rhs = canonical_value(c.tag, &u, &v);
        let r = if K::EXACT {
            if lhs == rhs {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (lhs - rhs.clone()).abs_f64() / rhs.abs_f64().max(1.0)
        };
        worst = worst.max(r);
        used += 1;
    }
    (used == n).then_some(worst)
}

fn gmat(rng: &mut InstanceRng, h: i64) -> Mat2<GaussianRational> {
    Mat2::new(rng.gaussian_fraction(h), rng.gaussian_fraction(h), rng.gaussian_fraction(h), rng.gaussian_fraction(h))
}

fn gmul(x: &Mat2<GaussianRational>, y: &Mat2<GaussianRational>) -> Mat2<GaussianRational> {
    Mat2::new(
        &x.a * &y.a + &x.b * &y.c,
        &x.a * &y.b + &x.b * &y.d,
        &x.c * &y.a + &x.d * &y.c,
        &x.c * &y.b + &x.d * &y.d,
    )
}

fn gdet(x: &Mat2<GaussianRational>) -> GaussianRational {
    &x.a * &x.d - &x.b * &x.c
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn quad(c: &[[Rational; 3]; 3], l: &Vec3) -> Rational {
    let mut s = Rational::zero();
    for i in 0..3 {
        for j in 0..3 {
            s += &l[i] * &c[i][j] * &l[j];
        }
    }
    s
}

/// Homogeneous top-view point `(P : Q : R)` at `(u, v)`.
fn top_point(s: &ParabolicSurface, u: &Rational, v: &Rational) -> Vec3 {
    [s.p.eval(u, v), s.q.eval(u, v), s.r.eval(u, v)]
}

/// Top view of the isocurve `axis = t`: the line through two of its points.
fn top_line(s: &ParabolicSurface, axis: Axis, t: &Rational) -> Vec3 {
    let at = |k: i64| match axis {
        Axis::U => top_point(s, t, &rat(k)),
        Axis::V => top_point(s, &rat(k), t),
    };
    cross(&at(0), &at(1))
}

fn eval_xy(p: &RPoly, x: Complex64, y: Complex64) -> Complex64 {
    p.terms().map(|(i, j, c)| rational_to_f64(c) * x.powu(i) * y.powu(j)).sum()
}

/// `|c(x, y)|` over `Σ |c_ij|·max(1,|x|)^i·max(1,|y|)^j`.
fn cyclic_residual(c: &Cyclic, x: Complex64, y: Complex64) -> f64 {
    let (ax, ay) = (x.norm().max(1.0), y.norm().max(1.0));
    let scale: f64 = c.poly().terms().map(|(i, j, k)| rational_to_f64(k).abs() * ax.powi(i as i32) * ay.powi(j as i32)).sum();
    eval_xy(c.poly(), x, y).norm() / scale
}

fn form_residual(h: &HermForm, x: Complex64, y: Complex64) -> f64 {
    let p = h.to_xy();
    let scale: f64 = p.terms().map(|(_, _, k)| rational_to_f64(k).abs()).sum::<f64>().max(1.0);
    eval_xy(&p, x, y).norm() / (scale * (1.0 + x.norm_sqr() + y.norm_sqr()))
}

// ---- criteria ----

fn criterion1() -> Outcome {
    let mut rng = InstanceRng::new(101);
    let (mut tparam, mut pyth, mut bad) = (0, 0, 0);
    while tparam < 1000 {
        let (p, q, r) = (p11(&mut rng), p11(&mut rng), p11(&mut rng));
        let t = RPoly::constant(rat(rng.int_in(1, 5) * if rng.int_in(0, 1) == 0 { 1 } else { -1 }));
        let Ok(tup) = compose_tparam(&p, &q, &r, &t) else { continue };
        tparam += 1;
        if !cylinder_form(tup.parts()).is_zero() {
            bad += 1;
        }
    }
    while pyth < 1000 {
        let ps: Vec<RPoly> = (0..4).map(|_| p11(&mut rng)).collect();
        let Ok(tup) = compose_pythagorean(&ps[0], &ps[1], &ps[2], &ps[3], &RPoly::one()) else { continue };
        pyth += 1;
        if !cylinder_form(tup.parts()).is_zero() {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{tparam} tparam + {pyth} pythagorean tuples, {bad} with nonzero X1²+X2²+X4²−X5²"))
}

fn criterion2() -> Outcome {
    let mut rng = InstanceRng::new(202);
    let (mut n, mut fails, mut skipped) = (0, Vec::new(), 0);
    while n < 500 {
        let (p, q, r) = (p11(&mut rng), p11(&mut rng), p11(&mut rng));
        let t = RPoly::constant(rat(rng.int_in(1, 4)));
        let Ok(tup) = compose_tparam(&p, &q, &r, &t) else { continue };
        let x = tup.parts();
        let g = gcd3(&x[0], &x[1], &(&x[4] - &x[3])).expect("nonzero inputs");
        if g.deg(Axis::U) < 1 || g.deg(Axis::V) < 1 {
            skipped += 1;
            continue;
        }
        n += 1;
        match decompose_tparam(&tup).and_then(|w| w.compose()) {
            Ok(back) if back.parts() == tup.parts() => {}
            Ok(_) => fails.push(format!("#{n}: recomposition differs")),
            Err(e) => fails.push(format!("#{n}: {e}")),
        }
    }
    outcome(fails.is_empty(), format!("{n} tuples with gcd3 of bidegree ≥ (1,1) ({skipped} draws below it), {} failures {:?}", fails.len(), fails.first()))
}

fn criterion3() -> Outcome {
    let mut rng = InstanceRng::new(303);
    let mut bad = 0;
    for _ in 0..1000 {
        let a = AffinePoint3::new(rng.fraction(50), rng.fraction(50), rng.fraction(50));
        let p = iso_unproj(&a);
        // π⁻¹ written out: (2x : 2y : 2z : x²+y²−1 : x²+y²+1)
        let s = &a.x * &a.x + &a.y * &a.y;
        let expected = [&a.x * rat(2), &a.y * rat(2), &a.z * rat(2), &s - Rational::one(), &s + Rational::one()];
        if p.coords() != &expected || iso_proj(&p).as_ref() != Ok(&a) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("1000 rational points, {bad} mismatches"))
}

fn criterion4() -> Outcome {
    let mut rng = InstanceRng::new(404);
    let mut tags = std::collections::BTreeMap::new();
    let (mut n, mut exact, mut fails) = (0, 0, Vec::new());
    let mut worst_float = 0.0f64;
    while n < 1000 {
        let (a, b) = (gmat(&mut rng, 5), gmat(&mut rng, 5));
        let Ok(f) = BilinFrac::new(a, b) else { continue };
        n += 1;
        let class = classify(&f);
        *tags.entry(class.tag().name()).or_insert(0) += 1;
        let res = match &class {
            Classification::Exact(c) => {
                exact += 1;
                witness_residual(&f, c, 100, &mut rng)
            }
            Classification::Float(c) => {
                let r = witness_residual(&f.to_c64(), c, 100, &mut rng);
                worst_float = worst_float.max(r.unwrap_or(0.0));
                r
            }
        };
        let limit = if class.is_exact() { 0.0 } else { TOL };
        match res {
            Some(r) if r <= limit => {}
            Some(r) => fails.push(format!("#{n} {} case {}: residual {r:e}", class.tag(), class.case())),
            None => fails.push(format!("#{n}: fewer than 100 pole-free samples")),
        }
    }
    // equivalence triples: h = f_M ∘ F ∘ (f_C, f_D), built from matrices here
    let (mut triples, mut mismatch) = (0, 0);
    while triples < 500 {
        let (a, b) = (gmat(&mut rng, 5), gmat(&mut rng, 5));
        let (m, c, d) = (gmat(&mut rng, 3), gmat(&mut rng, 3), gmat(&mut rng, 3));
        if [&m, &c, &d].iter().any(|x| gdet(x).is_zero()) {
            continue;
        }
        let Ok(f) = BilinFrac::new(a.clone(), b.clone()) else { continue };
        let ct = Mat2::new(c.a.clone(), c.c.clone(), c.b.clone(), c.d.clone());
        let (a1, b1) = (gmul(&gmul(&ct, &a), &d), gmul(&gmul(&ct, &b), &d));
        let mix = |x: &GaussianRational, y: &GaussianRational| {
            Mat2::new(
                x * &a1.a + y * &b1.a,
                x * &a1.b + y * &b1.b,
                x * &a1.c + y * &b1.c,
                x * &a1.d + y * &b1.d,
            )
        };
        let Ok(h) = BilinFrac::new(mix(&m.a, &m.b), mix(&m.c, &m.d)) else { continue };
        triples += 1;
        if classify(&f).tag() != classify(&h).tag() {
            mismatch += 1;
        }
    }
    if mismatch > 0 {
        fails.push(format!("{mismatch} equivalence triples change the tag"));
    }
    outcome(
        fails.is_empty(),
        format!(
            "{n} maps {tags:?}, {exact} exact, worst float residual {worst_float:e} (tol {TOL:e}); {triples} triples, {mismatch} tag changes {:?}",
            fails.first()
        ),
    )
}

fn criterion5() -> Outcome {
    let mut rng = InstanceRng::new(505);
    let (mut smooth, mut pencils, mut fails) = (0, 0, Vec::new());
    for k in 0..200 {
        let s = random_parabolic(&mut rng);
        match dual_conic_param1(&s) {
            Ok(fit) => match &fit.outcome {
                DualConic::SmoothConic(c) => {
                    smooth += 1;
                    for j in 0..6 {
                        let t = ratio(13 * j - 29, 3 + j);
                        for axis in [Axis::U, Axis::V] {
                            let l = top_line(&s, axis, &t);
                            if l.iter().all(Zero::is_zero) {
                                continue;
                            }
                            if !quad(c, &l).is_zero() {
                                fails.push(format!("instance {k}: line {axis} = {t} off the conic"));
                            }
                        }
                    }
                }
                DualConic::TwoPencils { .. } => pencils += 1,
                other => fails.push(format!("instance {k}: {}", other.name())),
            },
            Err(e) => fails.push(format!("instance {k}: {e}")),
        }
    }
    // worked instance P = u, Q = v, R = 1 + uv against the literal l₃² + l₁l₂ = 0
    let worked = ParabolicSurface::new(RPoly::u(), RPoly::v(), &(&RPoly::u() * &RPoly::v()) + &RPoly::one(), RPoly::zero())
        .expect("valid surface");
    let half = ratio(1, 2);
    let literal = [
        [Rational::zero(), half.clone(), Rational::zero()],
        [half, Rational::zero(), Rational::zero()],
        [Rational::zero(), Rational::zero(), Rational::one()],
    ];
    let worked_text = match dual_conic_param1(&worked).map(|f| f.outcome) {
        Ok(DualConic::SmoothConic(c)) => {
            let lead = c[2][2].clone();
            let prop = !lead.is_zero() && (0..3).all(|i| (0..3).all(|j| &c[i][j] == &(&literal[i][j] * &lead)));
            if !prop {
                fails.push("worked C* is not proportional to l₃² + l₁l₂".to_string());
            }
            format!("worked C* rows {}", rows(&c))
        }
        other => {
            fails.push(format!("worked instance: {other:?}"));
            "worked instance not smooth".to_string()
        }
    };
    outcome(
        fails.is_empty(),
        format!("200 surfaces: {smooth} smooth, {pencils} two_pencils; {worked_text}; {} failures {:?}", fails.len(), fails.last()),
    )
}

fn rows(c: &[[Rational; 3]; 3]) -> String {
    c.iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn worked_family() -> CircleFamily {
    // w = 2 + iv sweeps Re w = 2
    let data = Moebius::new(Mat2::new(gauss_int(0, 1), gauss_int(2, 0), gauss_int(0, 0), gauss_int(1, 0))).unwrap();
    family_product(&GeneralizedCircle::unit_circle(), &data)
}

fn criterion6() -> Outcome {
    let fam = worked_family();
    // A = −1, B = 0, C = zz̄ − 4
    let a = HermForm::new(rat(0), gauss_int(0, 0), rat(-1));
    let b = HermForm::zero();
    let c = HermForm::new(rat(1), gauss_int(0, 0), rat(-4));
    let abc = fam.a == a && fam.b == b && fam.c == c;
    let circle = Cyclic::new(&(&RPoly::u().square() + &RPoly::v().square()) - &RPoly::constant(rat(4))).unwrap();
    let env = envelope_cyclic(&fam);
    let env_ok = env.as_ref() == Ok(&circle);
    outcome(
        abc && env_ok,
        format!(
            "A = {}, B = {}, C = {}; envelope {}",
            fam.a.to_xy().display_with("x", "y"),
            fam.b.to_xy().display_with("x", "y"),
            fam.c.to_xy().display_with("x", "y"),
            env.map(|e| e.to_string()).unwrap_or_else(|e| e.tag().to_string())
        ),
    )
}

fn random_moebius(rng: &mut InstanceRng) -> Moebius<GaussianRational> {
    loop {
        let m = Mat2::new(rng.gaussian(3), rng.gaussian(3), rng.gaussian(3), rng.gaussian(3));
        if let Ok(f) = Moebius::new(m) {
            return f;
        }
    }
}

/// Tangency points of `fam` checked on their own member and derivative,
/// then against `other`; returns (points, worst residual on `other`).
fn cross_check(fam: &CircleFamily, other: &Cyclic, own_fail: &mut usize) -> (usize, f64) {
    let (mut n, mut worst) = (0, 0.0f64);
    for k in 0..8 {
        let v = param_grid(k);
        for p in tangency_points(fam, &v) {
            if form_residual(&fam.member(&v), p.x, p.y) > TOL || form_residual(&fam.derivative_member(&v), p.x, p.y) > TOL {
                *own_fail += 1;
            }
            worst = worst.max(cyclic_residual(other, p.x, p.y));
            n += 1;
        }
    }
    (n, worst)
}

fn criterion7() -> Outcome {
    let mut rng = InstanceRng::new(707);
    let (mut pairs, mut skipped, mut points, mut own_fail) = (0, 0, 0, 0);
    let mut worst = 0.0f64;
    while pairs < 50 {
        let (d1, d2) = (random_moebius(&mut rng), random_moebius(&mut rng));
        let (w1, w2) = (image_of_real_line(&d1), image_of_real_line(&d2));
        // Π₁ = {w·ω₁ : w ∈ ω₂}, Π₂ = {w·ω₂ : w ∈ ω₁}
        let (f1, f2) = (family_product(&w1, &d2), family_product(&w2, &d1));
        if f1.discriminant().is_zero() || f2.discriminant().is_zero() {
            skipped += 1;
            continue;
        }
        let (Ok(e1), Ok(e2)) = (envelope_cyclic(&f1), envelope_cyclic(&f2)) else {
            skipped += 1;
            continue;
        };
        pairs += 1;
        let (n12, r12) = cross_check(&f1, &e2, &mut own_fail);
        let (n21, r21) = cross_check(&f2, &e1, &mut own_fail);
        points += n12 + n21;
        worst = worst.max(r12).max(r21);
    }
    // pencil inputs: ω₂ is the unit circle itself, so every member is the unit circle
    let unit = GeneralizedCircle::unit_circle();
    let onto_unit = unit.parametrization().expect("real circle");
    let pencil = envelope_cyclic(&family_product(&unit, &onto_unit));
    let cayley = Moebius::new(Mat2::new(gauss_int(1, 0), gauss_int(0, -1), gauss_int(1, 0), gauss_int(0, 1))).unwrap();
    let pencil2 = envelope_cyclic(&family_product(&unit, &cayley));
    let pencil_ok = pencil == Err(TopviewError::NoEnvelope) && pencil2 == Err(TopviewError::NoEnvelope);
    outcome(
        worst <= TOL && own_fail == 0 && points > 0 && pencil_ok,
        format!(
            "{pairs} pairs ({skipped} draws without two envelopes), {points} tangency points, worst residual {worst:e} (tol {TOL:e}), {own_fail} off their own member; pencil inputs {:?} / {:?}",
            pencil.err().map(|e| e.tag()),
            pencil2.err().map(|e| e.tag())
        ),
    )
}

fn criterion8() -> Outcome {
    let mut rng = InstanceRng::new(808);
    let (mut curves, mut degenerate, mut fails) = (0, 0, Vec::new());
    for k in 0..100 {
        let s = random_parabolic(&mut rng);
        for axis in [Axis::U, Axis::V] {
            for j in 0..5 {
                let t = param_grid(j);
                let pts = match isocurve_sample(&s, axis, &t, 9) {
                    Ok(p) => p,
                    Err(SurfaceError::TooFewSamples { .. }) => continue,
                    Err(e) => {
                        fails.push(format!("surface {k}: {e}"));
                        continue;
                    }
                };
                curves += 1;
                // top views of an isocurve are collinear
                let h = |p: &AffinePoint3| [p.x.clone(), p.y.clone(), Rational::one()];
                let l = cross(&h(&pts[0]), &h(&pts[1]));
                let collinear = l.iter().all(Zero::is_zero) || pts.iter().all(|p| {
                    let q = h(p);
                    (&l[0] * &q[0] + &l[1] * &q[1] + &l[2] * &q[2]).is_zero()
                });
                match classify_isocurve(&pts) {
                    Ok(CurveKind::VerticalParabola) if collinear => {}
                    Ok(kind) if kind.is_degenerate() => degenerate += 1,
                    Ok(kind) => fails.push(format!("surface {k}, {axis} = {t}: {} (collinear {collinear})", kind.name())),
                    Err(e) => fails.push(format!("surface {k}: {e}")),
                }
            }
        }
    }
    outcome(fails.is_empty(), format!("100 surfaces, {curves} isocurves, {degenerate} flagged degenerate, {} failures {:?}", fails.len(), fails.first()))
}

fn criterion9() -> Outcome {
    let vals = [gauss_int(0, 0), gauss_int(1, 0), gauss_int(0, 1)];
    let (mut agree, mut zero_checked, mut fails) = (0, false, Vec::new());
    for k in 0..81usize {
        let d = |j: u32| vals[(k / 3usize.pow(j)) % 3].clone();
        let (c11, c10, c01, c00) = (d(3), d(2), d(1), d(0));
        let p = CPoly::from_terms([(1, 1, c11.clone()), (1, 0, c10.clone()), (0, 1, c01.clone()), (0, 0, c00.clone())]);
        let det_zero = (&c00 * &c11 - &c10 * &c01).is_zero();
        match rank1_factor_poly(&p) {
            Ok(Some((q, r))) => {
                // expand the product term by term
                let mut prod = CPoly::zero();
                for (a, _, x) in q.terms() {
                    for (_, b, y) in r.terms() {
                        prod = &prod + &CPoly::monomial(a, b, x * y);
                    }
                }
                if det_zero && prod == p && q.deg(Axis::V) == 0 && r.deg(Axis::U) == 0 {
                    agree += 1;
                } else {
                    fails.push(format!("{p}: factors ({q})({r}) with det zero {det_zero}"));
                }
            }
            Ok(None) if !det_zero => agree += 1,
            Ok(None) => fails.push(format!("{p}: det vanishes, no factors")),
            // P = 0 is outside the operation's precondition
            Err(_) if p.is_zero() => zero_checked = true,
            Err(e) => fails.push(format!("{p}: {e}")),
        }
    }
    outcome(
        fails.is_empty() && agree == 80 && zero_checked,
        format!("{agree}/80 nonzero polynomials agree with the determinant test, P = 0 rejected {zero_checked}; {:?}", fails.first()),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 9] = [
        (1, "cylinder identity", Duration::from_secs(10), criterion1),
        (2, "tparam decomposition round trip", Duration::from_secs(10), criterion2),
        (3, "projection inverse", Duration::from_secs(1), criterion3),
        (4, "bilinear-fractional classifier", Duration::from_secs(60), criterion4),
        (5, "dual conic of parabolic top views", Duration::from_secs(10), criterion5),
        (6, "envelope worked example", Duration::from_secs(1), criterion6),
        (7, "envelope coincidence", Duration::from_secs(30), criterion7),
        (8, "isocurves are vertical parabolas", Duration::from_secs(10), criterion8),
        (9, "rank-one factor criterion", Duration::from_secs(1), criterion9),
    ];
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = o.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {n} {name}: {} [{:.2}s / {}s budget{}]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", over budget" }
        );
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
