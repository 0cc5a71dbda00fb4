//! Seeded invariant suites with greedy counterexample shrinking.
//!
//! Every property draws an integer vector from the instance generator and
//! decodes it into a mathematical instance. A failing vector is shrunk one
//! coordinate at a time (towards 0, by halving, by a unit step) while the
//! failure persists.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::bilinfrac::{classify, rank1_factor_poly, verify_witness, BilinFrac, Canonical, Classification, Mat2, Moebius};
use crate::polyring::{gcd, Axis, CPoly, RPoly};
use crate::projgeom::{iso_proj, iso_unproj, AffinePoint3};
use crate::rng::InstanceRng;
use crate::scalar::{gauss_int, rat, ratio, GaussianRational};
use crate::surface::{
    classify_isocurve, compose_pythagorean, compose_tparam, decompose_tparam, isocurve_sample, CurveKind,
    ParabolicSurface, SurfaceError,
};
use crate::topview::{
    conic_eval, dual_conic_param1, envelope_cyclic, family_product, image_of_real_line, line_families,
    tangency_samples, DualConic, GeneralizedCircle, TopviewError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Smoke,
    Full,
}

impl Scale {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "smoke" => Some(Scale::Smoke),
            "full" => Some(Scale::Full),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scale::Smoke => "smoke",
            Scale::Full => "full",
        }
    }

    fn cases(self, full: usize) -> usize {
        match self {
            Scale::Smoke => full.div_ceil(10),
            Scale::Full => full,
        }
    }
}

/// `Ok(true)` pass, `Ok(false)` precondition unmet (not counted),
/// `Err` failure.
type Check = fn(&[i64]) -> Result<bool, String>;
type Gen = fn(&mut InstanceRng, usize) -> Vec<i64>;

struct Property {
    name: &'static str,
    full: usize,
    gen: Gen,
    check: Check,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub skipped: usize,
    pub failure: Option<(Vec<i64>, String)>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"name": self.name, "cases": self.cases, "skipped": self.skipped, "passed": self.passed()});
        if let Some((input, msg)) = &self.failure {
            v["counterexample"] = json!({"input": input, "message": msg});
        }
        v
    }
}

fn shrink(check: Check, mut x: Vec<i64>, mut msg: String) -> (Vec<i64>, String) {
    let mut budget = 400;
    'outer: while budget > 0 {
        for i in 0..x.len() {
            let xi = x[i];
            for cand in [0, xi / 2, xi - xi.signum()] {
                if cand == xi {
                    continue;
                }
                budget -= 1;
                let mut y = x.clone();
                y[i] = cand;
                if let Err(m) = check(&y) {
                    x = y;
                    msg = m;
                    continue 'outer;
                }
            }
        }
        break;
    }
    (x, msg)
}

fn run_property(p: &Property, scale: Scale, seed: u64) -> PropertyOutcome {
    let target = scale.cases(p.full);
    let mut rng = InstanceRng::new(seed ^ fnv(p.name));
    let (mut cases, mut skipped) = (0, 0);
    let mut k = 0;
    while cases < target && k < 20 * target {
        let x = (p.gen)(&mut rng, k);
        k += 1;
        match (p.check)(&x) {
            Ok(true) => cases += 1,
            Ok(false) => skipped += 1,
            Err(msg) => {
                let failure = Some(shrink(p.check, x, msg));
                return PropertyOutcome { name: p.name, cases, skipped, failure };
            }
        }
    }
    let failure = (cases < target).then(|| (Vec::new(), format!("only {cases} of {target} instances met the precondition")));
    PropertyOutcome { name: p.name, cases, skipped, failure }
}

/// FNV-1a, to give each property its own deterministic stream.
fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

// ---- decoders ----

fn p11(c: &[i64]) -> RPoly {
    RPoly::from_ints11(c)
}

fn g(x: &[i64]) -> GaussianRational {
    gauss_int(x[0], x[1])
}

fn mat(c: &[i64]) -> Mat2<GaussianRational> {
    Mat2::new(g(&c[0..2]), g(&c[2..4]), g(&c[4..6]), g(&c[6..8]))
}

fn nonzero(x: i64) -> i64 {
    if x == 0 {
        1
    } else {
        x
    }
}

fn parabolic(c: &[i64]) -> Result<ParabolicSurface, SurfaceError> {
    let z = RPoly::from_terms((0..3u32).flat_map(|a| (0..3u32).map(move |b| (a, b))).zip(&c[12..21]).map(|((a, b), &k)| (a, b, rat(k))));
    ParabolicSurface::new(p11(&c[0..4]), p11(&c[4..8]), p11(&c[8..12]), z)
}

// ---- generators ----

fn gen_ints(n: usize, h: i64) -> impl Fn(&mut InstanceRng) -> Vec<i64> {
    move |rng| rng.ints(n, -h, h)
}

fn gen_tparam(rng: &mut InstanceRng, _: usize) -> Vec<i64> {
    gen_ints(13, 5)(rng)
}
fn gen_pyth(rng: &mut InstanceRng, _: usize) -> Vec<i64> {
    gen_ints(17, 5)(rng)
}
fn gen_point(rng: &mut InstanceRng, _: usize) -> Vec<i64> {
    let mut v = Vec::new();
    for _ in 0..3 {
        v.push(rng.int_in(-50, 50));
        v.push(rng.int_in(1, 20));
    }
    v
}
fn gen_bilin(rng: &mut InstanceRng, _: usize) -> Vec<i64> {
    gen_ints(16, 5)(rng)
}
fn gen_equiv(rng: &mut InstanceRng, _: usize) -> Vec<i64> {
    gen_ints(40, 3)(rng)
}
fn gen_surface(rng: &mut InstanceRng, _: usize) -> Vec<i64> {
    gen_ints(21, 5)(rng)
}
fn gen_moebius_pair(rng: &mut InstanceRng, _: usize) -> Vec<i64> {
    gen_ints(16, 3)(rng)
}
fn gen_lemma5(_: &mut InstanceRng, k: usize) -> Vec<i64> {
    // base-3 digits of k select c11, c10, c01, c00 from {0, 1, i}
    (0..4).map(|j| ((k / 3usize.pow(3 - j)) % 3) as i64).collect()
}
fn gen_lemma3(rng: &mut InstanceRng, _: usize) -> Vec<i64> {
    gen_ints(8 + 2 * 50, 5)(rng)
}
fn gen_divide(rng: &mut InstanceRng, _: usize) -> Vec<i64> {
    gen_ints(18, 4)(rng)
}

// ---- checks ----

fn check_tparam(c: &[i64]) -> Result<bool, String> {
    let t = RPoly::constant(rat(nonzero(c[12])));
    match compose_tparam(&p11(&c[0..4]), &p11(&c[4..8]), &p11(&c[8..12]), &t) {
        Ok(tuple) if tuple.residual().is_zero() => Ok(true),
        Ok(tuple) => Err(format!("residual {}", tuple.residual())),
        Err(SurfaceError::ZeroPolynomial(_)) => Ok(false),
        Err(e) => Err(e.to_string()),
    }
}

fn check_pyth(c: &[i64]) -> Result<bool, String> {
    let t = RPoly::constant(rat(nonzero(c[16])));
    let p: Vec<RPoly> = (0..4).map(|k| p11(&c[4 * k..4 * k + 4])).collect();
    match compose_pythagorean(&p[0], &p[1], &p[2], &p[3], &t) {
        Ok(tuple) if tuple.residual().is_zero() => Ok(true),
        Ok(tuple) => Err(format!("residual {}", tuple.residual())),
        Err(SurfaceError::ZeroPolynomial(_)) => Ok(false),
        Err(e) => Err(e.to_string()),
    }
}

fn check_round_trip(c: &[i64]) -> Result<bool, String> {
    let t = RPoly::constant(rat(nonzero(c[12])));
    let Ok(tuple) = compose_tparam(&p11(&c[0..4]), &p11(&c[4..8]), &p11(&c[8..12]), &t) else {
        return Ok(false);
    };
    match decompose_tparam(&tuple) {
        Ok(w) => {
            let back = w.compose().map_err(|e| e.to_string())?;
            if back.parts() == tuple.parts() {
                Ok(true)
            } else {
                Err("recomposition differs".to_string())
            }
        }
        Err(SurfaceError::HypothesisViolated { .. }) => Ok(false),
        Err(e) => Err(e.to_string()),
    }
}

fn check_projection(c: &[i64]) -> Result<bool, String> {
    let r = |k: usize| ratio(c[2 * k], c[2 * k + 1].max(1));
    let a = AffinePoint3::new(r(0), r(1), r(2));
    let p = iso_unproj(&a);
    if p.on_line_l() {
        return Err("image lies on l".to_string());
    }
    match iso_proj(&p) {
        Ok(b) if b == a => Ok(true),
        other => Err(format!("{other:?}")),
    }
}

fn witness_ok(f: &BilinFrac<GaussianRational>, seed: u64) -> Result<Canonical, String> {
    let mut rng = InstanceRng::new(seed);
    let class = classify(f);
    let (res, used) = match &class {
        Classification::Exact(c) => verify_witness(f, c, 100, &mut rng),
        Classification::Float(c) => verify_witness(&f.to_c64(), c, 100, &mut rng),
    };
    let limit = if class.is_exact() { 0.0 } else { 1e-9 };
    if used < 100 {
        return Err(format!("only {used} pole-free samples"));
    }
    if res > limit {
        return Err(format!("witness residual {res:e} for class {} case {}", class.tag(), class.case()));
    }
    Ok(class.tag())
}

fn check_classifier(c: &[i64]) -> Result<bool, String> {
    let Ok(f) = BilinFrac::new(mat(&c[0..8]), mat(&c[8..16])) else { return Ok(false) };
    witness_ok(&f, 7).map(|_| true)
}

fn check_equivalence(c: &[i64]) -> Result<bool, String> {
    let Ok(f) = BilinFrac::new(mat(&c[0..8]), mat(&c[8..16])) else { return Ok(false) };
    let (Ok(m), Ok(cu), Ok(dv)) = (Moebius::new(mat(&c[16..24])), Moebius::new(mat(&c[24..32])), Moebius::new(mat(&c[32..40]))) else {
        return Ok(false);
    };
    let h = f.transform(&cu, &dv).post_compose(&m);
    if h.den.is_negligible(0.0) {
        return Ok(false);
    }
    let (t1, t2) = (classify(&f).tag(), classify(&h).tag());
    if t1 == t2 {
        Ok(true)
    } else {
        Err(format!("{t1} vs {t2}"))
    }
}

fn check_dual(c: &[i64]) -> Result<bool, String> {
    let Ok(s) = parabolic(c) else { return Ok(false) };
    let fit = match dual_conic_param1(&s) {
        Ok(f) => f,
        Err(TopviewError::TooFewLines) => return Ok(false),
        Err(e) => return Err(e.to_string()),
    };
    match &fit.outcome {
        DualConic::SmoothConic(cs) => {
            for k in 0..8 {
                let t = ratio(31 + 17 * k, 7);
                let (lv, lu) = line_families(&s, &t);
                if !conic_eval(cs, &lv).is_zero() || !conic_eval(cs, &lu).is_zero() {
                    return Err(format!("line at t = {t} misses the conic"));
                }
            }
            Ok(true)
        }
        DualConic::TwoPencils { .. } => Ok(true),
        // the coefficient matrix has rank < 3: the top view is degenerate
        DualConic::Line(_) | DualConic::Point(_) if fit.rank < 3 => Ok(false),
        other => Err(format!("outcome {}", other.name())),
    }
}

fn check_coincidence(c: &[i64]) -> Result<bool, String> {
    let (Ok(d1), Ok(d2)) = (Moebius::new(mat(&c[0..8])), Moebius::new(mat(&c[8..16]))) else { return Ok(false) };
    let (w1, w2) = (image_of_real_line(&d1), image_of_real_line(&d2));
    let (f1, f2) = (family_product(&w1, &d2), family_product(&w2, &d1));
    let (Ok(e1), Ok(e2)) = (envelope_cyclic(&f1), envelope_cyclic(&f2)) else { return Ok(false) };
    for (fam, other) in [(&f1, &e2), (&f2, &e1)] {
        let pts = tangency_samples(fam, 6);
        if pts.is_empty() {
            return Ok(false);
        }
        for p in pts {
            let r = other.residual(p.x, p.y);
            if r > 1e-9 {
                return Err(format!("tangency point ({}, {}) has residual {r:e}", p.x, p.y));
            }
        }
    }
    Ok(true)
}

fn check_isocurves(c: &[i64]) -> Result<bool, String> {
    let Ok(s) = parabolic(c) else { return Ok(false) };
    for axis in [Axis::U, Axis::V] {
        for k in -2..=2 {
            let Ok(pts) = isocurve_sample(&s, axis, &rat(k), 9) else { continue };
            let kind = classify_isocurve(&pts).map_err(|e| e.to_string())?;
            if !(kind == CurveKind::VerticalParabola || kind.is_degenerate()) {
                return Err(format!("{axis} = {k} classifies as {}", kind.name()));
            }
        }
    }
    Ok(true)
}

fn check_lemma5(c: &[i64]) -> Result<bool, String> {
    let digit = |d: i64| match d.rem_euclid(3) {
        0 => gauss_int(0, 0),
        1 => gauss_int(1, 0),
        _ => gauss_int(0, 1),
    };
    let cs: Vec<GaussianRational> = c.iter().map(|&d| digit(d)).collect();
    let p = CPoly::from_terms([(1, 1, cs[0].clone()), (1, 0, cs[1].clone()), (0, 1, cs[2].clone()), (0, 0, cs[3].clone())]);
    let det_zero = (&cs[3] * &cs[0] - &cs[1] * &cs[2]) == gauss_int(0, 0);
    let got = rank1_factor_poly(&p).map_err(|e| e.to_string());
    match got {
        Ok(Some((a, b))) => {
            if !det_zero {
                return Err("factored with nonzero determinant".to_string());
            }
            if &a * &b != p {
                return Err(format!("({a})({b}) != {p}"));
            }
            Ok(true)
        }
        Ok(None) if !det_zero => Ok(true),
        Ok(None) => Err("determinant vanishes but no factorization".to_string()),
        // the zero polynomial has no factorization into nonzero factors
        Err(_) if p.is_zero() => Ok(true),
        Err(e) => Err(e),
    }
}

fn check_lemma3(c: &[i64]) -> Result<bool, String> {
    let (f1, f2) = (p11(&c[0..4]), p11(&c[4..8]));
    if f1.is_zero() || f2.is_zero() || !gcd(&f1, &f2).map_err(|e| e.to_string())?.is_constant() {
        return Ok(false);
    }
    let s = &f1.square() + &f2.square();
    for k in 0..50 {
        let (a, b) = (c[8 + 2 * k], nonzero(c[9 + 2 * k]));
        // alternate between R_{1,0} and R_{0,1}
        let var = if k % 2 == 0 { RPoly::u() } else { RPoly::v() };
        let gk = &var.scale(&rat(b)) + &RPoly::constant(rat(a));
        if !gcd(&s, &gk).map_err(|e| e.to_string())?.is_constant() {
            return Err(format!("{gk} divides F1^2 + F2^2"));
        }
    }
    Ok(true)
}

fn check_divide(c: &[i64]) -> Result<bool, String> {
    let p = RPoly::from_terms((0..3u32).flat_map(|a| (0..3u32).map(move |b| (a, b))).zip(&c[0..9]).map(|((a, b), &k)| (a, b, rat(k))));
    let q = RPoly::from_terms((0..3u32).flat_map(|a| (0..3u32).map(move |b| (a, b))).zip(&c[9..18]).map(|((a, b), &k)| (a, b, rat(k))));
    if p.is_zero() || q.is_zero() {
        return Ok(false);
    }
    let back = (&p * &q).divide_exact(&q).map_err(|e| e.to_string())?;
    if back != p {
        return Err("divide_exact(p*q, q) != p".to_string());
    }
    let g = gcd(&p, &q).map_err(|e| e.to_string())?;
    let (cp, cq) = (p.divide_exact(&g), q.divide_exact(&g));
    match (cp, cq) {
        (Ok(cp), Ok(cq)) if gcd(&cp, &cq).map(|h| h.is_constant()).unwrap_or(false) => Ok(true),
        _ => Err(format!("gcd {g} is not a greatest common divisor")),
    }
}

fn check_worked_envelope(_: &[i64]) -> Result<bool, String> {
    let unit = GeneralizedCircle::unit_circle();
    let data = Moebius::new(Mat2::new(gauss_int(0, 1), gauss_int(2, 0), gauss_int(0, 0), gauss_int(1, 0))).expect("invertible");
    let fam = family_product(&unit, &data);
    let env = envelope_cyclic(&fam).map_err(|e| e.to_string())?;
    if env.to_string() != "x^2 + y^2 - 4" {
        return Err(format!("envelope {env}"));
    }
    Ok(true)
}

fn properties() -> Vec<Property> {
    vec![
        Property { name: "cylinder_identity_tparam", full: 1000, gen: gen_tparam, check: check_tparam },
        Property { name: "cylinder_identity_pythagorean", full: 1000, gen: gen_pyth, check: check_pyth },
        Property { name: "tparam_round_trip", full: 500, gen: gen_tparam, check: check_round_trip },
        Property { name: "projection_inverse", full: 1000, gen: gen_point, check: check_projection },
        Property { name: "classifier_witness", full: 1000, gen: gen_bilin, check: check_classifier },
        Property { name: "classifier_equivalence", full: 500, gen: gen_equiv, check: check_equivalence },
        Property { name: "dual_conic_both_families", full: 200, gen: gen_surface, check: check_dual },
        Property { name: "envelope_worked_family", full: 1, gen: gen_lemma5, check: check_worked_envelope },
        Property { name: "envelope_coincidence", full: 50, gen: gen_moebius_pair, check: check_coincidence },
        Property { name: "isocurves_are_parabolas", full: 100, gen: gen_surface, check: check_isocurves },
        Property { name: "rank1_criterion", full: 81, gen: gen_lemma5, check: check_lemma5 },
        Property { name: "sum_of_squares_coprime_to_linear", full: 200, gen: gen_lemma3, check: check_lemma3 },
        Property { name: "divide_and_gcd", full: 200, gen: gen_divide, check: check_divide },
    ]
}

pub fn property_names() -> Vec<&'static str> {
    properties().iter().map(|p| p.name).collect()
}

/// Runs every suite at `scale`. The smoke scale enumerates only the first
/// tenth of the exhaustive Lemma-5 style enumeration.
pub fn selftest(scale: Scale, seed: u64) -> Vec<PropertyOutcome> {
    properties().iter().map(|p| run_property(p, scale, seed)).collect()
}
