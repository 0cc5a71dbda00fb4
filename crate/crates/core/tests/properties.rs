//! Algebraic invariants as proptest properties.

use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;

use isosurf::bilinfrac::{classify, verify_witness, BilinFrac, Classification, Mat2, Moebius};
use isosurf::polyring::{gcd, Axis, RPoly};
use isosurf::projgeom::{iso_proj, iso_unproj, AffinePoint3};
use isosurf::rng::InstanceRng;
use isosurf::scalar::{gauss_int, rat, ratio, GaussianRational};
use isosurf::surface::{compose_pythagorean, compose_tparam, decompose_tparam, SurfaceError};
use isosurf::topview::{
    cyclic_transform, envelope_cyclic, family_product, image_of_real_line, moebius_image_circle, Cyclic,
    GeneralizedCircle, IsoPoint,
};

fn small() -> impl Strategy<Value = i64> {
    -5i64..=5
}

fn p11() -> impl Strategy<Value = RPoly> {
    prop::array::uniform4(small()).prop_map(|c| RPoly::from_ints11(&c))
}

fn p22() -> impl Strategy<Value = RPoly> {
    prop::array::uniform9(-4i64..=4).prop_map(|c| {
        RPoly::from_terms((0..9).map(|k| ((k / 3) as u32, (k % 3) as u32, rat(c[k]))))
    })
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small(), small()).prop_map(|(a, b)| gauss_int(a, b))
}

fn mat() -> impl Strategy<Value = Mat2<GaussianRational>> {
    prop::array::uniform4(gaussian()).prop_map(|[a, b, c, d]| Mat2::new(a, b, c, d))
}

fn moebius() -> impl Strategy<Value = Moebius<GaussianRational>> {
    mat().prop_filter_map("singular", |m| Moebius::new(m).ok())
}

fn fraction() -> impl Strategy<Value = isosurf::scalar::Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn tparam_tuples_lie_on_the_cylinder(p in p11(), q in p11(), r in p11(), t in 1i64..=5) {
        match compose_tparam(&p, &q, &r, &RPoly::constant(rat(t))) {
            Ok(tup) => prop_assert!(tup.residual().is_zero()),
            Err(e) => prop_assert!(matches!(e, SurfaceError::ZeroPolynomial(_)), "{e}"),
        }
    }

    #[test]
    fn pythagorean_tuples_lie_on_the_cylinder(p0 in p11(), p1 in p11(), p2 in p11(), p3 in p11()) {
        match compose_pythagorean(&p0, &p1, &p2, &p3, &RPoly::one()) {
            Ok(tup) => prop_assert!(tup.residual().is_zero()),
            Err(e) => prop_assert!(matches!(e, SurfaceError::ZeroPolynomial(_)), "{e}"),
        }
    }

    #[test]
    fn decomposition_recomposes(p in p11(), q in p11(), r in p11(), t in 1i64..=3) {
        let Ok(tup) = compose_tparam(&p, &q, &r, &RPoly::constant(rat(t))) else { return Ok(()) };
        match decompose_tparam(&tup) {
            Ok(w) => {
                let back = w.compose().unwrap();
                prop_assert_eq!(back.parts(), tup.parts());
            }
            Err(e) => prop_assert!(matches!(e, SurfaceError::HypothesisViolated { .. }), "{e}"),
        }
    }

    #[test]
    fn projection_inverts_unprojection(x in fraction(), y in fraction(), z in fraction()) {
        let a = AffinePoint3::new(x, y, z);
        let p = iso_unproj(&a);
        prop_assert!(p.on_cylinder() && !p.on_line_l());
        prop_assert_eq!(iso_proj(&p).unwrap(), a);
    }

    #[test]
    fn flips_are_involutions(p in p22(), axis in prop_oneof![Just(Axis::U), Just(Axis::V)]) {
        let f = p.flip(axis, 2).unwrap();
        prop_assert_eq!(f.flip(axis, 2).unwrap(), p.clone());
        prop_assert!(f.fits(2, 2));
    }

    #[test]
    fn exact_division_inverts_multiplication(p in p22(), q in p11()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).divide_exact(&q).unwrap(), p);
    }

    #[test]
    fn gcd_divides_both(p in p11(), q in p11(), common in p11()) {
        prop_assume!(!common.is_zero() && !p.is_zero() && !q.is_zero());
        let (a, b) = (&p * &common, &q * &common);
        let g = gcd(&a, &b).unwrap();
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert!(common.divides(&g));
    }

    /// No linear polynomial divides F1² + F2² for coprime real F1, F2.
    #[test]
    fn sums_of_squares_have_no_linear_factor(
        f1 in p11(), f2 in p11(), a in small(), b in 1i64..=5, along_u in any::<bool>(),
    ) {
        prop_assume!(!f1.is_zero() && !f2.is_zero());
        prop_assume!(gcd(&f1, &f2).unwrap().is_constant());
        let var = if along_u { RPoly::u() } else { RPoly::v() };
        let lin = &var.scale(&rat(b)) + &RPoly::constant(rat(a));
        let s = &f1.square() + &f2.square();
        prop_assert!(gcd(&s, &lin).unwrap().is_constant());
    }

    #[test]
    fn classifier_witness_holds(a in mat(), b in mat(), seed in any::<u64>()) {
        let Ok(f) = BilinFrac::new(a, b) else { return Ok(()) };
        let mut rng = InstanceRng::new(seed);
        let class = classify(&f);
        let (res, used) = match &class {
            Classification::Exact(c) => verify_witness(&f, c, 30, &mut rng),
            Classification::Float(c) => verify_witness(&f.to_c64(), c, 30, &mut rng),
        };
        prop_assert_eq!(used, 30);
        prop_assert!(res <= if class.is_exact() { 0.0 } else { 1e-9 }, "{res:e}");
    }

    #[test]
    fn moebius_images_of_circles_contain_images_of_points(f in moebius(), t in fraction()) {
        let w = GeneralizedCircle::real_axis();
        let z = GaussianRational::new(t, Zero::zero());
        let Ok(fz) = f.apply(&z) else { return Ok(()) };
        prop_assert!(moebius_image_circle(&f, &w).contains(&fz));
    }

    /// Cyclic shape survives Möbius transport, and points move with the curve.
    #[test]
    fn cyclic_transform_preserves_shape(f in moebius(), d in moebius()) {
        let fam = family_product(&image_of_real_line(&d), &f);
        let Ok(c) = envelope_cyclic(&fam) else { return Ok(()) };
        let g = cyclic_transform(&f, &c).unwrap();
        // quartic part is a multiple of (x² + y²)²
        let p = g.poly();
        let a = p.coeff(4, 0);
        prop_assert_eq!(p.coeff(0, 4), a.clone());
        prop_assert_eq!(p.coeff(2, 2), &a * rat(2));
        prop_assert!(p.coeff(3, 1).is_zero() && p.coeff(1, 3).is_zero());
        prop_assert!(Cyclic::new(p.clone()).is_ok());
        let pts = isosurf::topview::tangency_samples(&fam, 4);
        for q in pts.iter().filter_map(|q: &IsoPoint| q.moebius(&f)) {
            prop_assert!(g.residual(q.x, q.y) <= 1e-9, "{:?}", q);
        }
    }
}

#[test]
fn worked_family_tangencies_lie_on_envelope() {
    let unit = GeneralizedCircle::unit_circle();
    let data = Moebius::new(Mat2::new(gauss_int(0, 1), gauss_int(2, 0), gauss_int(0, 0), gauss_int(1, 0))).unwrap();
    let fam = family_product(&unit, &data);
    let env = envelope_cyclic(&fam).unwrap();
    let pts = isosurf::topview::tangency_samples(&fam, 6);
    assert!(!pts.is_empty());
    for p in &pts {
        assert!(env.residual(p.x, p.y) <= 1e-9);
    }
    assert!(env.residual(Complex64::new(3.0, 0.0), Complex64::new(0.0, 0.0)) > 1e-3);
}
