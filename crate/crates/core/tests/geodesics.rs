mod common;

use engel_slr::geodesics::{
    arclength_flat, curve_length, timelike_elliptic, timelike_flat, timelike_hyperbolic, LightlikeGeodesic,
};
use engel_slr::hamiltonian::Branch;
use engel_slr::{classify, integrate_normal, Covector, PhaseState, EllipticMethod, EngelError, Geodesic, GeodesicCase};
use proptest::prelude::*;

#[test]
fn case_dispatch() {
    let case = |x: [f64; 4]| classify(&Covector::normal(x[0], x[1], x[2], x[3]));
    assert_eq!(case([1.0, 1.0, 0.3, 0.2]), GeodesicCase::LightLike);
    assert_eq!(case([1.0, 0.5, 0.0, 0.0]), GeodesicCase::TimelikeFlat);
    assert_eq!(case([1.0, 0.5, 1.0, 0.0]), GeodesicCase::TimelikeHyperbolic);
    assert_eq!(case([1.0, 0.5, 1.0, 1.0]), GeodesicCase::TimelikeElliptic);
    assert_eq!(case([0.5, 1.0, 1.0, 1.0]), GeodesicCase::Spacelike);
}

#[test]
fn wrong_case_is_an_error() {
    let e = timelike_hyperbolic(&Covector::normal(1.0, 0.0, 1.0, 1.0), 0.5).unwrap_err();
    assert!(matches!(e, EngelError::WrongCase { detected: GeodesicCase::TimelikeElliptic, .. }));
    assert!(timelike_elliptic(&Covector::normal(1.0, 0.0, 1.0, 0.0), 0.5).is_err());
    assert!(LightlikeGeodesic::new(&Covector::normal(1.0, 0.0, 1.0, 0.0)).is_err());
}

#[test]
fn evaluation_outside_domain_fails() {
    let g = Geodesic::new(&Covector::normal(common::SQRT5_2, 0.5, 2.0, 1.0)).unwrap();
    let (lo, hi) = g.domain();
    assert!(lo < 0.0 && hi > 0.0 && hi.is_finite());
    assert!(g.point(hi + 0.1).is_err());
    assert!(g.point(0.5 * hi).is_ok());
    let (curve, clip) = g.sample(2.0 * hi, 0.01).unwrap();
    assert!(clip.is_some());
    assert!(*curve.s.last().unwrap() < hi);
}

#[test]
fn closed_form_and_quadrature_routes_agree() {
    for xi in common::figure2() {
        let c = Covector::normal(xi[0], xi[1], xi[2], xi[3]);
        let a = Geodesic::with_method(&c, EllipticMethod::ClosedForm).unwrap();
        let b = Geodesic::with_method(&c, EllipticMethod::Quadrature).unwrap();
        let end = (0.85 * a.domain().1).min(2.0);
        for k in 1..=10 {
            let s = end * k as f64 / 10.0;
            let d = a.point(s).unwrap().max_abs_diff(&b.point(s).unwrap());
            assert!(d < 1e-9, "{xi:?} s={s}: {d}");
        }
    }
}

#[test]
fn flat_length_is_s() {
    // unit-speed parameterization of a normalized covector
    let p = timelike_flat(common::SQRT5_2, 0.5, 1.7);
    assert!((arclength_flat(&p).unwrap() - 1.7).abs() < 1e-12);
    let g = Geodesic::new(&Covector::normal(common::SQRT5_2, 0.5, 1.0, 0.0)).unwrap();
    let (curve, _) = g.sample(2.0, 1e-3).unwrap();
    // finite differences on samples: second order in the step
    let len = curve_length(&curve).unwrap();
    assert!((len - 2.0).abs() < 1e-6, "{len}");
    let c = Covector::normal(common::SQRT5_2, 0.5, 1.0, 0.0);
    let traj = integrate_normal(&PhaseState::at_origin(c), 2.0, 1e-3, false).unwrap();
    let len = curve_length(&traj).unwrap();
    assert!((len - 2.0).abs() < 1e-10, "{len}");
    let null = integrate_normal(&PhaseState::at_origin(Covector::normal(1.0, 1.0, 0.3, 0.2)), 1.0, 1e-3, false).unwrap();
    assert!(curve_length(&null).unwrap().abs() < 1e-12);
}

#[test]
fn spacelike_curve_has_no_length() {
    let g = Geodesic::abnormal(&Covector::abnormal(0.0, 0.0, 0.0, 1.0), Branch::Plus).unwrap();
    let (curve, _) = g.sample(1.0, 0.01).unwrap();
    assert!(matches!(curve_length(&curve), Err(EngelError::NotCausal { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hyperbolic_matches_reference(xi2 in -1.0f64..1.0, xi3 in 0.3f64..1.5, neg in any::<bool>()) {
        let xi = [(1.0 + xi2 * xi2).sqrt(), xi2, if neg { -xi3 } else { xi3 }, 0.0];
        let c = Covector::normal(xi[0], xi[1], xi[2], xi[3]);
        for (s, w) in common::rk4(xi, 1.0, 1e-3).iter().step_by(100) {
            prop_assert!(common::max_diff(timelike_hyperbolic(&c, *s).unwrap().to_array(), &w[..4]) < 1e-9);
        }
    }

    #[test]
    fn elliptic_matches_reference(xi2 in -1.0f64..1.0, xi3 in -2.0f64..2.0, xi4 in 0.2f64..1.5, neg in any::<bool>()) {
        let xi = [(1.0 + xi2 * xi2).sqrt(), xi2, xi3, if neg { -xi4 } else { xi4 }];
        let g = Geodesic::new(&Covector::normal(xi[0], xi[1], xi[2], xi[3])).unwrap();
        let end = (0.85 * g.domain().1).min(1.5);
        for (s, w) in common::rk4(xi, end, 1e-4).iter().step_by(500) {
            prop_assert!(common::max_diff(g.point(*s).unwrap().to_array(), &w[..4]) < 1e-7);
        }
    }
}
