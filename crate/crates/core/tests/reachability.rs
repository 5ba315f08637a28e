use engel_slr::group::{horizontality_residual, CausalKind};
use engel_slr::reachability::{family_causal_class, family_curve, ratio_profile, reachable_ratio, CurveFamily};
use engel_slr::{EngelError, EngelPoint};
use proptest::prelude::*;

proptest! {
    #[test]
    fn families_are_horizontal(a in -2.0f64..2.0, b in -2.0f64..2.0, t in -3.0f64..3.0) {
        for f in [
            CurveFamily::Example1 { x1_0: a, x2_0: b, y0: 0.1, z0: -0.2 },
            CurveFamily::Example2a { x1_0: a, y0: 0.3, z0: 0.0 },
            CurveFamily::Example2b { iota: b, y0: 0.0, z0: 1.0 },
        ] {
            let p = family_curve(&f, t).unwrap();
            let (r1, r2) = horizontality_residual(&p, &f.velocity(t).unwrap());
            prop_assert!(r1.abs() < 1e-12 && r2.abs() < 1e-11, "{f:?}: {r1} {r2}");
        }
    }

    #[test]
    fn profile_is_odd_and_bounded(t in -30.0f64..30.0) {
        prop_assert!((ratio_profile(t) + ratio_profile(-t)).abs() < 1e-12);
        // saturates to exactly ±1 in floating point for large |τ|
        prop_assert!(ratio_profile(t).abs() <= 1.0);
        if t.abs() < 15.0 {
            prop_assert!(ratio_profile(t).abs() < 1.0);
        }
    }
}

#[test]
fn family_classes() {
    let c = |f: CurveFamily| family_causal_class(&f).unwrap().kind;
    assert_eq!(c(CurveFamily::Example1 { x1_0: 0.0, x2_0: 1.0, y0: 0.0, z0: 0.0 }), CausalKind::Timelike);
    assert_eq!(c(CurveFamily::Example2a { x1_0: 0.0, y0: 0.0, z0: 0.0 }), CausalKind::Spacelike);
    assert_eq!(c(CurveFamily::Example2b { iota: 2.0, y0: 0.0, z0: 0.0 }), CausalKind::Timelike);
    assert_eq!(c(CurveFamily::Example2b { iota: 1.0, y0: 0.0, z0: 0.0 }), CausalKind::Null);
    assert!(matches!(family_curve(&CurveFamily::Example2c, 1.0), Err(EngelError::Degenerate(_))));
    assert!(CurveFamily::example2b_through(1.0, 0.0, 0.0, 0.0).is_err());
}

#[test]
fn ratio_undefined_on_the_light_cone() {
    assert_eq!(reachable_ratio(&EngelPoint::new(1.0, 1.0, 0.2, 0.0)), Err(EngelError::RatioUndefined));
    assert_eq!(reachable_ratio(&EngelPoint::new(0.0, 2.0, 1.0, 0.0)), Ok(1.0));
}

#[test]
fn profile_near_zero_is_continuous() {
    let (a, b) = (ratio_profile(0.99e-4), ratio_profile(1.01e-4));
    assert!((a - b).abs() < 2e-6);
    assert_eq!(ratio_profile(0.0), 0.0);
}
