mod common;

use engel_slr::hamiltonian::{check_h_conservation, integrate_normal, normal_hamiltonian, Covector, PhaseState};
use engel_slr::EngelError;

fn drift(xi: [f64; 4], h: f64) -> f64 {
    let c = Covector::normal(xi[0], xi[1], xi[2], xi[3]);
    check_h_conservation(&integrate_normal(&PhaseState::at_origin(c), 2.0, h, false).unwrap())
}

#[test]
fn drift_is_fourth_order() {
    let xi = [1.0, 0.0, 1.0, 1.0];
    let ratio = drift(xi, 0.02) / drift(xi, 0.01);
    assert!((10.0..24.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn matches_reference_integrator() {
    for xi in common::figure1().into_iter().chain(common::figure2()) {
        let c = Covector::normal(xi[0], xi[1], xi[2], xi[3]);
        let traj = integrate_normal(&PhaseState::at_origin(c), 1.0, 1e-3, false).unwrap();
        let reference = common::rk4(xi, 1.0, 1e-3);
        assert_eq!(traj.samples.len(), reference.len());
        for (st, (s, w)) in traj.samples.iter().zip(&reference) {
            assert!((st.s - s).abs() < 1e-12);
            assert!(common::max_diff(st.point.to_array(), &w[..4]) < 1e-12);
            assert!((normal_hamiltonian(st) - common::hamiltonian(w)).abs() < 1e-12);
        }
    }
}

#[test]
fn adaptive_agrees_with_fixed_step() {
    let c = Covector::normal(1.0, 0.0, 1.0, 1.0);
    let fixed = integrate_normal(&PhaseState::at_origin(c), 1.0, 1e-3, false).unwrap();
    let adaptive = integrate_normal(&PhaseState::at_origin(c), 1.0, 1e-2, true).unwrap();
    assert!(fixed.endpoint().max_abs_diff(&adaptive.endpoint()) < 1e-7);
    assert_eq!(adaptive.samples.last().unwrap().s, 1.0);
}

#[test]
fn rejects_bad_input() {
    let c = Covector::normal(1.0, 0.0, 1.0, 1.0);
    let st = PhaseState::at_origin(c);
    assert!(matches!(integrate_normal(&st, 1.0, 0.0, false), Err(EngelError::InvalidStep(_))));
    assert!(matches!(integrate_normal(&st, -1.0, 0.1, false), Err(EngelError::InvalidStep(_))));
    let zero = PhaseState::at_origin(Covector::normal(0.0, 0.0, 0.0, 0.0));
    assert!(integrate_normal(&zero, 1.0, 0.1, false).is_err());
}

#[test]
fn blow_up_reports_divergence() {
    let c = Covector::normal(30.0, 0.0, 0.0, 30.0);
    let r = integrate_normal(&PhaseState::at_origin(c), 5.0, 1e-2, false);
    assert!(matches!(r, Err(EngelError::Divergence { .. })), "{r:?}");
}
