//! Self-check battery behind `engel-slr verify`: group axioms, special
//! function identities, conservation laws, closed forms against the
//! integrator, and the reachable-ratio bound.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{EngelError, Result};
use crate::geodesics::{
    b_integrals, beta_fn, elliptic_params, timelike_hyperbolic, EllipticGeodesic, EllipticMethod, Geodesic,
    GeodesicCase,
};
use crate::group::{
    central_velocities, classify_coefficients, horizontality_residual, lie_bracket, left_translate_curve, EngelPoint,
};
use crate::hamiltonian::{
    abnormal_analyze, beta_of_state, integrate_normal, normal_rhs, zeta, AbnormalCurve, AbnormalResult, Branch,
    CausalTarget, Covector, PhaseState, Trajectory,
};
use crate::quad;
use crate::reachability::{family_curve, ratio_profile, reachable_ratio, CurveFamily};
use crate::special::{elliptic_f, jacobi_scd, EllipticModulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Group,
    Elliptic,
    Hamiltonian,
    Geodesics,
    Reachability,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Group,
        Suite::Elliptic,
        Suite::Hamiltonian,
        Suite::Geodesics,
        Suite::Reachability,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Group => "group",
            Suite::Elliptic => "elliptic",
            Suite::Hamiltonian => "hamiltonian",
            Suite::Geodesics => "geodesics",
            Suite::Reachability => "reachability",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Suite {
    type Err = EngelError;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| EngelError::Parse(format!("unknown suite {s:?}")))
    }
}

/// Tolerance table. `oracle`, when set, replaces the per-case oracle
/// tolerances (light-like/flat 1e-10, hyperbolic 1e-8, elliptic 1e-6).
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    values: BTreeMap<&'static str, f64>,
    oracle: Option<f64>,
}

const TOLERANCE_KEYS: [(&str, f64); 8] = [
    ("group", 1e-12),
    ("identity", 1e-12),
    ("inverse", 1e-10),
    ("conservation", 1e-10),
    ("integral", 1e-10),
    ("derivative", 1e-5),
    ("quadrature", 1e-7),
    ("horizontality", 1e-8),
];

impl Default for Tolerances {
    fn default() -> Self {
        Self { values: TOLERANCE_KEYS.into_iter().collect(), oracle: None }
    }
}

impl Tolerances {
    pub fn keys() -> impl Iterator<Item = &'static str> {
        std::iter::once("oracle").chain(TOLERANCE_KEYS.iter().map(|(k, _)| *k))
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(EngelError::Parse(format!("tolerance {key}={value} must be positive")));
        }
        if key == "oracle" {
            self.oracle = Some(value);
            return Ok(());
        }
        match TOLERANCE_KEYS.iter().find(|(k, _)| *k == key) {
            Some((k, _)) => {
                self.values.insert(k, value);
                Ok(())
            }
            None => Err(EngelError::Parse(format!("unknown tolerance key {key:?}"))),
        }
    }

    /// Parses `KEY=VALUE`.
    pub fn set_from_str(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| EngelError::Parse(format!("expected KEY=VALUE, got {pair:?}")))?;
        let v: f64 = v.trim().parse().map_err(|_| EngelError::Parse(format!("bad tolerance value {v:?}")))?;
        self.set(k.trim(), v)
    }

    pub fn get(&self, key: &str) -> f64 {
        self.values[key]
    }

    pub fn oracle_for(&self, case: GeodesicCase) -> f64 {
        self.oracle.unwrap_or(match case {
            GeodesicCase::TimelikeElliptic => 1e-6,
            GeodesicCase::TimelikeHyperbolic => 1e-8,
            _ => 1e-10,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    /// Records `measured < tolerance`; NaN fails.
    fn below(&mut self, name: impl Into<String>, measured: f64, tolerance: f64) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            measured,
            tolerance,
            passed: measured < tolerance,
        });
    }

    /// Records a boolean outcome as a count of violations.
    fn holds(&mut self, name: impl Into<String>, violations: usize) {
        self.below(name, violations as f64, 0.5);
    }

    fn result(&mut self, name: &str, r: Result<f64>, tolerance: f64) {
        match r {
            Ok(v) => self.below(name, v, tolerance),
            Err(e) => {
                log::error!("{name}: {e}");
                self.below(name, f64::NAN, tolerance)
            }
        }
    }
}

pub fn run(suites: &[Suite], tol: &Tolerances) -> Report {
    let mut checks = Vec::new();
    for &suite in suites {
        let mut r = Recorder { suite, checks: Vec::new() };
        match suite {
            Suite::Group => group_suite(&mut r, tol),
            Suite::Elliptic => elliptic_suite(&mut r, tol),
            Suite::Hamiltonian => hamiltonian_suite(&mut r, tol),
            Suite::Geodesics => geodesics_suite(&mut r, tol),
            Suite::Reachability => reachability_suite(&mut r),
        }
        checks.extend(r.checks);
    }
    Report { passed: checks.iter().all(|c| c.passed), checks }
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_e4e1)
}

fn random_point(rng: &mut ChaCha8Rng) -> EngelPoint {
    EngelPoint::new(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
}

fn group_suite(r: &mut Recorder, tol: &Tolerances) {
    let mut rng = rng();
    let (mut assoc, mut ident, mut inv): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..1000 {
        let (a, b, c) = (random_point(&mut rng), random_point(&mut rng), random_point(&mut rng));
        assoc = assoc.max(((a * b) * c).max_abs_diff(&(a * (b * c))));
        ident = ident.max((EngelPoint::IDENTITY * a).max_abs_diff(&a).max((a * EngelPoint::IDENTITY).max_abs_diff(&a)));
        inv = inv.max((a * a.inverse()).max_abs_diff(&EngelPoint::IDENTITY).max((a.inverse() * a).max_abs_diff(&EngelPoint::IDENTITY)));
    }
    let t = tol.get("group");
    r.below("associativity", assoc, t);
    r.below("identity", ident, t);
    r.below("inverse", inv, t);

    let mut bracket: f64 = 0.0;
    for _ in 0..50 {
        let p = random_point(&mut rng);
        let frame = crate::group::frame_at(&p);
        for i in 0..4 {
            for j in 0..4 {
                let expected = match (i, j) {
                    (0, 1) => frame[2],
                    (1, 0) => frame[2].map(|c| -c),
                    (0, 2) => frame[3],
                    (2, 0) => frame[3].map(|c| -c),
                    _ => [0.0; 4],
                };
                let got = lie_bracket(i, j, &p);
                for k in 0..4 {
                    bracket = bracket.max((got[k] - expected[k]).abs());
                }
            }
        }
    }
    r.below("bracket table", bracket, t);

    let mut mismatches = 0;
    let h = 1e-3;
    let fams = [
        CurveFamily::Example1 { x1_0: 0.0, x2_0: 0.7, y0: 0.0, z0: 0.0 },
        CurveFamily::Example2a { x1_0: 0.5, y0: 0.0, z0: 0.0 },
        CurveFamily::Example2b { iota: 2.0, y0: 0.0, z0: 0.0 },
        CurveFamily::Example2b { iota: -0.4, y0: 0.0, z0: 0.0 },
    ];
    for f in &fams {
        let curve: Vec<EngelPoint> = (0..200).map(|i| family_curve(f, -1.0 + i as f64 * h).unwrap()).collect();
        for _ in 0..5 {
            let x = random_point(&mut rng);
            let moved = left_translate_curve(&x, &curve);
            for (v, w) in central_velocities(&curve, h).iter().zip(central_velocities(&moved, h)) {
                if classify_coefficients(v[0], v[1], 1e-9) != classify_coefficients(w[0], w[1], 1e-9) {
                    mismatches += 1;
                }
            }
        }
    }
    r.holds("left translation preserves causal class", mismatches);
}

fn elliptic_suite(r: &mut Recorder, tol: &Tolerances) {
    let mut rng = rng();
    let (mut pyth1, mut pyth2, mut invf): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..2000 {
        let k2: f64 = rng.gen_range(0.0..1.0);
        let m = EllipticModulus::new(k2).unwrap();
        let u: f64 = rng.gen_range(-20.0..20.0);
        let j = jacobi_scd(u, m);
        pyth1 = pyth1.max((j.sn * j.sn + j.cn * j.cn - 1.0).abs());
        pyth2 = pyth2.max((j.dn * j.dn + k2 * j.sn * j.sn - 1.0).abs());
        let phi: f64 = rng.gen_range(-6.0..6.0);
        let f = elliptic_f(phi, m).unwrap();
        invf = invf.max((jacobi_scd(f, m).cn - phi.cos()).abs());
    }
    r.below("sn^2 + cn^2 = 1", pyth1, tol.get("identity"));
    r.below("dn^2 + k^2 sn^2 = 1", pyth2, tol.get("identity"));
    r.below("cn(F(phi)) = cos(phi)", invf, tol.get("inverse"));

    let (m0, m1) = (EllipticModulus::new(0.0).unwrap(), EllipticModulus::new(1.0).unwrap());
    let mut lim: f64 = 0.0;
    for i in 0..200 {
        let u = -5.0 + i as f64 * 0.05;
        let a = jacobi_scd(u, m0);
        let b = jacobi_scd(u, m1);
        lim = lim
            .max((a.sn - u.sin()).abs())
            .max((a.cn - u.cos()).abs())
            .max((a.dn - 1.0).abs())
            .max((b.sn - u.tanh()).abs())
            .max((b.cn - 1.0 / u.cosh()).abs())
            .max((b.dn - 1.0 / u.cosh()).abs());
    }
    r.below("k = 0 and k = 1 limits", lim, tol.get("identity"));
}

fn battery() -> Vec<Covector> {
    let r5 = 5f64.sqrt() / 2.0;
    let r2 = 2f64.sqrt();
    vec![
        Covector::normal(r2, 1.0, 1.0, 0.0),
        Covector::normal(r5, 0.5, 1.0, 0.0),
        Covector::normal(r5, 0.5, -1.0, 0.0),
        Covector::normal(1.0, 0.0, 1.0, 1.0),
        Covector::normal(r5, 0.5, 2.0, 1.0),
        Covector::normal(r5, 0.5, 1.0, 1.0),
        Covector::normal(r2, 1.0, 0.0, 0.0),
        Covector::normal(1.0, 1.0, 0.0, 0.0),
        Covector::normal(1.0, -1.0, 0.5, 0.3),
    ]
}

fn rk4(xi: &Covector, s_max: f64) -> Result<Trajectory> {
    integrate_normal(&PhaseState::at_origin(*xi), s_max, 1e-3, false)
}

/// Largest coordinate deviation between the closed form and RK4 (h = 1e-3)
/// at 20 equally spaced parameters in `(0, s_end]`, where `s_end` is 2 or
/// 85% of the distance to the first pole, whichever is smaller.
pub fn oracle_deviation(g: &Geodesic) -> Result<f64> {
    let s_end = 2f64.min(0.85 * g.domain().1);
    let traj = rk4(&g.covector, s_end)?;
    let n = traj.samples.len() - 1;
    let nodes: Vec<usize> = (1..=20).map(|j| (j * n) / 20).collect();
    let s: Vec<f64> = nodes.iter().map(|&i| traj.samples[i].s).collect();
    let pts = g.points(&s)?;
    Ok(nodes
        .iter()
        .zip(&pts)
        .map(|(&i, p)| p.max_abs_diff(&traj.samples[i].point))
        .fold(0.0, f64::max))
}

/// Fourth-order central difference of a point-valued function.
pub fn five_point<F: Fn(f64) -> Option<EngelPoint>>(f: F, s: f64, h: f64) -> Option<[f64; 4]> {
    let a = f(s - 2.0 * h)?.to_array();
    let b = f(s - h)?.to_array();
    let c = f(s + h)?.to_array();
    let d = f(s + 2.0 * h)?.to_array();
    Some(std::array::from_fn(|i| (a[i] - 8.0 * b[i] + 8.0 * c[i] - d[i]) / (12.0 * h)))
}

fn hamiltonian_suite(r: &mut Recorder, tol: &Tolerances) {
    let (mut h_drift, mut xi_drift, mut c1_drift, mut class_changes): (f64, f64, f64, usize) = (0.0, 0.0, 0.0, 0);
    let mut c2_identity: f64 = 0.0;
    for xi in battery() {
        let traj = match rk4(&xi, 1.5) {
            Ok(t) => t,
            Err(e) => {
                r.result(&format!("integrate {:?}", xi.xi), Err(e), 1.0);
                continue;
            }
        };
        h_drift = h_drift.max(traj.meta.drift);
        let [_, xi2, xi3, xi4] = xi.xi;
        let c1 = xi4 * xi2 - 0.5 * xi3 * xi3;
        let class0 = classify_coefficients(xi.xi1(), xi.xi2(), 1e-9).kind;
        for st in &traj.samples {
            xi_drift = xi_drift.max((st.covector.xi3() - xi3).abs()).max((st.covector.xi4() - xi4).abs());
            let (_, z2) = zeta(st);
            let b = beta_of_state(st);
            c1_drift = c1_drift.max((xi4 * z2 - 0.5 * b * b - c1).abs());
            let (z1, z2) = zeta(st);
            if classify_coefficients(-z1, z2, 1e-9).kind != class0 {
                class_changes += 1;
            }
        }
        if xi4 != 0.0 && xi.h_at_origin() < 0.0 {
            let p = elliptic_params(&xi).unwrap();
            c2_identity = c2_identity.max((p.c2 - p.c1 * p.c1 - xi4 * xi4).abs());
        }
    }
    r.below("H drift", h_drift, tol.get("conservation"));
    r.below("xi3, xi4 drift", xi_drift, 1e-14);
    r.below("C1 first integral drift", c1_drift, tol.get("integral"));
    r.below("C2 - C1^2 = xi4^2", c2_identity, tol.get("integral"));
    r.holds("causal class constant along flow", class_changes);
}

fn geodesics_suite(r: &mut Recorder, tol: &Tolerances) {
    for xi in battery() {
        let name = format!("oracle {:?}", xi.xi);
        match Geodesic::new(&xi) {
            Ok(g) => r.result(&name, oracle_deviation(&g), tol.oracle_for(g.case)),
            Err(e) => r.result(&name, Err(e), 1.0),
        }
    }

    // Horizontality of the closed forms under five-point central differences.
    let mut resid: f64 = 0.0;
    let h = 1e-4;
    for xi in battery() {
        let Ok(g) = Geodesic::new(&xi) else { continue };
        for s in [0.3, 0.7, 1.1] {
            if let (Ok(p), Some(dp)) = (g.point(s), five_point(|t| g.point(t).ok(), s, h)) {
                let (r1, r2) = horizontality_residual(&p, &dp);
                resid = resid.max(r1.abs()).max(r2.abs());
            }
        }
    }
    r.below("closed forms are horizontal", resid, tol.get("horizontality"));

    // B integrals against quadrature and their derivatives.
    let xi = Covector::normal(1.0, 0.0, 1.0, 1.0);
    let p = elliptic_params(&xi).unwrap();
    let b = b_integrals(&p, 0.5).unwrap();
    let mut quad_err: f64 = 0.0;
    let mut deriv_err: f64 = 0.0;
    let q = quad::integrate_vec(
        |t| {
            let be = beta_fn(&p, t).unwrap_or(f64::NAN);
            [be, be * be, be.powi(3), be.powi(4)]
        },
        0.0,
        0.5,
        1e-12,
    );
    for i in 0..4 {
        quad_err = quad_err.max((b[i] - q[i]).abs());
    }
    // Relative error is only meaningful away from zeros of beta.
    let hh = 1e-4;
    for i in 1..20 {
        let s = i as f64 * 0.1;
        let Ok(be) = beta_fn(&p, s) else { continue };
        if be.abs() < 0.1 {
            continue;
        }
        let (Ok(bp), Ok(bm)) = (b_integrals(&p, s + hh), b_integrals(&p, s - hh)) else { continue };
        for i in 0..4 {
            let exact = be.powi(i as i32 + 1);
            deriv_err = deriv_err.max(((bp[i] - bm[i]) / (2.0 * hh) - exact).abs() / exact.abs());
        }
    }
    r.below("B_i match quadrature of beta^i", quad_err, tol.get("quadrature"));
    r.below("dB_i/ds = beta^i (relative)", deriv_err, tol.get("derivative"));

    // Degeneration to the xi4 = 0 case.
    let base = Covector::normal(2f64.sqrt(), 1.0, 1.0, 0.0);
    let errs: Vec<f64> = [1e-3, 1e-4, 1e-5]
        .iter()
        .map(|&e| {
            let g = EllipticGeodesic::new(&Covector::normal(2f64.sqrt(), 1.0, 1.0, e), EllipticMethod::Auto);
            [0.5, 1.0, 2.0]
                .iter()
                .map(|&s| match (&g, timelike_hyperbolic(&base, s)) {
                    (Ok(g), Ok(h)) => g.point(s).map(|p| p.max_abs_diff(&h)).unwrap_or(f64::NAN),
                    _ => f64::NAN,
                })
                .fold(0.0, f64::max)
        })
        .collect();
    let monotone = errs.windows(2).all(|w| w[1] < w[0]) && errs.iter().all(|e| e.is_finite());
    r.holds("xi4 -> 0 converges monotonically", usize::from(!monotone));

    // Abnormal extremals.
    let mut abn: f64 = 0.0;
    for branch in [Branch::Plus, Branch::Minus] {
        for s in [-1.0, 0.0, 0.4, 1.3] {
            let (r1, r2) = horizontality_residual(&AbnormalCurve.point(branch, s), &AbnormalCurve.velocity(branch, s));
            abn = abn.max(r1.abs()).max(r2.abs());
            let st = PhaseState {
                point: AbnormalCurve.point(branch, s),
                covector: AbnormalCurve.normal_lift(branch),
                s,
            };
            let f = normal_rhs(&st).unwrap();
            let v = AbnormalCurve.velocity(branch, s);
            for i in 0..4 {
                abn = abn.max((f[i] - v[i]).abs()).max(f[4 + i].abs());
            }
        }
    }
    r.below("abnormal curve horizontal and normal lift", abn, tol.get("group"));
    let none = abnormal_analyze(&Covector::abnormal(0.0, 0.0, 1.0, 0.0), CausalTarget::Timelike);
    r.holds("time-like abnormal has no solution", usize::from(none != Ok(AbnormalResult::NoSolution)));
}

fn reachability_suite(r: &mut Recorder) {
    let mut rng = rng();
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let xi2: f64 = rng.gen_range(-1.0..1.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let xi1 = sign * (1.0 + xi2 * xi2).sqrt();
        let xi3 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 } * rng.gen_range(0.3..1.5);
        let s: f64 = rng.gen_range(1e-3..3.0);
        let p = timelike_hyperbolic(&Covector::normal(xi1, xi2, xi3, 0.0), s);
        worst = worst.max(p.and_then(|p| reachable_ratio(&p)).map(f64::abs).unwrap_or(f64::NAN));
    }
    r.below("|4y / (x2^2 - x1^2)| < 1", worst, 1.0);

    let mut bad = 0;
    let mut odd: f64 = 0.0;
    let mut prev = ratio_profile(-10.0);
    for i in 1..=20000 {
        let t = -10.0 + i as f64 * 1e-3;
        let v = ratio_profile(t);
        if v >= prev {
            bad += 1;
        }
        prev = v;
        odd = odd.max((v + ratio_profile(-t)).abs());
    }
    r.holds("ratio profile strictly decreasing", bad);
    r.below("ratio profile odd", odd, 1e-12);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_parsing() {
        let mut t = Tolerances::default();
        t.set_from_str("oracle=1e-15").unwrap();
        assert_eq!(t.oracle_for(GeodesicCase::TimelikeElliptic), 1e-15);
        assert!(t.set_from_str("nope=1").is_err());
        assert!(t.set_from_str("oracle").is_err());
        assert!(t.set_from_str("group=-1").is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
    }
}
