//! Pontryagin Hamiltonian of the sub-Lorentzian problem, the normal
//! Hamiltonian flow, its numerical integration, and the abnormal-case
//! analysis.
//!
//! Along the normal flow the controls are `u1 = −ζ1`, `u2 = ζ2` where
//! `ζ1 = ⟨ξ, X1⟩`, `ζ2 = ⟨ξ, X2⟩`, and the Hamiltonian reduces to
//! `H = (−ζ1² + ζ2²) / 2`. Its sign is the causal type of the geodesic.

use serde::{Deserialize, Serialize};

use crate::error::{EngelError, Result};
use crate::geodesics::GeodesicCase;
use crate::group::EngelPoint;

/// Coordinates beyond this magnitude count as divergence.
pub const DIVERGENCE_BOUND: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Multiplier {
    /// `ξ0 = −1`
    Normal,
    /// `ξ0 = 0`
    Abnormal,
}

impl Multiplier {
    pub fn value(self) -> f64 {
        match self {
            Multiplier::Normal => -1.0,
            Multiplier::Abnormal => 0.0,
        }
    }
}

/// Costate `(ξ1, ξ2, ξ3, ξ4)` together with the multiplier `ξ0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Covector {
    pub xi0: Multiplier,
    pub xi: [f64; 4],
}

impl Covector {
    pub fn normal(xi1: f64, xi2: f64, xi3: f64, xi4: f64) -> Self {
        Self {
            xi0: Multiplier::Normal,
            xi: [xi1, xi2, xi3, xi4],
        }
    }

    pub fn abnormal(xi1: f64, xi2: f64, xi3: f64, xi4: f64) -> Self {
        Self {
            xi0: Multiplier::Abnormal,
            xi: [xi1, xi2, xi3, xi4],
        }
    }

    pub fn xi1(&self) -> f64 {
        self.xi[0]
    }
    pub fn xi2(&self) -> f64 {
        self.xi[1]
    }
    pub fn xi3(&self) -> f64 {
        self.xi[2]
    }
    pub fn xi4(&self) -> f64 {
        self.xi[3]
    }

    /// Rejects the zero costate and non-finite components. A zero costate
    /// with `ξ0 = −1` only produces the constant curve, so it is rejected
    /// for both multipliers.
    pub fn validate(&self) -> Result<()> {
        if self.xi.iter().any(|c| !c.is_finite()) {
            return Err(EngelError::Nontrivial(format!("non-finite costate {:?}", self.xi)));
        }
        if self.xi.iter().all(|&c| c == 0.0) {
            return Err(EngelError::Nontrivial("costate is identically zero".into()));
        }
        Ok(())
    }

    /// Value of the normal Hamiltonian at the origin, `(−ξ1² + ξ2²)/2`.
    pub fn h_at_origin(&self) -> f64 {
        0.5 * (-self.xi[0] * self.xi[0] + self.xi[1] * self.xi[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub point: EngelPoint,
    pub covector: Covector,
    pub s: f64,
}

impl PhaseState {
    /// State at the origin with `s = 0`.
    pub fn at_origin(covector: Covector) -> Self {
        Self {
            point: EngelPoint::IDENTITY,
            covector,
            s: 0.0,
        }
    }

    fn to_array(self) -> [f64; 8] {
        let p = self.point;
        let x = self.covector.xi;
        [p.x1, p.x2, p.y, p.z, x[0], x[1], x[2], x[3]]
    }

    fn from_array(a: [f64; 8], xi0: Multiplier, s: f64) -> Self {
        Self {
            point: EngelPoint::new(a[0], a[1], a[2], a[3]),
            covector: Covector {
                xi0,
                xi: [a[4], a[5], a[6], a[7]],
            },
            s,
        }
    }

    fn is_bounded(&self) -> bool {
        self.to_array()
            .iter()
            .all(|c| c.is_finite() && c.abs() <= DIVERGENCE_BOUND)
    }
}

/// Pontryagin Hamiltonian for arbitrary controls `(u1, u2)`.
pub fn hamiltonian_h(state: &PhaseState, u1: f64, u2: f64) -> f64 {
    let EngelPoint { x1, x2, .. } = state.point;
    let [xi1, xi2, xi3, xi4] = state.covector.xi;
    state.covector.xi0.value() * 0.5 * (-u1 * u1 + u2 * u2)
        + xi1 * u1
        + xi2 * u2
        + xi3 * 0.5 * (x1 * u2 - x2 * u1)
        + xi4 * 0.5 * (x1 * x1 + x2 * x2) * u2
}

/// `(ζ1, ζ2)`: the costate paired with `X1`, `X2`.
pub fn zeta(state: &PhaseState) -> (f64, f64) {
    let EngelPoint { x1, x2, .. } = state.point;
    let [xi1, xi2, xi3, xi4] = state.covector.xi;
    (
        xi1 - 0.5 * x2 * xi3,
        xi2 + 0.5 * x1 * xi3 + 0.5 * (x1 * x1 + x2 * x2) * xi4,
    )
}

/// Normal optimal controls `(u1, u2) = (−ζ1, ζ2)`.
pub fn normal_controls(state: &PhaseState) -> (f64, f64) {
    let (z1, z2) = zeta(state);
    (-z1, z2)
}

/// Hamiltonian evaluated on the normal controls, `(−ζ1² + ζ2²)/2`.
pub fn normal_hamiltonian(state: &PhaseState) -> f64 {
    let (z1, z2) = zeta(state);
    0.5 * (-z1 * z1 + z2 * z2)
}

/// Reduced variable `β = −(ξ3 + x1 ξ4)`.
pub fn beta_of_state(state: &PhaseState) -> f64 {
    -(state.covector.xi3() + state.point.x1 * state.covector.xi4())
}

fn rhs_array(w: &[f64; 8]) -> [f64; 8] {
    let [x1, x2, _y, _z, xi1, xi2, xi3, xi4] = *w;
    let r2 = 0.5 * (x1 * x1 + x2 * x2);
    let z1 = xi1 - 0.5 * x2 * xi3;
    let z2 = xi2 + 0.5 * x1 * xi3 + r2 * xi4;
    [
        -z1,
        z2,
        0.5 * (x1 * z2 + x2 * z1),
        r2 * z2,
        -z2 * (0.5 * xi3 + x1 * xi4),
        -0.5 * xi3 * z1 - x2 * xi4 * z2,
        0.0,
        0.0,
    ]
}

/// Right-hand side of the normal Hamiltonian system, ordered
/// `(ẋ1, ẋ2, ẏ, ż, ξ̇1, ξ̇2, ξ̇3, ξ̇4)`.
pub fn normal_rhs(state: &PhaseState) -> Result<[f64; 8]> {
    if state.covector.xi0 != Multiplier::Normal {
        return Err(EngelError::Domain("normal flow requires xi0 = -1".into()));
    }
    Ok(rhs_array(&state.to_array()))
}

/// Gradient of the normal Hamiltonian in `(q, ξ)`, same ordering as
/// [`normal_rhs`]. Used to check `dH/ds = ∇H · rhs = 0`.
pub fn normal_hamiltonian_gradient(state: &PhaseState) -> [f64; 8] {
    let EngelPoint { x1, x2, .. } = state.point;
    let [_, _, xi3, xi4] = state.covector.xi;
    let (z1, z2) = zeta(state);
    // H = (−ζ1² + ζ2²)/2
    let dz1 = [0.0, -0.5 * xi3, 0.0, 0.0, 1.0, 0.0, -0.5 * x2, 0.0];
    let dz2 = [
        0.5 * xi3 + x1 * xi4,
        x2 * xi4,
        0.0,
        0.0,
        0.0,
        1.0,
        0.5 * x1,
        0.5 * (x1 * x1 + x2 * x2),
    ];
    std::array::from_fn(|i| -z1 * dz1[i] + z2 * dz2[i])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    pub case: Option<GeodesicCase>,
    pub initial: Covector,
    pub h0: f64,
    pub drift: f64,
}

/// Samples of the normal flow, strictly increasing in `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<PhaseState>,
    /// Step size; for adaptive runs the initial trial step.
    pub h: f64,
    pub adaptive: bool,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn points(&self) -> Vec<EngelPoint> {
        self.samples.iter().map(|st| st.point).collect()
    }

    pub fn endpoint(&self) -> EngelPoint {
        self.samples.last().map(|s| s.point).unwrap_or_default()
    }

    pub fn s_values(&self) -> Vec<f64> {
        self.samples.iter().map(|st| st.s).collect()
    }

    /// Linear interpolation of the base point at parameter `s`. Intended
    /// for quick lookups; exact at sample nodes.
    pub fn point_at(&self, s: f64) -> Option<EngelPoint> {
        let idx = self.samples.partition_point(|st| st.s < s);
        if idx < self.samples.len() && self.samples[idx].s == s {
            return Some(self.samples[idx].point);
        }
        if idx == 0 || idx >= self.samples.len() {
            return None;
        }
        let (a, b) = (&self.samples[idx - 1], &self.samples[idx]);
        let t = (s - a.s) / (b.s - a.s);
        let (pa, pb) = (a.point.to_array(), b.point.to_array());
        Some(EngelPoint::from_array(std::array::from_fn(|i| {
            pa[i] + t * (pb[i] - pa[i])
        })))
    }
}

fn add_scaled(w: &[f64; 8], k: &[f64; 8], c: f64) -> [f64; 8] {
    std::array::from_fn(|i| w[i] + c * k[i])
}

fn rk4_step(w: &[f64; 8], h: f64) -> [f64; 8] {
    let k1 = rhs_array(w);
    let k2 = rhs_array(&add_scaled(w, &k1, 0.5 * h));
    let k3 = rhs_array(&add_scaled(w, &k2, 0.5 * h));
    let k4 = rhs_array(&add_scaled(w, &k3, h));
    std::array::from_fn(|i| w[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Tolerances for the embedded Dormand–Prince 5(4) integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h_min: f64,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-12,
            atol: 1e-12,
            h_min: 1e-12,
        }
    }
}

// Dormand–Prince 5(4) tableau.
const DP_C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One Dormand–Prince step; returns the 5th-order solution and the error
/// norm scaled by the tolerances.
fn dopri_step(w: &[f64; 8], h: f64, opts: &AdaptiveOptions) -> ([f64; 8], f64) {
    debug_assert_eq!(DP_C[0], 0.0);
    let mut k = [[0.0; 8]; 7];
    k[0] = rhs_array(w);
    for stage in 1..7 {
        let arg: [f64; 8] = std::array::from_fn(|i| {
            w[i] + h * (0..stage).map(|j| DP_A[stage][j] * k[j][i]).sum::<f64>()
        });
        k[stage] = rhs_array(&arg);
    }
    let y5: [f64; 8] = std::array::from_fn(|i| w[i] + h * (0..7).map(|j| DP_B5[j] * k[j][i]).sum::<f64>());
    let y4: [f64; 8] = std::array::from_fn(|i| w[i] + h * (0..7).map(|j| DP_B4[j] * k[j][i]).sum::<f64>());
    let err = (0..8)
        .map(|i| {
            let sc = opts.atol + opts.rtol * w[i].abs().max(y5[i].abs());
            ((y5[i] - y4[i]) / sc).powi(2)
        })
        .sum::<f64>()
        / 8.0;
    (y5, err.sqrt())
}

/// Integrates the normal Hamiltonian system from `state0` up to `s_max`.
///
/// Fixed-step mode uses classic RK4 with `round(s_max / h)` uniform steps.
/// Adaptive mode uses Dormand–Prince 5(4) with [`AdaptiveOptions::default`]
/// and `h` as the first trial step.
pub fn integrate_normal(state0: &PhaseState, s_max: f64, h: f64, adaptive: bool) -> Result<Trajectory> {
    integrate_normal_with(state0, s_max, h, adaptive.then(AdaptiveOptions::default))
}

pub fn integrate_normal_with(
    state0: &PhaseState,
    s_max: f64,
    h: f64,
    adaptive: Option<AdaptiveOptions>,
) -> Result<Trajectory> {
    if !(h > 0.0 && h.is_finite()) || !(s_max > 0.0 && s_max.is_finite()) {
        return Err(EngelError::InvalidStep(format!("h = {h}, s_max = {s_max}")));
    }
    if state0.covector.xi0 != Multiplier::Normal {
        return Err(EngelError::Domain("normal flow requires xi0 = -1".into()));
    }
    state0.covector.validate()?;
    let xi0 = state0.covector.xi0;
    let mut samples = vec![*state0];
    let mut w = state0.to_array();
    let s0 = state0.s;

    match adaptive {
        None => {
            let n = (s_max / h).round().max(1.0) as usize;
            let step = s_max / n as f64;
            for i in 1..=n {
                w = rk4_step(&w, step);
                let st = PhaseState::from_array(w, xi0, s0 + i as f64 * step);
                if !st.is_bounded() {
                    return Err(EngelError::Divergence {
                        last_good_s: samples.last().unwrap().s,
                    });
                }
                samples.push(st);
            }
        }
        Some(opts) => {
            let end = s0 + s_max;
            let mut s = s0;
            let mut step = h.min(s_max);
            while s < end {
                if end - s < step {
                    step = end - s;
                }
                let (next, err) = dopri_step(&w, step, &opts);
                if err <= 1.0 || step <= opts.h_min {
                    s = if end - s <= step { end } else { s + step };
                    w = next;
                    let st = PhaseState::from_array(w, xi0, s);
                    if !st.is_bounded() {
                        return Err(EngelError::Divergence {
                            last_good_s: samples.last().unwrap().s,
                        });
                    }
                    samples.push(st);
                }
                let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                step = (step * factor).max(opts.h_min);
                if !step.is_finite() {
                    return Err(EngelError::Divergence { last_good_s: s });
                }
            }
        }
    }

    let h0 = normal_hamiltonian(state0);
    let mut traj = Trajectory {
        samples,
        h,
        adaptive: adaptive.is_some(),
        meta: TrajectoryMeta {
            case: None,
            initial: state0.covector,
            h0,
            drift: 0.0,
        },
    };
    traj.meta.drift = check_h_conservation(&traj);
    if (-2.0 * h0 - 1.0).abs() > 1e-9 && h0 < 0.0 {
        log::warn!("time-like initial data is not arc-length normalized: zeta1^2 - zeta2^2 = {}", -2.0 * h0);
    }
    Ok(traj)
}

/// `max |H(sample) − H(first)|` with the normal controls.
pub fn check_h_conservation(traj: &Trajectory) -> f64 {
    let Some(first) = traj.samples.first() else {
        return 0.0;
    };
    let h0 = normal_hamiltonian(first);
    traj.samples
        .iter()
        .map(|st| (normal_hamiltonian(st) - h0).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalTarget {
    Timelike,
    Spacelike,
    Null,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// The space-like abnormal extremals through the origin,
/// `s ↦ (0, ±s, 0, ±s³/6)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbnormalCurve;

impl AbnormalCurve {
    pub fn point(&self, branch: Branch, s: f64) -> EngelPoint {
        let e = branch.sign();
        EngelPoint::new(0.0, e * s, 0.0, e * s * s * s / 6.0)
    }

    pub fn velocity(&self, branch: Branch, s: f64) -> [f64; 4] {
        let e = branch.sign();
        [0.0, e, 0.0, e * s * s / 2.0]
    }

    /// Costate for which the same curve solves the normal system.
    pub fn normal_lift(&self, branch: Branch) -> Covector {
        Covector::normal(0.0, branch.sign(), 0.0, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AbnormalResult {
    /// No abnormal extremal of the requested causal type.
    NoSolution,
    /// Trivial (constant) extremal.
    Constant(EngelPoint),
    Spacelike(AbnormalCurve),
}

/// Abnormal (`ξ0 = 0`) extremals from the origin.
///
/// At the origin the maximum condition forces `ξ1 = ξ2 = 0`. Time-like
/// abnormals do not exist; null ones are constant; space-like ones have
/// `u1 = 0`, `u2 = ±1`, which needs `ξ3 = 0`.
pub fn abnormal_analyze(xi: &Covector, target: CausalTarget) -> Result<AbnormalResult> {
    if xi.xi0 != Multiplier::Abnormal {
        return Err(EngelError::Domain("abnormal analysis requires xi0 = 0".into()));
    }
    xi.validate()?;
    let [xi1, xi2, xi3, xi4] = xi.xi;
    if xi3 == 0.0 && xi4 == 0.0 {
        return Err(EngelError::Nontrivial(
            "xi3 = xi4 = 0 forces xi1 = xi2 = 0 at the origin".into(),
        ));
    }
    if xi1 != 0.0 || xi2 != 0.0 {
        return Err(EngelError::Domain(format!(
            "H_u = ({xi1}, {xi2}) != 0 at the origin; not an abnormal covector"
        )));
    }
    Ok(match target {
        CausalTarget::Timelike => AbnormalResult::NoSolution,
        CausalTarget::Null => AbnormalResult::Constant(EngelPoint::IDENTITY),
        CausalTarget::Spacelike if xi3 == 0.0 => AbnormalResult::Spacelike(AbnormalCurve),
        CausalTarget::Spacelike => AbnormalResult::NoSolution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hamiltonian_values() {
        let st = PhaseState::at_origin(Covector::abnormal(0.0, 0.0, 0.0, 0.0));
        assert_eq!(hamiltonian_h(&st, 0.3, -2.0), 0.0);
        let st = PhaseState::at_origin(Covector::normal(1.0, 0.0, 0.0, 0.0));
        assert_eq!(hamiltonian_h(&st, 1.0, 0.0), 1.5);
    }

    #[test]
    fn zeta_values() {
        let st = PhaseState::at_origin(Covector::normal(0.7, -0.2, 3.0, 4.0));
        assert_eq!(zeta(&st), (0.7, -0.2));
        let st = PhaseState {
            point: EngelPoint::new(1.0, 0.0, 0.0, 0.0),
            covector: Covector::normal(0.0, 0.0, 2.0, 0.0),
            s: 0.0,
        };
        assert_eq!(zeta(&st).1, 1.0);
        let st = PhaseState {
            point: EngelPoint::new(1.0, 1.0, 0.0, 0.0),
            covector: Covector::normal(1.0, 1.0, 1.0, 1.0),
            s: 0.0,
        };
        assert_eq!(zeta(&st), (0.5, 2.5));
    }

    #[test]
    fn rhs_values() {
        let st = PhaseState::at_origin(Covector::normal(1.0, 0.0, 0.0, 0.0));
        assert_eq!(normal_rhs(&st).unwrap(), [-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let r2 = 2f64.sqrt();
        let st = PhaseState::at_origin(Covector::normal(r2, 1.0, 1.0, 0.0));
        let r = normal_rhs(&st).unwrap();
        assert_eq!((r[0], r[1], r[4]), (-r2, 1.0, -0.5));
        assert_abs_diff_eq!(r[5], -r2 / 2.0, epsilon = 1e-15);
        assert!(normal_rhs(&PhaseState::at_origin(Covector::abnormal(0.0, 0.0, 0.0, 1.0))).is_err());
    }

    #[test]
    fn normal_controls_give_reduced_hamiltonian() {
        let st = PhaseState {
            point: EngelPoint::new(0.3, -1.1, 0.2, 0.9),
            covector: Covector::normal(1.2, 0.4, -0.7, 0.5),
            s: 0.0,
        };
        let (u1, u2) = normal_controls(&st);
        let (z1, z2) = zeta(&st);
        assert_abs_diff_eq!(hamiltonian_h(&st, u1, u2), 0.5 * (-z1 * z1 + z2 * z2), epsilon = 1e-14);
    }

    #[test]
    fn vacuum_case_is_exact() {
        let st = PhaseState::at_origin(Covector::normal(1.0, 0.0, 0.0, 0.0));
        let tr = integrate_normal(&st, 1.0, 1e-3, false).unwrap();
        let end = tr.endpoint();
        assert_abs_diff_eq!(end.x1, -1.0, epsilon = 1e-13);
        assert_eq!((end.x2, end.y, end.z), (0.0, 0.0, 0.0));
        assert_eq!(tr.samples.len(), 1001);
    }

    #[test]
    fn zero_covector_rejected() {
        let st = PhaseState::at_origin(Covector::normal(0.0, 0.0, 0.0, 0.0));
        assert!(matches!(integrate_normal(&st, 1.0, 1e-2, false), Err(EngelError::Nontrivial(_))));
    }

    #[test]
    fn bad_steps_rejected() {
        let st = PhaseState::at_origin(Covector::normal(1.0, 0.0, 0.0, 0.0));
        assert!(integrate_normal(&st, 1.0, 0.0, false).is_err());
        assert!(integrate_normal(&st, -1.0, 0.1, false).is_err());
    }

    #[test]
    fn single_sample_has_no_drift() {
        let st = PhaseState::at_origin(Covector::normal(1.0, 0.3, 0.0, 0.0));
        let tr = Trajectory {
            samples: vec![st],
            h: 0.1,
            adaptive: false,
            meta: TrajectoryMeta {
                case: None,
                initial: st.covector,
                h0: normal_hamiltonian(&st),
                drift: 0.0,
            },
        };
        assert_eq!(check_h_conservation(&tr), 0.0);
    }

    #[test]
    fn divergence_is_reported() {
        // Large costate with xi4 makes x1 blow up in finite time.
        let st = PhaseState::at_origin(Covector::normal(30.0, 0.0, 0.0, 30.0));
        match integrate_normal(&st, 50.0, 1e-3, false) {
            Err(EngelError::Divergence { last_good_s }) => assert!(last_good_s > 0.0 && last_good_s < 50.0),
            other => panic!("expected divergence, got {:?}", other.map(|t| t.endpoint())),
        }
    }

    #[test]
    fn abnormal_cases() {
        let xi = Covector::abnormal(0.0, 0.0, 0.0, 1.0);
        match abnormal_analyze(&xi, CausalTarget::Spacelike).unwrap() {
            AbnormalResult::Spacelike(c) => {
                assert_eq!(c.point(Branch::Plus, 1.0), EngelPoint::new(0.0, 1.0, 0.0, 1.0 / 6.0));
                assert_eq!(c.point(Branch::Minus, 1.0), EngelPoint::new(0.0, -1.0, 0.0, -1.0 / 6.0));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(abnormal_analyze(&xi, CausalTarget::Null).unwrap(), AbnormalResult::Constant(EngelPoint::IDENTITY));
        assert_eq!(abnormal_analyze(&xi, CausalTarget::Timelike).unwrap(), AbnormalResult::NoSolution);
        assert!(matches!(
            abnormal_analyze(&Covector::abnormal(0.0, 0.0, 0.0, 0.0), CausalTarget::Spacelike),
            Err(EngelError::Nontrivial(_))
        ));
        assert!(matches!(
            abnormal_analyze(&Covector::abnormal(1.0, 0.0, 0.0, 0.0), CausalTarget::Spacelike),
            Err(EngelError::Nontrivial(_))
        ));
        assert!(abnormal_analyze(&Covector::abnormal(1.0, 0.0, 0.0, 1.0), CausalTarget::Spacelike).is_err());
        assert!(abnormal_analyze(&Covector::normal(0.0, 0.0, 0.0, 1.0), CausalTarget::Spacelike).is_err());
    }
}
