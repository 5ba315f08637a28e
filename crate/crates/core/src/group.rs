//! Engel group structure in global coordinates `(x1, x2, y, z)`.
//!
//! The horizontal distribution is spanned by the left-invariant fields
//! `X1, X2`; their brackets `X3 = [X1, X2]` and `X4 = [X1, X3]` complete the
//! frame. The sub-Lorentzian metric makes `X1` unit time-like and `X2` unit
//! space-like, and `X1` is the time orientation.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{EngelError, Result};

/// A point of the Engel group.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EngelPoint {
    pub x1: f64,
    pub x2: f64,
    pub y: f64,
    pub z: f64,
}

impl EngelPoint {
    pub const IDENTITY: EngelPoint = EngelPoint {
        x1: 0.0,
        x2: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x1: f64, x2: f64, y: f64, z: f64) -> Self {
        Self { x1, x2, y, z }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.x2, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Group product `self ⊙ other`.
    pub fn compose(&self, other: &EngelPoint) -> EngelPoint {
        let (a1, a2, b, c) = (self.x1, self.x2, self.y, self.z);
        let (d1, d2, e, f) = (other.x1, other.x2, other.y, other.z);
        EngelPoint {
            x1: a1 + d1,
            x2: a2 + d2,
            y: b + e + 0.5 * (a1 * d2 - d1 * a2),
            z: c + f + 0.5 * a2 * d2 * (a2 + d2) + a1 * e + 0.5 * a1 * d2 * (a1 + d1),
        }
    }

    /// Two-sided inverse. The abelianized part flips sign, `y` flips, and
    /// `z` picks up the `x1 y` correction from the group law.
    pub fn inverse(&self) -> EngelPoint {
        EngelPoint {
            x1: -self.x1,
            x2: -self.x2,
            y: -self.y,
            z: -self.z + self.x1 * self.y,
        }
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &EngelPoint) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Mul for EngelPoint {
    type Output = EngelPoint;

    fn mul(self, rhs: EngelPoint) -> EngelPoint {
        self.compose(&rhs)
    }
}

/// The four left-invariant fields evaluated at `p`, as coordinate vectors.
pub fn frame_at(p: &EngelPoint) -> [[f64; 4]; 4] {
    let (x1, x2) = (p.x1, p.x2);
    [
        [1.0, 0.0, -0.5 * x2, 0.0],
        [0.0, 1.0, 0.5 * x1, 0.5 * (x1 * x1 + x2 * x2)],
        [0.0, 0.0, 1.0, x1],
        [0.0, 0.0, 0.0, 1.0],
    ]
}

/// Analytic Jacobians `d(X_i)^a / d q^b` of the frame fields at `p`.
pub fn frame_jacobians(p: &EngelPoint) -> [[[f64; 4]; 4]; 4] {
    let (x1, x2) = (p.x1, p.x2);
    let mut j = [[[0.0; 4]; 4]; 4];
    // X1: y-component -x2/2
    j[0][2][1] = -0.5;
    // X2: y-component x1/2, z-component (x1^2 + x2^2)/2
    j[1][2][0] = 0.5;
    j[1][3][0] = x1;
    j[1][3][1] = x2;
    // X3: z-component x1
    j[2][3][0] = 1.0;
    j
}

/// Lie bracket `[X_i, X_j]` at `p` (zero-based indices), computed from the
/// analytic Jacobians as `DX_j · X_i − DX_i · X_j`.
pub fn lie_bracket(i: usize, j: usize, p: &EngelPoint) -> [f64; 4] {
    let frame = frame_at(p);
    let jac = frame_jacobians(p);
    let mut out = [0.0; 4];
    for (a, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for b in 0..4 {
            acc += jac[j][a][b] * frame[i][b] - jac[i][a][b] * frame[j][b];
        }
        *o = acc;
    }
    out
}

/// A horizontal vector `u1 X1(base) + u2 X2(base)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HorizontalVector {
    pub u1: f64,
    pub u2: f64,
    pub base: EngelPoint,
}

impl HorizontalVector {
    pub fn new(u1: f64, u2: f64, base: EngelPoint) -> Self {
        Self { u1, u2, base }
    }

    pub fn at_identity(u1: f64, u2: f64) -> Self {
        Self::new(u1, u2, EngelPoint::IDENTITY)
    }

    /// Coordinate components of the vector.
    pub fn to_coordinates(&self) -> [f64; 4] {
        let f = frame_at(&self.base);
        std::array::from_fn(|a| self.u1 * f[0][a] + self.u2 * f[1][a])
    }

    /// `g(v, v) = −u1² + u2²`.
    pub fn norm_sq(&self) -> f64 {
        -self.u1 * self.u1 + self.u2 * self.u2
    }
}

/// Sub-Lorentzian metric on the distribution.
pub fn metric_g(v: &HorizontalVector, w: &HorizontalVector) -> Result<f64> {
    if v.base != w.base {
        return Err(EngelError::BaseMismatch);
    }
    Ok(-v.u1 * w.u1 + v.u2 * w.u2)
}

/// Lorentzian extension of the metric to the whole tangent space, in
/// coordinates. Symmetric with signature (−,+,+,+).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientMetric(pub [[f64; 4]; 4]);

impl AmbientMetric {
    /// `vᵀ G w`.
    pub fn pair(&self, v: &[f64; 4], w: &[f64; 4]) -> f64 {
        let mut acc = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                acc += v[a] * self.0[a][b] * w[b];
            }
        }
        acc
    }

    pub fn asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                m = m.max((self.0[a][b] - self.0[b][a]).abs());
            }
        }
        m
    }
}

pub fn ambient_metric_at(p: &EngelPoint) -> AmbientMetric {
    let (x1, x2) = (p.x1, p.x2);
    let (x1s, x2s) = (x1 * x1, x2 * x2);
    let g11 = -1.0 + x2s / 4.0 + x1s * x2s / 4.0;
    let g12 = -x1 * x2 / 4.0 + x1 * x2 * x2s / 4.0;
    let g13 = x2 / 2.0 + x2 * x1s / 2.0;
    let g14 = -x1 * x2 / 2.0;
    let g22 = 1.0 + x1s / 4.0 + x2s * x2s / 4.0;
    let g23 = -x1 / 2.0 + x1 * x2s / 2.0;
    let g24 = -x2s / 2.0;
    let g33 = 1.0 + x1s;
    let g34 = -x1;
    AmbientMetric([
        [g11, g12, g13, g14],
        [g12, g22, g23, g24],
        [g13, g23, g33, g34],
        [g14, g24, g34, 1.0],
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalKind {
    Timelike,
    Spacelike,
    Null,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    FutureDirected,
    PastDirected,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CausalClass {
    pub kind: CausalKind,
    pub orientation: Orientation,
}

impl CausalClass {
    pub const ZERO: CausalClass = CausalClass {
        kind: CausalKind::Zero,
        orientation: Orientation::NotApplicable,
    };

    pub fn spacelike() -> Self {
        Self {
            kind: CausalKind::Spacelike,
            orientation: Orientation::NotApplicable,
        }
    }

    /// True for time-like and null vectors.
    pub fn is_causal(&self) -> bool {
        matches!(self.kind, CausalKind::Timelike | CausalKind::Null)
    }
}

/// Exact causal classification by sign of `−u1² + u2²`; orientation against
/// the time orientation `X1`.
pub fn classify_vector(v: &HorizontalVector) -> CausalClass {
    classify_coefficients(v.u1, v.u2, 0.0)
}

/// Causal class of frame coefficients, treating `|g| <= null_tol` as null.
pub fn classify_coefficients(u1: f64, u2: f64, null_tol: f64) -> CausalClass {
    if u1 == 0.0 && u2 == 0.0 {
        return CausalClass::ZERO;
    }
    let g = -u1 * u1 + u2 * u2;
    let kind = if g.abs() <= null_tol {
        CausalKind::Null
    } else if g < 0.0 {
        CausalKind::Timelike
    } else {
        CausalKind::Spacelike
    };
    let orientation = match kind {
        CausalKind::Timelike | CausalKind::Null => {
            // g(v, X1) = −u1
            if u1 > 0.0 {
                Orientation::FutureDirected
            } else {
                Orientation::PastDirected
            }
        }
        _ => Orientation::NotApplicable,
    };
    CausalClass { kind, orientation }
}

/// Residuals of the two one-forms annihilating the distribution, applied to
/// the coordinate vector `dp` at `p`. Both vanish iff `dp` is horizontal.
pub fn horizontality_residual(p: &EngelPoint, dp: &[f64; 4]) -> (f64, f64) {
    let (x1, x2) = (p.x1, p.x2);
    let r1 = 0.5 * x2 * dp[0] - 0.5 * x1 * dp[1] + dp[2];
    let r2 = -0.5 * (x1 * x1 + x2 * x2) * dp[1] + dp[3];
    (r1, r2)
}

/// Frame coefficients `(u1, u2)` of a horizontal coordinate vector: the
/// `x1` and `x2` components.
pub fn frame_coefficients(dp: &[f64; 4]) -> (f64, f64) {
    (dp[0], dp[1])
}

/// Pointwise left translation `q ↦ x ⊙ q` of a sampled curve.
pub fn left_translate_curve(x: &EngelPoint, curve: &[EngelPoint]) -> Vec<EngelPoint> {
    curve.iter().map(|q| x.compose(q)).collect()
}

/// Central-difference velocities at interior samples of a uniformly
/// sampled curve (step `h`). Entry `i` is the velocity at sample `i + 1`.
pub fn central_velocities(curve: &[EngelPoint], h: f64) -> Vec<[f64; 4]> {
    curve
        .windows(3)
        .map(|w| {
            let (a, b) = (w[0].to_array(), w[2].to_array());
            std::array::from_fn(|i| (b[i] - a[i]) / (2.0 * h))
        })
        .collect()
}
