//! Explicit horizontal curve families and the reachable-ratio test for
//! endpoints of time-like geodesics with `ξ4 = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{EngelError, Result};
use crate::group::{classify_coefficients, CausalClass, EngelPoint};

/// Parameterized horizontal curves obtained by freezing one coordinate
/// rate. The curve parameter is `x1` for `Example1` and `x2` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CurveFamily {
    /// `ẋ2 = 0`: horizontal straight lines.
    Example1 { x1_0: f64, x2_0: f64, y0: f64, z0: f64 },
    /// `ẋ1 = 0`.
    Example2a { x1_0: f64, y0: f64, z0: f64 },
    /// `ẏ = 0`: `x1 = ι x2`.
    Example2b { iota: f64, y0: f64, z0: f64 },
    /// `ż = 0`: only constant curves.
    Example2c,
}

impl CurveFamily {
    /// `Example2b` through `(x1_0, x2_0, ·, ·)`; needs `x2_0 ≠ 0`.
    pub fn example2b_through(x1_0: f64, x2_0: f64, y0: f64, z0: f64) -> Result<Self> {
        if x2_0 == 0.0 {
            return Err(EngelError::Degenerate("iota = x1/x2 undefined for x2 = 0".into()));
        }
        Ok(CurveFamily::Example2b { iota: x1_0 / x2_0, y0, z0 })
    }

    /// Analytic derivative of [`family_curve`] with respect to the parameter.
    pub fn velocity(&self, param: f64) -> Result<[f64; 4]> {
        match *self {
            CurveFamily::Example1 { x2_0, .. } => Ok([1.0, 0.0, -0.5 * x2_0, 0.0]),
            CurveFamily::Example2a { x1_0, .. } => {
                Ok([0.0, 1.0, 0.5 * x1_0, 0.5 * param * param + 0.5 * x1_0 * x1_0])
            }
            CurveFamily::Example2b { iota, .. } => Ok([iota, 1.0, 0.0, 0.5 * (1.0 + iota * iota) * param * param]),
            CurveFamily::Example2c => Err(degenerate()),
        }
    }
}

fn degenerate() -> EngelError {
    EngelError::Degenerate("z-constant horizontal curves degenerate to points".into())
}

pub fn family_curve(family: &CurveFamily, param: f64) -> Result<EngelPoint> {
    match *family {
        CurveFamily::Example1 { x1_0, x2_0, y0, z0 } => Ok(EngelPoint::new(
            param,
            x2_0,
            -0.5 * param * x2_0 + 0.5 * x1_0 * x2_0 + y0,
            z0,
        )),
        CurveFamily::Example2a { x1_0, y0, z0 } => Ok(EngelPoint::new(
            x1_0,
            param,
            0.5 * x1_0 * param + y0,
            param.powi(3) / 6.0 + 0.5 * x1_0 * x1_0 * param + z0,
        )),
        CurveFamily::Example2b { iota, y0, z0 } => Ok(EngelPoint::new(
            iota * param,
            param,
            y0,
            (1.0 + iota * iota) * param.powi(3) / 6.0 + z0,
        )),
        CurveFamily::Example2c => Err(degenerate()),
    }
}

/// Causal class of the family traversed with increasing parameter.
pub fn family_causal_class(family: &CurveFamily) -> Result<CausalClass> {
    let v = family.velocity(0.0)?;
    Ok(classify_coefficients(v[0], v[1], 0.0))
}

/// `4y / (−x1² + x2²)`, which lies in `(−1, 1)` at every point of a
/// time-like geodesic from the origin with `ξ4 = 0`.
pub fn reachable_ratio(p: &EngelPoint) -> Result<f64> {
    let den = -p.x1 * p.x1 + p.x2 * p.x2;
    if den == 0.0 {
        return Err(EngelError::RatioUndefined);
    }
    Ok(4.0 * p.y / den)
}

/// `τ / sinh²τ − coth τ`, continuous at `τ = 0` with value 0.
pub fn ratio_profile(tau: f64) -> f64 {
    if tau.abs() < 1e-4 {
        return tau * (-2.0 / 3.0 + 4.0 / 45.0 * tau * tau);
    }
    let sh = tau.sinh();
    tau / (sh * sh) - 1.0 / tau.tanh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{horizontality_residual, CausalKind};

    #[test]
    fn examples() {
        let f = CurveFamily::Example2b { iota: 2.0, y0: 0.3, z0: 0.0 };
        let p = family_curve(&f, 1.0).unwrap();
        assert_eq!(p, EngelPoint::new(2.0, 1.0, 0.3, 5.0 / 6.0));
        let g = CurveFamily::Example2a { x1_0: 0.0, y0: 0.1, z0: 0.2 };
        let q = family_curve(&g, 1.0).unwrap();
        assert!((q.z - (1.0 / 6.0 + 0.2)).abs() < 1e-15);
        assert!(family_curve(&CurveFamily::Example2c, 1.0).is_err());
        assert!(CurveFamily::example2b_through(1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn classes() {
        let k = |f: CurveFamily| family_causal_class(&f).unwrap().kind;
        assert_eq!(k(CurveFamily::Example2b { iota: 2.0, y0: 0.0, z0: 0.0 }), CausalKind::Timelike);
        assert_eq!(k(CurveFamily::Example2b { iota: 1.0, y0: 0.0, z0: 0.0 }), CausalKind::Null);
        assert_eq!(k(CurveFamily::Example2b { iota: 0.5, y0: 0.0, z0: 0.0 }), CausalKind::Spacelike);
        assert_eq!(k(CurveFamily::Example1 { x1_0: 0.0, x2_0: 3.0, y0: 0.0, z0: 0.0 }), CausalKind::Timelike);
        assert_eq!(k(CurveFamily::Example2a { x1_0: 1.0, y0: 0.0, z0: 0.0 }), CausalKind::Spacelike);
    }

    #[test]
    fn families_are_horizontal() {
        let fams = [
            CurveFamily::Example1 { x1_0: 0.4, x2_0: -1.3, y0: 0.2, z0: 1.0 },
            CurveFamily::Example2a { x1_0: 0.7, y0: -0.2, z0: 0.5 },
            CurveFamily::Example2b { iota: -1.7, y0: 0.9, z0: -0.1 },
        ];
        for f in &fams {
            for t in [-2.0, -0.3, 0.0, 1.1, 2.5] {
                let (r1, r2) = horizontality_residual(&family_curve(f, t).unwrap(), &f.velocity(t).unwrap());
                assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ratio_profile_limits() {
        assert_eq!(ratio_profile(0.0), 0.0);
        assert!((ratio_profile(40.0) + 1.0).abs() < 1e-12);
        assert!((ratio_profile(1000.0) + 1.0).abs() < 1e-12);
        // Series and direct form meet continuously.
        let t: f64 = 1.01e-4;
        let series = t * (-2.0 / 3.0 + 4.0 / 45.0 * t * t);
        assert!((ratio_profile(t) - series).abs() < 1e-11);
        assert!(ratio_profile(0.99e-4) > ratio_profile(t));
    }

    #[test]
    fn ratio_undefined_on_cone() {
        assert_eq!(reachable_ratio(&EngelPoint::new(1.0, 1.0, 0.0, 0.0)), Err(EngelError::RatioUndefined));
        assert_eq!(reachable_ratio(&EngelPoint::new(1.0, 0.0, 0.0, 0.0)).unwrap(), 0.0);
    }
}
