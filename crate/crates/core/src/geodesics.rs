//! Geodesics from the origin: case classification and closed-form
//! evaluators for the light-like, abnormal and the three time-like cases,
//! plus sub-Lorentzian length of sampled curves.
//!
//! In the elliptic case (`ξ4 ≠ 0`) everything is driven by
//! `β = −(ξ3 + x1 ξ4)`, which satisfies `β̇² = (β²/2 + C1)² + (C2 − C1²)` and
//! is written as `β = √(2P) cs(v) nd(v)` with `P = √C2` and `v` affine in `s`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{EngelError, Result};
use crate::group::{EngelPoint, CausalKind, classify_coefficients};
use crate::hamiltonian::{zeta, AbnormalCurve, Branch, Covector, Multiplier, Trajectory};
use crate::quad;
use crate::special::{complete_k, elliptic_f, jacobi_epsilon, jacobi_scd, EllipticModulus, JacobiScd};

/// Absolute threshold for the zero-pattern of `(ξ3, ξ4)` and for `H = 0`.
pub const CASE_TOL: f64 = 1e-12;

/// Below this `|ξ4|` the automatic elliptic method switches to quadrature.
pub const AUTO_QUADRATURE_XI4: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeodesicCase {
    LightLike,
    /// `ξ3 = ξ4 = 0`
    TimelikeFlat,
    /// `ξ3 ≠ 0`, `ξ4 = 0`
    TimelikeHyperbolic,
    /// `ξ4 ≠ 0`
    TimelikeElliptic,
    AbnormalSpacelike,
    /// Normal space-like (`H > 0`); no closed form, integrated numerically.
    Spacelike,
}

impl GeodesicCase {
    pub fn is_timelike(self) -> bool {
        matches!(
            self,
            GeodesicCase::TimelikeFlat | GeodesicCase::TimelikeHyperbolic | GeodesicCase::TimelikeElliptic
        )
    }
}

impl fmt::Display for GeodesicCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GeodesicCase::LightLike => "LightLike",
            GeodesicCase::TimelikeFlat => "TimelikeFlat",
            GeodesicCase::TimelikeHyperbolic => "TimelikeHyperbolic",
            GeodesicCase::TimelikeElliptic => "TimelikeElliptic",
            GeodesicCase::AbnormalSpacelike => "AbnormalSpacelike",
            GeodesicCase::Spacelike => "Spacelike",
        };
        f.write_str(s)
    }
}

/// Case of the geodesic generated by `xi` at the origin, where `h0` is the
/// normal Hamiltonian there.
pub fn classify_case(xi: &Covector, h0: f64) -> GeodesicCase {
    if xi.xi0 == Multiplier::Abnormal {
        return GeodesicCase::AbnormalSpacelike;
    }
    if h0.abs() <= CASE_TOL {
        GeodesicCase::LightLike
    } else if h0 > 0.0 {
        GeodesicCase::Spacelike
    } else if xi.xi4().abs() > CASE_TOL {
        GeodesicCase::TimelikeElliptic
    } else if xi.xi3().abs() > CASE_TOL {
        GeodesicCase::TimelikeHyperbolic
    } else {
        GeodesicCase::TimelikeFlat
    }
}

/// [`classify_case`] with `H` evaluated at the origin.
pub fn classify(xi: &Covector) -> GeodesicCase {
    classify_case(xi, xi.h_at_origin())
}

fn expect_case(xi: &Covector, expected: GeodesicCase) -> Result<()> {
    xi.validate()?;
    let detected = classify(xi);
    if detected != expected {
        return Err(EngelError::WrongCase { expected, detected });
    }
    Ok(())
}

fn warn_unnormalized(xi1: f64, xi2: f64) {
    let n = xi1 * xi1 - xi2 * xi2;
    if (n - 1.0).abs() > 1e-9 {
        log::warn!("covector is not arc-length normalized: xi1^2 - xi2^2 = {n}");
    }
}

// ---------------------------------------------------------------- light-like

/// The light-like curve `(t, ±t, 0, ±t³/3)` in its own parameter `t`.
pub fn lightlike_geodesic(sign: f64, t: f64) -> EngelPoint {
    let e = sign.signum();
    EngelPoint::new(t, e * t, 0.0, e * t * t * t / 3.0)
}

/// Light-like geodesic of a given covector, parameterized by the flow
/// parameter `s`. Along it `ζ2 = ε ζ1` with `ε = ξ2/ξ1`, the projection is
/// `(t, −ε t, 0, −ε t³/3)` and `t = x1(s)` solves the Riccati equation
/// `ṫ = a + b t + c t²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightlikeGeodesic {
    pub sign: f64,
    a: f64,
    b: f64,
    c: f64,
}

impl LightlikeGeodesic {
    pub fn new(xi: &Covector) -> Result<Self> {
        expect_case(xi, GeodesicCase::LightLike)?;
        let [xi1, xi2, xi3, xi4] = xi.xi;
        if xi1 == 0.0 {
            // ζ vanishes identically: constant curve.
            return Ok(Self { sign: 1.0, a: 0.0, b: 0.0, c: 0.0 });
        }
        let eps = (xi2 / xi1).signum();
        let c = if xi4.abs() > CASE_TOL { -0.5 * eps * xi4 } else { 0.0 };
        let b = if xi3.abs() > CASE_TOL { -eps * xi3 } else { 0.0 };
        Ok(Self { sign: -eps, a: -xi1, b, c })
    }

    fn roots(&self) -> (f64, f64, f64) {
        let disc = self.b * self.b - 4.0 * self.a * self.c;
        let sq = disc.abs().sqrt();
        (disc, (-self.b + sq) / (2.0 * self.c), (-self.b - sq) / (2.0 * self.c))
    }

    fn is_double_root(&self, disc: f64) -> bool {
        disc.abs() <= 1e-14 * (self.b * self.b + (4.0 * self.a * self.c).abs())
    }

    /// Parameter `t = x1(s)`.
    pub fn parameter(&self, s: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        if s <= lo || s >= hi {
            return Err(EngelError::OutsideDomain { s, lo, hi });
        }
        let (a, b, c) = (self.a, self.b, self.c);
        if a == 0.0 {
            return Ok(0.0);
        }
        if c == 0.0 {
            return Ok(if b == 0.0 { a * s } else { a * (b * s).exp_m1() / b });
        }
        let (disc, r1, r2) = self.roots();
        if self.is_double_root(disc) {
            let r = -b / (2.0 * c);
            let q = c * r * s;
            return Ok(r * q / (1.0 + q));
        }
        if disc > 0.0 {
            // Label the roots so the exponent is non-positive.
            let (r1, r2) = if c * (r1 - r2) * s <= 0.0 { (r1, r2) } else { (r2, r1) };
            let x = c * (r1 - r2) * s;
            let e = x.exp();
            return Ok(-r1 * r2 * x.exp_m1() / (r2 - r1 * e));
        }
        let w = 0.5 * (-disc).sqrt();
        let th0 = (b / (2.0 * w)).atan();
        Ok(-b / (2.0 * c) + (w / c) * (w * s + th0).tan())
    }

    /// Open `s`-interval containing 0 on which `t(s)` stays finite.
    pub fn domain(&self) -> (f64, f64) {
        let (a, b, c) = (self.a, self.b, self.c);
        let inf = f64::INFINITY;
        if a == 0.0 || c == 0.0 {
            return (-inf, inf);
        }
        let (disc, r1, r2) = self.roots();
        let pole = if self.is_double_root(disc) {
            let r = -b / (2.0 * c);
            Some(-1.0 / (c * r))
        } else if disc > 0.0 {
            let q = r2 / r1;
            (q > 0.0).then(|| q.ln() / (c * (r1 - r2)))
        } else {
            let w = 0.5 * (-disc).sqrt();
            let th0 = (b / (2.0 * w)).atan();
            return ((-std::f64::consts::FRAC_PI_2 - th0) / w, (std::f64::consts::FRAC_PI_2 - th0) / w);
        };
        match pole {
            Some(p) if p > 0.0 => (-inf, p),
            Some(p) if p < 0.0 => (p, inf),
            _ => (-inf, inf),
        }
    }

    pub fn point(&self, s: f64) -> Result<EngelPoint> {
        Ok(lightlike_geodesic(self.sign, self.parameter(s)?))
    }
}

// ---------------------------------------------------------------- time-like, flat

/// Straight time-like geodesic for `ξ3 = ξ4 = 0`.
pub fn timelike_flat(xi1: f64, xi2: f64, s: f64) -> EngelPoint {
    warn_unnormalized(xi1, xi2);
    flat_point(xi1, xi2, s)
}

fn flat_point(xi1: f64, xi2: f64, s: f64) -> EngelPoint {
    EngelPoint::new(
        -xi1 * s,
        xi2 * s,
        0.0,
        (xi1 * xi1 + xi2 * xi2) / 6.0 * xi2 * s * s * s,
    )
}

/// Length `√(x1² − x2²)` of the flat geodesic ending at `endpoint`.
pub fn arclength_flat(endpoint: &EngelPoint) -> Result<f64> {
    let d = endpoint.x1 * endpoint.x1 - endpoint.x2 * endpoint.x2;
    if d < 0.0 {
        return Err(EngelError::Domain(format!(
            "x1^2 - x2^2 = {d} < 0: not a time-like flat endpoint"
        )));
    }
    Ok(d.sqrt())
}

// ---------------------------------------------------------------- time-like, ξ4 = 0

/// Time-like geodesic for `ξ3 ≠ 0`, `ξ4 = 0`, whose `(x1, x2)` projection
/// is a hyperbola.
pub fn timelike_hyperbolic(xi: &Covector, s: f64) -> Result<EngelPoint> {
    expect_case(xi, GeodesicCase::TimelikeHyperbolic)?;
    warn_unnormalized(xi.xi1(), xi.xi2());
    Ok(hyperbolic_point(xi, s))
}

fn hyperbolic_point(xi: &Covector, s: f64) -> EngelPoint {
    let [xi1, xi2, xi3, _] = xi.xi;
    let a1 = xi1 / xi3;
    let a2 = xi2 / xi3;
    let th = xi3 * s;
    let (sh, ch) = (th.sinh(), th.cosh());
    let chm1 = 2.0 * (0.5 * th).sinh().powi(2);
    let x1 = -a1 * sh + a2 * chm1;
    let x2 = -a1 * chm1 + a2 * sh;
    let y = 0.5 * (a2 * a2 - a1 * a1) * (th - sh);
    let (a1s, a2s) = (a1 * a1, a2 * a2);
    let z = a2 * (a1s + a2s) * ch * ch * sh - 2.0 / 3.0 * a2s * a2 * sh.powi(3)
        - a1 * (a1s + 3.0 * a2s) / 3.0 * ch.powi(3)
        + 0.5 * a1 * (a1s + 3.0 * a2s) * ch * ch
        - 0.5 * a2 * (3.0 * a1s + a2s) * sh * ch
        + 0.5 * a2 * (a1s - a2s) * th
        - a1 * (a1s + 3.0 * a2s) / 6.0;
    EngelPoint::new(x1, x2, y, z)
}

// ---------------------------------------------------------------- time-like, ξ4 ≠ 0

/// Constants of the elliptic case, computed once per covector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParams {
    pub xi: [f64; 4],
    pub c1: f64,
    pub c2: f64,
    /// `C2 − C1² = ξ4²(ξ1² − ξ2²)`, evaluated in the factored form.
    pub c2_minus_c1_sq: f64,
    pub modulus: EllipticModulus,
    pub g_frak: f64,
    pub phi1: f64,
    pub f_const: f64,
    /// `√(C1² + ξ4²)` for normalized data; in general `√C2`.
    pub rho_norm: f64,
    /// Sign of `β̇(0) = ξ4 ξ1`.
    pub sign_beta_dot: f64,
    /// Sign of `β(0) = −ξ3` (`+1` when zero).
    pub sign_beta0: f64,
    /// Argument of `cs nd` at `s = 0`.
    pub v0: f64,
    /// `dv/ds`.
    pub v_rate: f64,
    pub d: [f64; 4],
    pub quarter_period: f64,
    /// Maximal pole-free open `s`-interval containing 0.
    pub domain: (f64, f64),
}

pub fn elliptic_params(xi: &Covector) -> Result<EllipticParams> {
    expect_case(xi, GeodesicCase::TimelikeElliptic)?;
    let [xi1, xi2, xi3, xi4] = xi.xi;
    warn_unnormalized(xi1, xi2);
    let c1 = xi4 * xi2 - 0.5 * xi3 * xi3;
    let c2 = xi1 * xi1 * xi4 * xi4 + 0.25 * xi3.powi(4) - xi2 * xi3 * xi3 * xi4;
    let dd = xi4 * xi4 * (xi1 * xi1 - xi2 * xi2);
    let p = (c1 * c1 + dd).sqrt();
    let (k2, kp2) = if c1 <= 0.0 {
        let kp2 = dd / (2.0 * p * (p - c1));
        (1.0 - kp2, kp2)
    } else {
        let k2 = dd / (2.0 * p * (p + c1));
        (k2, 1.0 - k2)
    };
    let modulus = EllipticModulus::with_complement(k2.clamp(0.0, 1.0), kp2.clamp(0.0, 1.0))?;
    let g_frak = 0.5 / p.sqrt();
    let phi1 = ((xi3 * xi3 - 2.0 * p) / (xi3 * xi3 + 2.0 * p)).clamp(-1.0, 1.0).acos();
    let f_const = elliptic_f(phi1, modulus)?;
    let sign_beta0 = if -xi3 >= 0.0 { 1.0 } else { -1.0 };
    let sign_beta_dot = (xi4 * xi1).signum();
    let v0 = sign_beta0 * 0.5 * f_const;
    let v_rate = -sign_beta_dot * (0.5 * p).sqrt();
    let kk = complete_k(modulus);
    let (va, vb) = if sign_beta0 > 0.0 { (0.0, 2.0 * kk) } else { (-2.0 * kk, 0.0) };
    let (sa, sb) = ((va - v0) / v_rate, (vb - v0) / v_rate);
    let domain = (sa.min(sb), sa.max(sb));

    let mut params = EllipticParams {
        xi: xi.xi,
        c1,
        c2,
        c2_minus_c1_sq: dd,
        modulus,
        g_frak,
        phi1,
        f_const,
        rho_norm: p,
        sign_beta_dot,
        sign_beta0,
        v0,
        v_rate,
        d: [0.0; 4],
        quarter_period: kk,
        domain,
    };
    let beta0 = -xi3;
    let beta_dot0 = xi4 * xi1;
    let at0 = jacobi_scd(v0, modulus);
    params.d = [
        -params.f1(at0),
        -params.f2(v0, at0),
        -2.0 * beta_dot0,
        -4.0 / 3.0 * beta0 * beta_dot0,
    ];
    Ok(params)
}

impl EllipticParams {
    fn check_domain(&self, s: f64) -> Result<()> {
        let (lo, hi) = self.domain;
        if !(s > lo && s < hi) {
            if s == lo || s == hi {
                return Err(EngelError::Pole { function: "beta", location: s });
            }
            return Err(EngelError::OutsideDomain { s, lo, hi });
        }
        Ok(())
    }

    fn arg(&self, s: f64) -> f64 {
        self.v0 + self.v_rate * s
    }

    fn beta_at(&self, j: JacobiScd) -> Result<f64> {
        if j.sn == 0.0 || j.dn == 0.0 {
            return Err(EngelError::Pole { function: "cs", location: 0.0 });
        }
        Ok((2.0 * self.rho_norm).sqrt() * j.cn / (j.sn * j.dn))
    }

    /// `σ1 ln(k'² + cs²)`, an antiderivative of `β` in `v` up to scaling.
    fn f1(&self, j: JacobiScd) -> f64 {
        self.sign_beta_dot * 2.0 * (j.dn.ln() - j.sn.abs().ln())
    }

    /// Antiderivative of `β²`; built from
    /// `cs² nd² = ns² − k'² nd²` and `∫ nd² = (E(v) − k² sn cd) / k'²`.
    fn f2(&self, v: f64, j: JacobiScd) -> f64 {
        let k2 = self.modulus.k2();
        let g = v - 2.0 * jacobi_epsilon(v, self.modulus) - j.cn * j.dn / j.sn + k2 * j.sn * j.cn / j.dn;
        -self.sign_beta_dot * 2.0 * (2.0 * self.rho_norm).sqrt() * g
    }

    fn beta_dot(&self, beta: f64) -> f64 {
        let q = 0.5 * beta * beta + self.c1;
        self.sign_beta_dot * (q * q + self.c2_minus_c1_sq).sqrt()
    }
}

/// `β(s) = −(ξ3 + x1(s) ξ4)` along the geodesic.
pub fn beta_fn(params: &EllipticParams, s: f64) -> Result<f64> {
    params.check_domain(s)?;
    params.beta_at(jacobi_scd(params.arg(s), params.modulus))
}

/// `Bᵢ(s) = ∫₀ˢ βⁱ` for `i = 1..4`.
pub fn b_integrals(params: &EllipticParams, s: f64) -> Result<[f64; 4]> {
    params.check_domain(s)?;
    if s == 0.0 {
        return Ok([0.0; 4]);
    }
    let v = params.arg(s);
    let j = jacobi_scd(v, params.modulus);
    let beta = params.beta_at(j)?;
    let bd = params.beta_dot(beta);
    let [d1, d2, d3, d4] = params.d;
    let c1 = params.c1;
    let b1 = params.f1(j) + d1;
    let b2 = params.f2(v, j) + d2;
    let b3 = 2.0 * bd - 2.0 * c1 * b1 + d3;
    let b4 = (4.0 * beta * bd - 8.0 * c1 * b2 - 4.0 * params.c2 * s) / 3.0 + d4;
    Ok([b1, b2, b3, b4])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EllipticMethod {
    /// Coordinates from the `Bᵢ` closed forms.
    ClosedForm,
    /// Coordinates from quadrature of powers of the closed-form `x1`.
    Quadrature,
    /// Closed form unless `|ξ4|` is small enough for the `1/ξ4³`
    /// cancellation to matter.
    #[default]
    Auto,
}

/// Evaluator for the time-like geodesic with `ξ4 ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticGeodesic {
    pub params: EllipticParams,
    pub method: EllipticMethod,
}

impl EllipticGeodesic {
    pub fn new(xi: &Covector, method: EllipticMethod) -> Result<Self> {
        let params = elliptic_params(xi)?;
        let method = match method {
            EllipticMethod::Auto if xi.xi4().abs() < AUTO_QUADRATURE_XI4 => EllipticMethod::Quadrature,
            EllipticMethod::Auto => EllipticMethod::ClosedForm,
            m => m,
        };
        Ok(Self { params, method })
    }

    pub fn domain(&self) -> (f64, f64) {
        self.params.domain
    }

    pub fn x1(&self, s: f64) -> Result<f64> {
        let [_, _, xi3, xi4] = self.params.xi;
        if s == 0.0 {
            // exact start; beta(0) + xi3 is only zero to rounding
            return Ok(0.0);
        }
        Ok(-(beta_fn(&self.params, s)? + xi3) / xi4)
    }

    pub fn point(&self, s: f64) -> Result<EngelPoint> {
        match self.method {
            EllipticMethod::Quadrature => Ok(self.points(&[s])?[0]),
            _ => self.closed_form_point(s),
        }
    }

    fn closed_form_point(&self, s: f64) -> Result<EngelPoint> {
        if s == 0.0 {
            return Ok(EngelPoint::IDENTITY);
        }
        let p = &self.params;
        let [_, _, xi3, xi4] = p.xi;
        let c1 = p.c1;
        let beta = beta_fn(p, s)?;
        let [b1, b2, b3, b4] = b_integrals(p, s)?;
        let x1 = -(beta + xi3) / xi4;
        let x2 = (b2 + 2.0 * c1 * s) / (2.0 * xi4);
        let y = -(b3 + 2.0 * c1 * b1 + xi3 * b2 + 2.0 * c1 * xi3 * s) / (2.0 * xi4 * xi4) - 0.5 * x1 * x2;
        let z = (b4 + 2.0 * xi3 * b3 + (xi3 * xi3 + 2.0 * c1) * b2 + 4.0 * c1 * xi3 * b1 + 2.0 * c1 * xi3 * xi3 * s)
            / (4.0 * xi4.powi(3))
            + x2.powi(3) / 6.0;
        Ok(EngelPoint::new(x1, x2, y, z))
    }

    fn moments_point(&self, s: f64, m: [f64; 4]) -> Result<EngelPoint> {
        let [_, xi2, xi3, xi4] = self.params.xi;
        let x1 = self.x1(s)?;
        let x2 = xi2 * s + xi3 * m[0] + 0.5 * xi4 * m[1];
        let y = xi2 * m[0] + xi3 * m[1] + 0.5 * xi4 * m[2] - 0.5 * x1 * x2;
        let z = 0.5 * (xi2 * m[1] + xi3 * m[2] + 0.5 * xi4 * m[3]) + x2.powi(3) / 6.0;
        Ok(EngelPoint::new(x1, x2, y, z))
    }

    /// Points at several parameters; with the quadrature method the
    /// moments `∫ x1ⁿ` are accumulated between consecutive values.
    pub fn points(&self, s_values: &[f64]) -> Result<Vec<EngelPoint>> {
        if self.method != EllipticMethod::Quadrature {
            return s_values.iter().map(|&s| self.closed_form_point(s)).collect();
        }
        let mut out = Vec::with_capacity(s_values.len());
        let mut prev = 0.0;
        let mut acc = [0.0; 4];
        for &s in s_values {
            self.params.check_domain(s)?;
            let piece = quad::integrate_vec(
                |t| {
                    let x = self.x1(t).unwrap_or(f64::NAN);
                    [x, x * x, x * x * x, x * x * x * x]
                },
                prev,
                s,
                1e-13,
            );
            for i in 0..4 {
                acc[i] += piece[i];
            }
            prev = s;
            out.push(self.moments_point(s, acc)?);
        }
        Ok(out)
    }
}

/// Time-like geodesic for `ξ4 ≠ 0` with the automatic method.
pub fn timelike_elliptic(xi: &Covector, s: f64) -> Result<EngelPoint> {
    EllipticGeodesic::new(xi, EllipticMethod::Auto)?.point(s)
}

// ---------------------------------------------------------------- dispatch

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    LightLike(LightlikeGeodesic),
    Flat { xi1: f64, xi2: f64 },
    Hyperbolic(Covector),
    Elliptic(EllipticGeodesic),
    Abnormal(Branch),
}

/// A geodesic from the origin with a closed-form evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    pub case: GeodesicCase,
    pub covector: Covector,
    pub form: ClosedForm,
}

impl Geodesic {
    pub fn new(xi: &Covector) -> Result<Self> {
        Self::with_method(xi, EllipticMethod::Auto)
    }

    pub fn with_method(xi: &Covector, method: EllipticMethod) -> Result<Self> {
        xi.validate()?;
        let case = classify(xi);
        if matches!(case, GeodesicCase::TimelikeFlat | GeodesicCase::TimelikeHyperbolic) {
            warn_unnormalized(xi.xi1(), xi.xi2());
        }
        let form = match case {
            GeodesicCase::LightLike => ClosedForm::LightLike(LightlikeGeodesic::new(xi)?),
            GeodesicCase::TimelikeFlat => ClosedForm::Flat { xi1: xi.xi1(), xi2: xi.xi2() },
            GeodesicCase::TimelikeHyperbolic => ClosedForm::Hyperbolic(*xi),
            GeodesicCase::TimelikeElliptic => ClosedForm::Elliptic(EllipticGeodesic::new(xi, method)?),
            GeodesicCase::AbnormalSpacelike => return Self::abnormal(xi, Branch::Plus),
            GeodesicCase::Spacelike => {
                return Err(EngelError::Domain(
                    "space-like normal geodesics have no closed form; integrate numerically".into(),
                ))
            }
        };
        Ok(Self { case, covector: *xi, form })
    }

    /// Space-like abnormal extremal on the chosen branch.
    pub fn abnormal(xi: &Covector, branch: Branch) -> Result<Self> {
        use crate::hamiltonian::{abnormal_analyze, AbnormalResult, CausalTarget};
        match abnormal_analyze(xi, CausalTarget::Spacelike)? {
            AbnormalResult::Spacelike(_) => Ok(Self {
                case: GeodesicCase::AbnormalSpacelike,
                covector: *xi,
                form: ClosedForm::Abnormal(branch),
            }),
            _ => Err(EngelError::Domain(
                "no space-like abnormal extremal for this covector (needs xi3 = 0)".into(),
            )),
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        match &self.form {
            ClosedForm::LightLike(g) => g.domain(),
            ClosedForm::Elliptic(g) => g.domain(),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn point(&self, s: f64) -> Result<EngelPoint> {
        match &self.form {
            ClosedForm::LightLike(g) => g.point(s),
            ClosedForm::Flat { xi1, xi2 } => Ok(flat_point(*xi1, *xi2, s)),
            ClosedForm::Hyperbolic(xi) => Ok(hyperbolic_point(xi, s)),
            ClosedForm::Elliptic(g) => g.point(s),
            ClosedForm::Abnormal(b) => Ok(AbnormalCurve.point(*b, s)),
        }
    }

    pub fn points(&self, s_values: &[f64]) -> Result<Vec<EngelPoint>> {
        match &self.form {
            ClosedForm::Elliptic(g) => g.points(s_values),
            _ => s_values.iter().map(|&s| self.point(s)).collect(),
        }
    }

    /// Uniform samples `0, h, 2h, …` up to `s_max`, clipped to the
    /// pole-free domain. The second value is the clipping bound, if any.
    pub fn sample(&self, s_max: f64, h: f64) -> Result<(SampledCurve, Option<f64>)> {
        if !(h > 0.0 && h.is_finite()) || !(s_max > 0.0 && s_max.is_finite()) {
            return Err(EngelError::InvalidStep(format!("h = {h}, s_max = {s_max}")));
        }
        let n = (s_max / h).round().max(1.0) as usize;
        let step = s_max / n as f64;
        let hi = self.domain().1;
        let s: Vec<f64> = (0..=n).map(|i| i as f64 * step).take_while(|&s| s < hi).collect();
        let clipped = (s.len() < n + 1).then_some(hi);
        let points = self.points(&s)?;
        Ok((SampledCurve { s, points }, clipped))
    }
}

// ---------------------------------------------------------------- length

/// A curve given by parameter values and points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve {
    pub s: Vec<f64>,
    pub points: Vec<EngelPoint>,
}

impl SampledCurve {
    pub fn new(s: Vec<f64>, points: Vec<EngelPoint>) -> Result<Self> {
        if s.len() != points.len() {
            return Err(EngelError::Domain("parameter and point counts differ".into()));
        }
        if s.windows(2).any(|w| w[1] <= w[0]) {
            return Err(EngelError::Domain("parameters must increase strictly".into()));
        }
        Ok(Self { s, points })
    }
}

/// Anything that provides frame coefficients `(u1, u2)` of its velocity at
/// increasing parameters.
pub trait HorizontalSamples {
    /// `(s, u1, u2)` triples.
    fn controls(&self) -> Vec<(f64, f64, f64)>;
}

impl HorizontalSamples for Trajectory {
    fn controls(&self) -> Vec<(f64, f64, f64)> {
        self.samples
            .iter()
            .map(|st| {
                let (z1, z2) = zeta(st);
                (st.s, -z1, z2)
            })
            .collect()
    }
}

impl HorizontalSamples for SampledCurve {
    /// Second-order finite differences (one-sided at the ends) of `x1`, `x2`.
    fn controls(&self) -> Vec<(f64, f64, f64)> {
        let n = self.s.len();
        if n < 2 {
            return self.s.iter().map(|&s| (s, 0.0, 0.0)).collect();
        }
        let x1: Vec<f64> = self.points.iter().map(|p| p.x1).collect();
        let x2: Vec<f64> = self.points.iter().map(|p| p.x2).collect();
        let d1 = gradient(&self.s, &x1);
        let d2 = gradient(&self.s, &x2);
        (0..n).map(|i| (self.s[i], d1[i], d2[i])).collect()
    }
}

fn gradient(t: &[f64], f: &[f64]) -> Vec<f64> {
    let n = t.len();
    if n == 2 {
        let d = (f[1] - f[0]) / (t[1] - t[0]);
        return vec![d, d];
    }
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        let (h0, h1) = (t[i] - t[i - 1], t[i + 1] - t[i]);
        out[i] = (h0 * h0 * f[i + 1] - h1 * h1 * f[i - 1] + (h1 * h1 - h0 * h0) * f[i]) / (h0 * h1 * (h0 + h1));
    }
    let (h0, h1) = (t[1] - t[0], t[2] - t[1]);
    out[0] = (-(2.0 * h0 + h1) * h1 * f[0] + (h0 + h1) * (h0 + h1) * f[1] - h0 * h0 * f[2]) / (h0 * h1 * (h0 + h1));
    let (h0, h1) = (t[n - 2] - t[n - 3], t[n - 1] - t[n - 2]);
    out[n - 1] = (h1 * h1 * f[n - 3] - (h0 + h1) * (h0 + h1) * f[n - 2] + (2.0 * h1 + h0) * h0 * f[n - 1])
        / (h0 * h1 * (h0 + h1));
    out
}

/// Composite Simpson on uniform grids (with a closing 3/8 panel for an odd
/// number of intervals), trapezoid otherwise.
fn integrate_samples(t: &[f64], f: &[f64]) -> f64 {
    let n = t.len();
    if n < 2 {
        return 0.0;
    }
    let h = (t[n - 1] - t[0]) / (n - 1) as f64;
    let uniform = t.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs());
    let intervals = n - 1;
    if !uniform || intervals < 2 {
        return t.windows(2).zip(f.windows(2)).map(|(tw, fw)| 0.5 * (tw[1] - tw[0]) * (fw[0] + fw[1])).sum();
    }
    let simpson = |lo: usize, hi: usize| -> f64 {
        let mut acc = f[lo] + f[hi];
        for i in lo + 1..hi {
            acc += if (i - lo) % 2 == 1 { 4.0 * f[i] } else { 2.0 * f[i] };
        }
        acc * h / 3.0
    };
    if intervals % 2 == 0 {
        simpson(0, n - 1)
    } else {
        let m = n - 4;
        let head = if m > 0 { simpson(0, m) } else { 0.0 };
        head + 3.0 * h / 8.0 * (f[m] + 3.0 * f[m + 1] + 3.0 * f[m + 2] + f[m + 3])
    }
}

/// Sub-Lorentzian length `∫ √(u1² − u2²)` of a non-space-like curve.
///
/// A sample whose velocity is space-like beyond rounding fails with
/// [`EngelError::NotCausal`].
pub fn curve_length<C: HorizontalSamples + ?Sized>(curve: &C) -> Result<f64> {
    let ctrl = curve.controls();
    let mut t = Vec::with_capacity(ctrl.len());
    let mut f = Vec::with_capacity(ctrl.len());
    for (i, &(s, u1, u2)) in ctrl.iter().enumerate() {
        let scale = (u1 * u1 + u2 * u2).max(1.0);
        let class = classify_coefficients(u1, u2, 1e-9 * scale);
        if class.kind == CausalKind::Spacelike {
            return Err(EngelError::NotCausal { index: i, value: -u1 * u1 + u2 * u2 });
        }
        t.push(s);
        f.push(match class.kind {
            CausalKind::Null | CausalKind::Zero => 0.0,
            _ => (u1 * u1 - u2 * u2).sqrt(),
        });
    }
    Ok(integrate_samples(&t, &f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fig2a() -> Covector {
        Covector::normal(1.0, 0.0, 1.0, 1.0)
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&Covector::normal(1.0, 1.0, 0.0, 0.0)), GeodesicCase::LightLike);
        assert_eq!(
            classify(&Covector::normal(2f64.sqrt(), 1.0, 1.0, 0.0)),
            GeodesicCase::TimelikeHyperbolic
        );
        assert_eq!(classify(&fig2a()), GeodesicCase::TimelikeElliptic);
        assert_eq!(classify(&Covector::normal(1.0, 0.0, 0.0, 0.0)), GeodesicCase::TimelikeFlat);
        assert_eq!(classify(&Covector::normal(0.0, 1.0, 0.0, 0.0)), GeodesicCase::Spacelike);
    }

    #[test]
    fn lightlike_formula() {
        assert_eq!(lightlike_geodesic(1.0, 1.0), EngelPoint::new(1.0, 1.0, 0.0, 1.0 / 3.0));
        assert_eq!(lightlike_geodesic(-1.0, 2.0), EngelPoint::new(2.0, -2.0, 0.0, -8.0 / 3.0));
        assert_eq!(lightlike_geodesic(1.0, 0.0), EngelPoint::IDENTITY);
    }

    #[test]
    fn lightlike_riccati_derivative() {
        for xi in [[1.0, 1.0, 0.5, 0.3], [2.0, -2.0, -1.0, 0.7], [1.0, 1.0, 1.0, -2.0], [1.0, -1.0, 0.0, 0.4]] {
            let cov = Covector::normal(xi[0], xi[1], xi[2], xi[3]);
            let g = LightlikeGeodesic::new(&cov).unwrap();
            let (_, hi) = g.domain();
            let s = 0.3f64.min(0.5 * hi);
            let h = 1e-5;
            let t = g.parameter(s).unwrap();
            let dt = (g.parameter(s + h).unwrap() - g.parameter(s - h).unwrap()) / (2.0 * h);
            assert_abs_diff_eq!(dt, g.a + g.b * t + g.c * t * t, epsilon = 1e-7);
            assert_eq!(g.parameter(0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn flat_examples() {
        assert_eq!(timelike_flat(1.0, 0.0, 1.0), EngelPoint::new(-1.0, 0.0, 0.0, 0.0));
        let p = timelike_flat(2f64.sqrt(), 1.0, 1.0);
        assert_abs_diff_eq!(p.z, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(arclength_flat(&p).unwrap(), 1.0, epsilon = 1e-15);
        let q = EngelPoint::new(-2.0 * 2f64.sqrt(), 2.0, 0.0, 4.0);
        assert_abs_diff_eq!(arclength_flat(&q).unwrap(), 2.0, epsilon = 1e-15);
        assert!(arclength_flat(&EngelPoint::new(0.0, 1.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn hyperbolic_origin_and_wrong_case() {
        let xi = Covector::normal(2f64.sqrt(), 1.0, 1.0, 0.0);
        assert!(timelike_hyperbolic(&xi, 0.0).unwrap().max_abs_diff(&EngelPoint::IDENTITY) < 1e-12);
        let bad = Covector::normal(1.0, 0.0, 0.0, 0.0);
        assert!(matches!(
            timelike_hyperbolic(&bad, 1.0),
            Err(EngelError::WrongCase { detected: GeodesicCase::TimelikeFlat, .. })
        ));
    }

    #[test]
    fn elliptic_constants() {
        let p = elliptic_params(&fig2a()).unwrap();
        assert_abs_diff_eq!(p.c1, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p.c2, 1.25, epsilon = 1e-15);
        assert_abs_diff_eq!(p.c2 - p.c1 * p.c1, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.modulus.k2(), 0.5 + 0.5 / 5f64.sqrt(), epsilon = 1e-14);
        assert!(p.g_frak > 0.0);
        assert!(p.domain.0 < 0.0 && p.domain.1 > 0.0);
        let q = elliptic_params(&Covector::normal(1.0, 0.0, 0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(q.phi1, std::f64::consts::PI, epsilon = 1e-15);
    }

    #[test]
    fn beta_initial_value_and_slope() {
        for xi in [[1.0, 0.0, 1.0, 1.0], [1.0, 0.0, -1.0, 1.0], [-1.2, 0.663, 0.4, -0.8], [1.0, 0.0, 0.0, 2.0]] {
            let cov = Covector::normal(xi[0], xi[1], xi[2], xi[3]);
            let p = elliptic_params(&cov).unwrap();
            assert_abs_diff_eq!(beta_fn(&p, 0.0).unwrap(), -xi[2], epsilon = 1e-12);
            let h = 1e-6;
            let d = (beta_fn(&p, h).unwrap() - beta_fn(&p, -h).unwrap()) / (2.0 * h);
            assert_abs_diff_eq!(d, xi[3] * xi[0], epsilon = 1e-6);
        }
    }

    #[test]
    fn b_integrals_vanish_at_zero_and_differentiate_to_powers() {
        let p = elliptic_params(&fig2a()).unwrap();
        assert_eq!(b_integrals(&p, 0.0).unwrap(), [0.0; 4]);
        let (s, h) = (0.4, 1e-4);
        let bp = b_integrals(&p, s + h).unwrap();
        let bm = b_integrals(&p, s - h).unwrap();
        let beta = beta_fn(&p, s).unwrap();
        for i in 0..4 {
            let fd = (bp[i] - bm[i]) / (2.0 * h);
            let exact = beta.powi(i as i32 + 1);
            assert!(((fd - exact) / exact).abs() < 1e-6, "B{}", i + 1);
        }
    }

    #[test]
    fn elliptic_methods_agree() {
        let xi = fig2a();
        let a = EllipticGeodesic::new(&xi, EllipticMethod::ClosedForm).unwrap();
        let b = EllipticGeodesic::new(&xi, EllipticMethod::Quadrature).unwrap();
        let s = [0.25, 0.5, 1.0];
        let pa = a.points(&s).unwrap();
        let pb = b.points(&s).unwrap();
        for (x, y) in pa.iter().zip(&pb) {
            assert!(x.max_abs_diff(y) < 1e-10, "{x:?} vs {y:?}");
        }
        assert!(a.point(0.0).unwrap().max_abs_diff(&EngelPoint::IDENTITY) < 1e-12);
    }

    #[test]
    fn elliptic_outside_domain() {
        let g = EllipticGeodesic::new(&fig2a(), EllipticMethod::ClosedForm).unwrap();
        let hi = g.domain().1;
        assert!(matches!(g.point(hi + 1.0), Err(EngelError::OutsideDomain { .. })));
    }

    #[test]
    fn lengths() {
        let s: Vec<f64> = (0..=100).map(|i| i as f64 * 0.01).collect();
        let line: Vec<EngelPoint> = s.iter().map(|&t| EngelPoint::new(3.0 * t, 0.0, 0.0, 0.0)).collect();
        let c = SampledCurve::new(s.clone(), line).unwrap();
        assert_abs_diff_eq!(curve_length(&c).unwrap(), 3.0, epsilon = 1e-12);
        let null: Vec<EngelPoint> = s.iter().map(|&t| lightlike_geodesic(1.0, t)).collect();
        assert_eq!(curve_length(&SampledCurve::new(s.clone(), null).unwrap()).unwrap(), 0.0);
        let space: Vec<EngelPoint> = s.iter().map(|&t| EngelPoint::new(0.0, t, 0.0, 0.0)).collect();
        assert!(matches!(
            curve_length(&SampledCurve::new(s, space).unwrap()),
            Err(EngelError::NotCausal { index: 0, .. })
        ));
    }

    #[test]
    fn odd_interval_count_uses_three_eighths_closure() {
        let t: Vec<f64> = (0..=7).map(|i| i as f64 / 7.0).collect();
        let f: Vec<f64> = t.iter().map(|x| x * x * x).collect();
        assert_abs_diff_eq!(integrate_samples(&t, &f), 0.25, epsilon = 1e-14);
    }
}
