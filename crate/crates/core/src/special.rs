//! Real-argument elliptic integrals and Jacobi elliptic functions.
//!
//! The modulus is carried as the parameter `k²` together with its complement
//! `k'² = 1 − k²`, so that callers who know `k'²` more accurately than
//! `1 − k²` (moduli close to one) can pass it directly.
//!
//! Incomplete integrals use Carlson's symmetric forms `R_F`, `R_D` on the
//! principal amplitude range and the quasi-periodic extension outside it.
//! The amplitude `am(u, k)` comes from the descending Landen (AGM) scheme,
//! after reducing `u` modulo `2K`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{EngelError, Result};

/// Below this distance from 0 or 1 the trigonometric / hyperbolic limits
/// are used.
pub const MODULUS_LIMIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    k2: f64,
    kp2: f64,
}

impl EllipticModulus {
    pub fn new(k2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k2) {
            return Err(EngelError::ModulusDomain(k2));
        }
        Ok(Self { k2, kp2: 1.0 - k2 })
    }

    pub fn from_k(k: f64) -> Result<Self> {
        Self::new(k * k)
    }

    /// Modulus from `k²` and an independently computed `k'²`.
    pub fn with_complement(k2: f64, kp2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k2) || !(0.0..=1.0).contains(&kp2) {
            return Err(EngelError::ModulusDomain(k2));
        }
        if (k2 + kp2 - 1.0).abs() > 1e-12 {
            return Err(EngelError::Domain(format!(
                "k^2 + k'^2 = {} is not 1",
                k2 + kp2
            )));
        }
        Ok(Self { k2, kp2 })
    }

    pub fn k(&self) -> f64 {
        self.k2.sqrt()
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    /// Complementary parameter `k'² = 1 − k²`.
    pub fn kp2(&self) -> f64 {
        self.kp2
    }

    fn is_circular(&self) -> bool {
        self.k2 <= MODULUS_LIMIT_TOL
    }

    fn is_hyperbolic(&self) -> bool {
        self.kp2 <= MODULUS_LIMIT_TOL
    }
}

/// Carlson's `R_F(x, y, z)`; at most one argument may be zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 5e-4;
    let (mut x, mut y, mut z) = (x, y, z);
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        let ave = (x + y + z) / 3.0;
        let dx = (ave - x) / ave;
        let dy = (ave - y) / ave;
        let dz = (ave - z) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) < ERRTOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / ave.sqrt();
        }
    }
}

/// Carlson's `R_D(x, y, z)`; `x`, `y` not both zero, `z > 0`.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 2e-4;
    const C1: f64 = 3.0 / 14.0;
    const C2: f64 = 1.0 / 6.0;
    const C3: f64 = 9.0 / 22.0;
    const C4: f64 = 3.0 / 26.0;
    const C5: f64 = 0.25 * C3;
    const C6: f64 = 1.5 * C4;
    let (mut x, mut y, mut z) = (x, y, z);
    let mut sum = 0.0;
    let mut fac = 1.0;
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lambda));
        fac *= 0.25;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        let ave = 0.2 * (x + y + 3.0 * z);
        let dx = (ave - x) / ave;
        let dy = (ave - y) / ave;
        let dz = (ave - z) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) < ERRTOL {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            return 3.0 * sum
                + fac
                    * (1.0
                        + ed * (-C1 + C5 * ed - C6 * dz * ee)
                        + dz * (C2 * ee + dz * (-C3 * ec + dz * C4 * ea)))
                    / (ave * ave.sqrt());
        }
    }
}

/// Arithmetic–geometric mean.
pub fn agm(a: f64, b: f64) -> f64 {
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    0.5 * (a + b)
}

/// Complete integral of the first kind `K(k)`; infinite at `k = 1`.
pub fn complete_k(m: EllipticModulus) -> f64 {
    if m.kp2 == 0.0 {
        return f64::INFINITY;
    }
    FRAC_PI_2 / agm(1.0, m.kp2.sqrt())
}

/// Complete integral of the second kind `E(k)`.
pub fn complete_e(m: EllipticModulus) -> f64 {
    if m.kp2 == 0.0 {
        return 1.0;
    }
    carlson_rf(0.0, m.kp2, 1.0) - m.k2 / 3.0 * carlson_rd(0.0, m.kp2, 1.0)
}

/// Splits `phi = n π + r` with `r ∈ [−π/2, π/2]`.
fn reduce_amplitude(phi: f64) -> (f64, f64) {
    let n = (phi / PI).round();
    (n, phi - n * PI)
}

/// `1 − k² sin² φ`, written to stay accurate when `k'²` is tiny.
fn delta_sq(c: f64, s: f64, m: EllipticModulus) -> f64 {
    c * c + m.kp2 * s * s
}

/// Incomplete elliptic integral of the first kind
/// `F(φ, k) = ∫₀^φ dt / √(1 − k² sin² t)`, any real `φ`.
pub fn elliptic_f(phi: f64, m: EllipticModulus) -> Result<f64> {
    if !phi.is_finite() {
        return Err(EngelError::Domain(format!("amplitude {phi}")));
    }
    if m.is_circular() {
        return Ok(phi);
    }
    let (n, r) = reduce_amplitude(phi);
    if m.is_hyperbolic() {
        if n != 0.0 || r.abs() >= FRAC_PI_2 {
            return Err(EngelError::Domain(format!(
                "F(phi, k=1) diverges at |phi| >= pi/2 (phi = {phi})"
            )));
        }
        return Ok(r.tan().asinh());
    }
    let (s, c) = r.sin_cos();
    let partial = s * carlson_rf(c * c, delta_sq(c, s, m), 1.0);
    Ok(if n == 0.0 {
        partial
    } else {
        2.0 * n * complete_k(m) + partial
    })
}

/// Incomplete elliptic integral of the second kind in the amplitude,
/// `E(φ, k) = ∫₀^φ √(1 − k² sin² t) dt`.
pub fn elliptic_e_amplitude(phi: f64, m: EllipticModulus) -> Result<f64> {
    if !phi.is_finite() {
        return Err(EngelError::Domain(format!("amplitude {phi}")));
    }
    if m.is_circular() {
        return Ok(phi);
    }
    let (n, r) = reduce_amplitude(phi);
    let (s, c) = r.sin_cos();
    let partial = if m.is_hyperbolic() {
        s
    } else {
        let d2 = delta_sq(c, s, m);
        s * carlson_rf(c * c, d2, 1.0) - m.k2 / 3.0 * s * s * s * carlson_rd(c * c, d2, 1.0)
    };
    Ok(if n == 0.0 {
        partial
    } else {
        2.0 * n * complete_e(m) + partial
    })
}

/// Jacobi amplitude on the reduced range `|u| <= K` via descending Landen.
fn am_reduced(u: f64, m: EllipticModulus) -> f64 {
    const MAX_STEPS: usize = 48;
    let mut a = [0.0; MAX_STEPS + 1];
    let mut c = [0.0; MAX_STEPS + 1];
    a[0] = 1.0;
    let mut b = m.kp2.sqrt();
    c[0] = m.k();
    let mut n = 0;
    while c[n].abs() > f64::EPSILON * a[n] && n < MAX_STEPS {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
    }
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    phi
}

/// Jacobi amplitude `am(u, k)`.
pub fn jacobi_am(u: f64, m: EllipticModulus) -> f64 {
    if m.is_circular() {
        return u;
    }
    if m.is_hyperbolic() {
        return u.sinh().atan();
    }
    let kk = complete_k(m);
    let n = (u / (2.0 * kk)).round();
    let r = u - 2.0 * n * kk;
    n * PI + am_reduced(r, m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiScd {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// `sn`, `cn`, `dn` at real argument `u`.
pub fn jacobi_scd(u: f64, m: EllipticModulus) -> JacobiScd {
    if m.is_circular() {
        let (sn, cn) = u.sin_cos();
        return JacobiScd { sn, cn, dn: 1.0 };
    }
    if m.is_hyperbolic() {
        let sech = 1.0 / u.cosh();
        return JacobiScd {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        };
    }
    let (sn, cn) = jacobi_am(u, m).sin_cos();
    let dn = (cn * cn + m.kp2 * sn * sn).sqrt();
    JacobiScd { sn, cn, dn }
}

/// Jacobi epsilon `E(u, k) = ∫₀ᵘ dn²(t, k) dt = E(am(u, k), k)`.
pub fn jacobi_epsilon(u: f64, m: EllipticModulus) -> f64 {
    if m.is_circular() {
        return u;
    }
    if m.is_hyperbolic() {
        return u.tanh();
    }
    let kk = complete_k(m);
    let n = (u / (2.0 * kk)).round();
    let r = u - 2.0 * n * kk;
    let eps_r = elliptic_e_amplitude(am_reduced(r, m), m).expect("finite amplitude");
    if n == 0.0 {
        eps_r
    } else {
        2.0 * n * complete_e(m) + eps_r
    }
}

/// True when `u` lies within rounding distance of `offset + j·period`.
fn near_lattice(u: f64, period: f64, offset: f64) -> Option<f64> {
    if !period.is_finite() {
        return ((u - offset).abs() <= 8.0 * f64::EPSILON * u.abs().max(1.0)).then_some(offset);
    }
    let j = ((u - offset) / period).round();
    let pole = offset + j * period;
    let scale = u.abs().max(period).max(1.0);
    ((u - pole).abs() <= 8.0 * f64::EPSILON * scale).then_some(pole)
}

/// `cs = cn / sn`; poles at `u = 2jK`.
pub fn jacobi_cs(u: f64, m: EllipticModulus) -> Result<f64> {
    let kk = complete_k(m);
    let JacobiScd { sn, cn, .. } = jacobi_scd(u, m);
    if sn == 0.0 {
        return Err(EngelError::Pole { function: "cs", location: u });
    }
    if let Some(location) = near_lattice(u, 2.0 * kk, 0.0) {
        return Err(EngelError::Pole { function: "cs", location });
    }
    Ok(cn / sn)
}

/// `nd = 1 / dn`; finite for all real `u` when `k² < 1`.
pub fn jacobi_nd(u: f64, m: EllipticModulus) -> Result<f64> {
    let dn = jacobi_scd(u, m).dn;
    if dn == 0.0 {
        return Err(EngelError::Pole { function: "nd", location: u });
    }
    Ok(1.0 / dn)
}

/// `tn = sn / cn`; poles at `u = (2j + 1)K`.
pub fn jacobi_tn(u: f64, m: EllipticModulus) -> Result<f64> {
    let kk = complete_k(m);
    let JacobiScd { sn, cn, .. } = jacobi_scd(u, m);
    if cn == 0.0 {
        return Err(EngelError::Pole { function: "tn", location: u });
    }
    if kk.is_finite() {
        if let Some(location) = near_lattice(u, 2.0 * kk, kk) {
            return Err(EngelError::Pole { function: "tn", location });
        }
    }
    Ok(sn / cn)
}

/// `(cs, nd, tn)` at `u`; fails at a pole of any of the three.
pub fn jacobi_quotients(u: f64, m: EllipticModulus) -> Result<(f64, f64, f64)> {
    Ok((jacobi_cs(u, m)?, jacobi_nd(u, m)?, jacobi_tn(u, m)?))
}

/// Inverse of `cn` on its principal branch: `cn⁻¹(y, k) = F(arccos y, k)`,
/// with values in `[0, 2K]`.
pub fn inverse_cn(y: f64, m: EllipticModulus) -> Result<f64> {
    if !(-1.0..=1.0).contains(&y) {
        return Err(EngelError::Domain(format!("cn^-1 argument {y} outside [-1, 1]")));
    }
    elliptic_f(y.acos(), m)
}
