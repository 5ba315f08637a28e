//! Oracles shared by the integration tests. Nothing here calls the library
//! evaluators it is used to check.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normal system written out by hand from `H = (−ζ1² + ζ2²)/2`:
/// state `(x1, x2, y, z, ξ1, ξ2, ξ3, ξ4)`.
pub fn rhs(w: &[f64; 8]) -> [f64; 8] {
    let [x1, x2, _y, _z, p1, p2, p3, p4] = *w;
    let z1 = p1 - 0.5 * x2 * p3;
    let z2 = p2 + 0.5 * x1 * p3 + 0.5 * (x1 * x1 + x2 * x2) * p4;
    let (u1, u2) = (-z1, z2);
    [
        u1,
        u2,
        -0.5 * x2 * u1 + 0.5 * x1 * u2,
        0.5 * (x1 * x1 + x2 * x2) * u2,
        -z2 * (0.5 * p3 + x1 * p4),
        -0.5 * z1 * p3 - z2 * x2 * p4,
        0.0,
        0.0,
    ]
}

/// Classic RK4 from the origin; returns `(s, state)` at every step.
pub fn rk4(xi: [f64; 4], s_end: f64, h: f64) -> Vec<(f64, [f64; 8])> {
    let n = (s_end / h).round().max(1.0) as usize;
    let step = s_end / n as f64;
    let mut w = [0.0, 0.0, 0.0, 0.0, xi[0], xi[1], xi[2], xi[3]];
    let mut out = vec![(0.0, w)];
    let add = |a: &[f64; 8], k: &[f64; 8], c: f64| -> [f64; 8] { std::array::from_fn(|i| a[i] + c * k[i]) };
    for i in 1..=n {
        let k1 = rhs(&w);
        let k2 = rhs(&add(&w, &k1, 0.5 * step));
        let k3 = rhs(&add(&w, &k2, 0.5 * step));
        let k4 = rhs(&add(&w, &k3, step));
        w = std::array::from_fn(|j| w[j] + step / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]));
        out.push((i as f64 * step, w));
    }
    out
}

pub fn zeta(w: &[f64; 8]) -> (f64, f64) {
    let [x1, x2, _, _, p1, p2, p3, p4] = *w;
    (p1 - 0.5 * x2 * p3, p2 + 0.5 * x1 * p3 + 0.5 * (x1 * x1 + x2 * x2) * p4)
}

pub fn hamiltonian(w: &[f64; 8]) -> f64 {
    let (z1, z2) = zeta(w);
    0.5 * (-z1 * z1 + z2 * z2)
}

pub fn max_diff(a: [f64; 4], b: &[f64]) -> f64 {
    (0..4).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}

/// Adaptive Simpson quadrature.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Normalized time-like costate with `ξ4 = 0` and `0.3 <= |ξ3| <= 1.5`.
pub fn random_hyperbolic(r: &mut ChaCha8Rng) -> [f64; 4] {
    let xi2: f64 = r.gen_range(-1.0..1.0);
    let xi1 = sign(r) * (1.0 + xi2 * xi2).sqrt();
    [xi1, xi2, sign(r) * r.gen_range(0.3..1.5), 0.0]
}

/// Normalized time-like costate with `0.2 <= |ξ4| <= 1.5`.
pub fn random_elliptic(r: &mut ChaCha8Rng) -> [f64; 4] {
    let xi2: f64 = r.gen_range(-1.0..1.0);
    let xi1 = sign(r) * (1.0 + xi2 * xi2).sqrt();
    [xi1, xi2, r.gen_range(-2.0..2.0), sign(r) * r.gen_range(0.2..1.5)]
}

pub fn sign(r: &mut ChaCha8Rng) -> f64 {
    if r.gen_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

pub const SQRT5_2: f64 = 1.118_033_988_749_895;

pub fn figure1() -> [[f64; 4]; 3] {
    [[std::f64::consts::SQRT_2, 1.0, 1.0, 0.0], [SQRT5_2, 0.5, 1.0, 0.0], [SQRT5_2, 0.5, -1.0, 0.0]]
}

pub fn figure2() -> [[f64; 4]; 3] {
    [[1.0, 0.0, 1.0, 1.0], [SQRT5_2, 0.5, 2.0, 1.0], [SQRT5_2, 0.5, 1.0, 1.0]]
}
