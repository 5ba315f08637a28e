//! Browser bindings for the demo page in `www/`. Every function returns a
//! flat `Float64Array`-friendly vector so the page can draw it directly.

use engel_slr::geodesics::timelike_hyperbolic;
use engel_slr::reachability::{ratio_profile, reachable_ratio};
use engel_slr::special::{jacobi_scd, EllipticModulus};
use engel_slr::{Covector, Geodesic};
use wasm_bindgen::prelude::*;

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// Case name for a normal covector, e.g. `"TimelikeElliptic"`.
#[wasm_bindgen]
pub fn geodesic_case(xi1: f64, xi2: f64, xi3: f64, xi4: f64) -> String {
    engel_slr::classify(&Covector::normal(xi1, xi2, xi3, xi4)).to_string()
}

/// `(x1, x2)` projection of the normal geodesic from the origin, sampled with
/// step `h` up to `s_max` or the first pole. Layout: `[s_end, x1, x2, x1, x2, ...]`.
#[wasm_bindgen]
pub fn geodesic_projection(xi1: f64, xi2: f64, xi3: f64, xi4: f64, s_max: f64, h: f64) -> Result<Vec<f64>, JsError> {
    let g = Geodesic::new(&Covector::normal(xi1, xi2, xi3, xi4)).map_err(js_err)?;
    let (curve, _) = g.sample(s_max, h).map_err(js_err)?;
    let mut out = Vec::with_capacity(1 + 2 * curve.points.len());
    out.push(curve.s.last().copied().unwrap_or(0.0));
    for p in &curve.points {
        out.push(p.x1);
        out.push(p.x2);
    }
    Ok(out)
}

/// The ratio profile on `n` points of `[-tau_max, tau_max]`, followed by the
/// `(τ, ratio)` pairs of `m` sampled endpoints with `ξ2 = xi2`, `ξ3 = 1`.
/// Layout: `[tau.., profile.., tau_1, ratio_1, ...]`.
#[wasm_bindgen]
pub fn ratio_curve(tau_max: f64, n: usize, xi2: f64, m: usize) -> Result<Vec<f64>, JsError> {
    let n = n.max(2);
    let tau: Vec<f64> = (0..n).map(|i| -tau_max + 2.0 * tau_max * i as f64 / (n - 1) as f64).collect();
    let mut out = tau.clone();
    out.extend(tau.iter().map(|&t| ratio_profile(t)));
    let c = Covector::normal((1.0 + xi2 * xi2).sqrt(), xi2, 1.0, 0.0);
    for k in 1..=m {
        let s = 2.0 * tau_max * k as f64 / m as f64;
        let p = timelike_hyperbolic(&c, s).map_err(js_err)?;
        out.push(0.5 * s);
        out.push(reachable_ratio(&p).map_err(js_err)?);
    }
    Ok(out)
}

/// `sn`, `cn`, `dn` at `n` points of `[0, u_max]` for modulus `k`.
/// Layout: `[u.., sn.., cn.., dn..]`.
#[wasm_bindgen]
pub fn jacobi_curves(k: f64, u_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
    let m = EllipticModulus::from_k(k).map_err(js_err)?;
    let n = n.max(2);
    let u: Vec<f64> = (0..n).map(|i| u_max * i as f64 / (n - 1) as f64).collect();
    let v: Vec<_> = u.iter().map(|&x| jacobi_scd(x, m)).collect();
    let mut out = u;
    out.extend(v.iter().map(|j| j.sn));
    out.extend(v.iter().map(|j| j.cn));
    out.extend(v.iter().map(|j| j.dn));
    Ok(out)
}
