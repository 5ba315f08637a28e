//! Adaptive Gauss–Kronrod (7/15) quadrature for smooth integrands.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel applied to `N` integrands at once. Returns the Kronrod
/// estimates and the largest Gauss–Kronrod difference.
fn panel<const N: usize, F: Fn(f64) -> [f64; N]>(f: &F, a: f64, b: f64) -> ([f64; N], f64) {
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let fc = f(c);
    let mut kron: [f64; N] = std::array::from_fn(|i| WGK[7] * fc[i]);
    let mut gauss: [f64; N] = std::array::from_fn(|i| WG[3] * fc[i]);
    for j in 0..7 {
        let dx = hw * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        for i in 0..N {
            let sum = f1[i] + f2[i];
            kron[i] += WGK[j] * sum;
            if j % 2 == 1 {
                gauss[i] += WG[j / 2] * sum;
            }
        }
    }
    let mut err: f64 = 0.0;
    for i in 0..N {
        kron[i] *= hw;
        gauss[i] *= hw;
        err = err.max((kron[i] - gauss[i]).abs());
    }
    (kron, err)
}

/// Largest number of panels the global bisection may create.
const MAX_PANELS: usize = 4000;

/// Integrates a vector-valued function over `[a, b]` to absolute tolerance
/// `tol` (estimated, summed over panels). Globally adaptive: the panel with
/// the largest error estimate is bisected until the total error is below
/// `tol` or the panel budget is spent.
pub fn integrate_vec<const N: usize, F: Fn(f64) -> [f64; N]>(f: F, a: f64, b: f64, tol: f64) -> [f64; N] {
    if a == b {
        return [0.0; N];
    }
    let (est, err) = panel(&f, a, b);
    let mut panels = vec![(a, b, est, err)];
    let mut total = err;
    while total > tol && panels.len() < MAX_PANELS {
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let (l, le) = panel(&f, lo, mid);
        let (r, re) = panel(&f, mid, hi);
        panels.push((lo, mid, l, le));
        panels.push((mid, hi, r, re));
        total = panels.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            break;
        }
    }
    let mut out = [0.0; N];
    for p in &panels {
        for i in 0..N {
            out[i] += p.2[i];
        }
    }
    out
}

/// Scalar convenience wrapper around [`integrate_vec`].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    integrate_vec(|x| [f(x)], a, b, tol)[0]
}
