//! Reference computations that share no code with the library paths they check.
#![allow(dead_code, clippy::excessive_precision)]

use std::f64::consts::FRAC_PI_2;

// Kronrod 15-point nodes/weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (v, err) = gk15(f, a, b);
    // the Kronrod-Gauss gap bottoms out at rounding level, so stop there too
    if err <= tol || err <= 50.0 * f64::EPSILON * v.abs() || depth == 0 {
        return v;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss–Kronrod quadrature.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    adapt(&f, a, b, tol, 30)
}

/// `∫₀^{π/2} (1 - m sin²θ)^{-1/2} dθ`
pub fn k_quadrature(m: f64) -> f64 {
    integrate(
        |t| (1.0 - m * t.sin().powi(2)).powf(-0.5),
        0.0,
        FRAC_PI_2,
        1e-15,
    )
}

/// `∫₀^{π/2} (1 - m sin²θ)^{1/2} dθ`
pub fn e_quadrature(m: f64) -> f64 {
    integrate(
        |t| (1.0 - m * t.sin().powi(2)).sqrt(),
        0.0,
        FRAC_PI_2,
        1e-15,
    )
}

/// Integrates `sn' = cn dn, cn' = -sn dn, dn' = -m sn cn` from `(0, 1, 1)` with
/// classical RK4, returning `(sn, cn, dn)` at each of the sorted `targets >= 0`.
pub fn jacobi_ode(m: f64, targets: &[f64]) -> Vec<[f64; 3]> {
    const MAX_STEP: f64 = 2e-4;
    let rhs = |y: [f64; 3]| [y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]];
    let mut y = [0.0, 1.0, 1.0];
    let mut t = 0.0;
    let mut out = Vec::with_capacity(targets.len());
    for &target in targets {
        assert!(target >= t, "targets must be sorted");
        let n = ((target - t) / MAX_STEP).ceil().max(1.0) as usize;
        let h = (target - t) / n as f64;
        for _ in 0..n {
            let k1 = rhs(y);
            let k2 = rhs(std::array::from_fn(|i| y[i] + 0.5 * h * k1[i]));
            let k3 = rhs(std::array::from_fn(|i| y[i] + 0.5 * h * k2[i]));
            let k4 = rhs(std::array::from_fn(|i| y[i] + h * k3[i]));
            y = std::array::from_fn(|i| {
                y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            });
        }
        t = target;
        out.push(y);
    }
    out
}
