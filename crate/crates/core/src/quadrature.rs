//! One-dimensional rules used for tensor-product surface integrals.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Equispaced rule for periodic integrands.
    Trapezoid,
    GaussLegendre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadratureSpec {
    pub nx: usize,
    pub ny: usize,
    pub rule: Rule,
}

impl QuadratureSpec {
    pub const MIN_POINTS: usize = 8;

    pub fn new(nx: usize, ny: usize, rule: Rule) -> Result<Self> {
        if nx < Self::MIN_POINTS || ny < Self::MIN_POINTS {
            return Err(Error::InvalidParams(format!(
                "quadrature needs at least {} points per direction (got {nx}x{ny})",
                Self::MIN_POINTS
            )));
        }
        Ok(Self { nx, ny, rule })
    }

    pub fn trapezoid(n: usize) -> Result<Self> {
        Self::new(n, n, Rule::Trapezoid)
    }
}

/// Nodes and weights of `rule` with `n` points on `[lo, hi)`.
pub fn nodes(rule: Rule, n: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    match rule {
        Rule::Trapezoid => {
            let h = (hi - lo) / n as f64;
            (0..n).map(|i| (lo + i as f64 * h, h)).collect()
        }
        Rule::GaussLegendre => {
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            gauss_legendre(n)
                .into_iter()
                .map(|(x, w)| (mid + half * x, half * w))
                .collect()
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        (p0, p1) = (p1, ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k);
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tensor-product integral of `f` over `[x0,x1) × [y0,y1)`.
pub fn integrate_2d<F>(spec: &QuadratureSpec, x: (f64, f64), y: (f64, f64), f: F) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let xs = nodes(spec.rule, spec.nx, x.0, x.1);
    let ys = nodes(spec.rule, spec.ny, y.0, y.1);
    let mut total = 0.0;
    for &(yj, wy) in &ys {
        let mut row = 0.0;
        for &(xi, wx) in &xs {
            row += wx * f(xi, yj)?;
        }
        total += wy * row;
    }
    Ok(total)
}
