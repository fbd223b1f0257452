//! Induced metrics, areas, and the coordinate-eigenfunction test for
//! minimality.
//!
//! Sign convention: `Δf = -|g|^{-1/2} ∂_i(|g|^{1/2} g^{ij} ∂_j f)`, so the
//! coordinates of a minimal surface in the unit sphere satisfy `Δx = 2x`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_2d, QuadratureSpec};
use crate::surfaces::{bipolar_immersion, AmbientPoint, GeneralizedTriple, Immersion, LawsonPair};

/// First fundamental form `E dx² + 2F dx dy + G dy²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricSample {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl MetricSample {
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
    pub fn is_positive_definite(&self) -> bool {
        self.e > 0.0 && self.g > 0.0 && self.det() > 0.0
    }
    /// `g(ξ, ξ)` for a tangent vector `ξ = (ξx, ξy)`.
    pub fn quadratic(&self, xi: (f64, f64)) -> f64 {
        self.e * xi.0 * xi.0 + 2.0 * self.f * xi.0 * xi.1 + self.g * xi.1 * xi.1
    }
    pub fn max_abs_diff(&self, other: &MetricSample) -> f64 {
        (self.e - other.e)
            .abs()
            .max((self.f - other.f).abs())
            .max((self.g - other.g).abs())
    }
}

const DENOM_GUARD: f64 = 1e-12;

/// Closed-form metric of `F_{a,b,c}` with the parameters in the given order.
pub fn metric_g_ordered(a: f64, b: f64, c: f64, y: f64) -> Result<MetricSample> {
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let wave = (b2 - a2) * (2.0 * y).cos();
    let denom = 2.0 * c2 - a2 - b2 + wave;
    if denom < DENOM_GUARD {
        return Err(Error::Degeneracy(format!(
            "dy² denominator {denom:e} at y = {y}"
        )));
    }
    let num = c2 + wave;
    Ok(MetricSample {
        e: 0.5 * num,
        f: 0.0,
        g: num / denom,
    })
}

/// Induced metric of `T_{a,b,c}` in the coordinates `(x, y)` of the canonical
/// immersion; depends on `y` only.
pub fn metric_g_closed(t: &GeneralizedTriple, y: f64) -> Result<MetricSample> {
    metric_g_ordered(t.a() as f64, t.b() as f64, t.c() as f64, y)
}

/// Induced metric of the bipolar surface `τ̃_{r,m}` in `(u, v)`.
pub fn metric_gtilde_closed(p: LawsonPair, v: f64) -> MetricSample {
    let (r2, m2) = ((p.r() as f64).powi(2), (p.m() as f64).powi(2));
    let q = r2 - (r2 - m2) * v.sin().powi(2);
    let e = (q * q + r2 * m2) / q;
    MetricSample {
        e,
        f: 0.0,
        g: e / q,
    }
}

fn tangents(s: &dyn Immersion, x: f64, y: f64, h: f64) -> Result<(AmbientPoint, AmbientPoint)> {
    let d = |p: AmbientPoint, q: AmbientPoint| {
        let v: Vec<f64> = p
            .as_slice()
            .iter()
            .zip(q.as_slice())
            .map(|(a, b)| (a - b) / (2.0 * h))
            .collect();
        AmbientPoint::from_slice(&v)
    };
    let fx = d(s.point(x + h, y)?, s.point(x - h, y)?);
    let fy = d(s.point(x, y + h)?, s.point(x, y - h)?);
    Ok((fx, fy))
}

/// Gram matrix of central-difference tangent vectors.
pub fn first_fundamental_fd(s: &dyn Immersion, pt: (f64, f64), h: f64) -> Result<MetricSample> {
    if !(1e-7..=1e-3).contains(&h) {
        return Err(Error::InvalidParams(format!(
            "step {h:e} outside [1e-7, 1e-3]"
        )));
    }
    let (fx, fy) = tangents(s, pt.0, pt.1, h)?;
    let m = MetricSample {
        e: fx.dot(&fx),
        f: fx.dot(&fy),
        g: fy.dot(&fy),
    };
    if m.det() <= 0.0 {
        return Err(Error::Degeneracy(format!(
            "non-positive metric determinant {:e} at {pt:?}",
            m.det()
        )));
    }
    Ok(m)
}

/// `∫∫ sqrt(EG - F²)` over `[0,2π)²` without dividing by the covering degree.
pub fn raw_area_integral(t: &GeneralizedTriple, q: &QuadratureSpec) -> Result<f64> {
    integrate_2d(q, (0.0, TAU), (0.0, TAU), |_, y| {
        Ok(metric_g_closed(t, y)?.det().sqrt())
    })
}

/// Area of `T_{a,b,c}`: the raw square integral divided by the covering degree.
pub fn area_quadrature(t: &GeneralizedTriple, q: &QuadratureSpec) -> Result<f64> {
    Ok(raw_area_integral(t, q)? / t.covering_degree() as f64)
}

/// `Δ` applied to every ambient coordinate, nested central differences with
/// step `h` for both the gradient and the divergence.
fn laplacian_coords(s: &dyn Immersion, x: f64, y: f64, h: f64) -> Result<Vec<f64>> {
    let flux = |qx: f64, qy: f64| -> Result<(Vec<f64>, Vec<f64>)> {
        let (fx, fy) = tangents(s, qx, qy, h)?;
        let e = fx.dot(&fx);
        let f = fx.dot(&fy);
        let g = fy.dot(&fy);
        let det = e * g - f * f;
        if det <= 0.0 {
            return Err(Error::Degeneracy(format!(
                "non-positive metric determinant {det:e} at ({qx}, {qy})"
            )));
        }
        let root = det.sqrt();
        let px = (0..fx.dim())
            .map(|i| (g * fx[i] - f * fy[i]) / root)
            .collect();
        let py = (0..fx.dim())
            .map(|i| (e * fy[i] - f * fx[i]) / root)
            .collect();
        Ok((px, py))
    };
    let (fx, fy) = tangents(s, x, y, h)?;
    let root = (fx.dot(&fx) * fy.dot(&fy) - fx.dot(&fy).powi(2)).sqrt();
    let (east, _) = flux(x + h, y)?;
    let (west, _) = flux(x - h, y)?;
    let (_, north) = flux(x, y + h)?;
    let (_, south) = flux(x, y - h)?;
    Ok((0..fx.dim())
        .map(|i| -((east[i] - west[i]) + (north[i] - south[i])) / (2.0 * h * root))
        .collect())
}

/// `max_i |Δx_i - 2x_i|` at `pt`, with one Richardson level on `(h, h/2)`.
pub fn laplace_beltrami_residual(s: &dyn Immersion, pt: (f64, f64), h: f64) -> Result<f64> {
    if !(1e-5..=1e-2).contains(&h) {
        return Err(Error::InvalidParams(format!(
            "step {h:e} outside [1e-5, 1e-2]"
        )));
    }
    let coarse = laplacian_coords(s, pt.0, pt.1, h)?;
    let fine = laplacian_coords(s, pt.0, pt.1, 0.5 * h)?;
    let x = s.point(pt.0, pt.1)?;
    Ok(coarse
        .iter()
        .zip(&fine)
        .enumerate()
        .map(|(i, (c, f))| ((4.0 * f - c) / 3.0 - 2.0 * x[i]).abs())
        .fold(0.0, f64::max))
}

/// Max of `|r x₁ + m x₂|` over seeded random samples of `τ̃_{r,m}`.
pub fn hyperplane_check(p: LawsonPair, n_samples: usize) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::InvalidParams("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ ((p.r() as u64) << 32 | p.m() as u64));
    let (r, m) = (p.r() as f64, p.m() as f64);
    let mut worst: f64 = 0.0;
    for _ in 0..n_samples {
        let (u, v) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        let x = bipolar_immersion(p, u, v)?;
        worst = worst.max((r * x[0] + m * x[1]).abs());
    }
    Ok(worst)
}

/// Non-minimal control: the great sphere `(cos u cos v, sin u cos v, sin v, 0)`
/// with `amplitude · sin 2u` added in the fourth slot, pushed back onto S³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedSphere {
    pub amplitude: f64,
}

impl Default for PerturbedSphere {
    fn default() -> Self {
        Self { amplitude: 0.1 }
    }
}

impl Immersion for PerturbedSphere {
    fn ambient_dim(&self) -> usize {
        4
    }
    fn point(&self, u: f64, v: f64) -> Result<AmbientPoint> {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        let raw = [cu * cv, su * cv, sv, self.amplitude * (2.0 * u).sin()];
        let n = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        Ok(AmbientPoint::new4(raw.map(|x| x / n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::{canonicalize_and_classify, GeneralizedImmersion, LawsonTau};
    use std::f64::consts::PI;

    fn triple(a: i64, b: i64, c: i64) -> GeneralizedTriple {
        canonicalize_and_classify(a, b, c).unwrap()
    }

    #[test]
    fn closed_metric_examples() {
        for y in [0.0, 0.3, 2.0] {
            let m = metric_g_closed(&triple(1, 1, 2), y).unwrap();
            assert!((m.e - 2.0).abs() < 1e-15 && m.f == 0.0 && (m.g - 2.0 / 3.0).abs() < 1e-15);
        }
        let m = metric_g_closed(&triple(0, 1, 3), 0.0).unwrap();
        assert!((m.e - 5.0).abs() < 1e-15 && (m.g - 5.0 / 9.0).abs() < 1e-15);

        let p = LawsonPair::new(3, 1).unwrap();
        let m = metric_gtilde_closed(p, 0.0);
        assert!((m.e - 10.0).abs() < 1e-14 && (m.g - 10.0 / 9.0).abs() < 1e-14);
        let m = metric_gtilde_closed(p, PI / 2.0);
        assert!((m.e - 10.0).abs() < 1e-13 && (m.g - 10.0).abs() < 1e-13);
    }

    #[test]
    fn gtilde_is_periodic() {
        let p = LawsonPair::new(5, 2).unwrap();
        for i in 0..64 {
            let v = i as f64 * 0.1;
            let a = metric_gtilde_closed(p, v);
            let b = metric_gtilde_closed(p, v + 2.0 * PI);
            assert!(a.max_abs_diff(&b) < 1e-11);
        }
    }

    #[test]
    fn clifford_tau_is_flat() {
        let t = LawsonTau::new(1, 1).unwrap();
        for (x, y) in [(0.1, 0.2), (2.0, -1.3), (4.4, 5.5)] {
            let m = first_fundamental_fd(&t, (x, y), 1e-5).unwrap();
            assert!((m.e - 1.0).abs() < 1e-8 && m.f.abs() < 1e-8 && (m.g - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn fd_step_is_validated() {
        let t = LawsonTau::new(1, 1).unwrap();
        assert!(first_fundamental_fd(&t, (0.0, 0.0), 1e-2).is_err());
        assert!(laplace_beltrami_residual(&t, (0.0, 0.0), 1e-7).is_err());
    }

    #[test]
    fn fd_matches_closed_forms() {
        let t = triple(1, 1, 2);
        let imm = GeneralizedImmersion::new(&t);
        let p = LawsonPair::new(3, 1).unwrap();
        for (x, y) in [(0.3, 0.9), (1.7, 2.2), (5.0, 4.1)] {
            let fd = first_fundamental_fd(&imm, (x, y), 1e-5).unwrap();
            assert!(fd.max_abs_diff(&metric_g_closed(&t, y).unwrap()) < 1e-7);
            let fd = first_fundamental_fd(&p, (x, y), 1e-5).unwrap();
            assert!(fd.max_abs_diff(&metric_gtilde_closed(p, y)) < 1e-7);
        }
    }

    #[test]
    fn constant_integrand_areas() {
        let q = QuadratureSpec::trapezoid(16).unwrap();
        let a = area_quadrature(&triple(1, 1, 2), &q).unwrap();
        assert!((a - 4.0 * PI * PI / 3f64.sqrt()).abs() < 1e-12);
        let a = area_quadrature(&triple(0, 0, 1), &q).unwrap();
        assert!((a - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn residual_separates_minimal_from_control() {
        let tau = LawsonTau::new(2, 1).unwrap();
        let r = laplace_beltrami_residual(&tau, (0.4, 0.7), 1e-3).unwrap();
        assert!(r < 1e-4, "tau residual {r}");
        let c = laplace_beltrami_residual(&PerturbedSphere::default(), (0.4, 0.7), 1e-3).unwrap();
        assert!(c > 1e-2, "control residual {c}");
    }

    #[test]
    fn hyperplane_witness() {
        for (r, m) in [(3, 1), (2, 1), (5, 4)] {
            let p = LawsonPair::new(r, m).unwrap();
            assert!(hyperplane_check(p, 1000).unwrap() < 1e-13);
        }
        assert!(hyperplane_check(LawsonPair::new(2, 1).unwrap(), 0).is_err());
    }
}
