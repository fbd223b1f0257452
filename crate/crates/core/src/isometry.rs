//! Numerical check that the bipolar surface `τ̃_{r,m}` is isometric to
//! `T_{a,0,c}`.
//!
//! Coordinates: the bipolar side uses `(u, w)` with `sin v = sn(w, k̃)`,
//! `k̃² = (r² - m²)/r²`. The generalized side uses `(x, z)` with
//! `sin y = sn(z, k)`, `k² = -a²/(c² - a²)`, and the affine map
//! `x = s·u`, `z = ζ·w + K(k)` with `s ∈ {1, 2}` and `ζ = 2√(c²-a²)/(a+c)`.
//! Both substitutions are continued through `sn = ±1` by the Jacobi amplitude,
//! so `y = am(z, k)` and `v = am(w, k̃)` are smooth and increasing.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diffgeo::{first_fundamental_fd, metric_g_ordered, metric_gtilde_closed, MetricSample};
use crate::elliptic::{comp_k, jacobi_amplitude, jacobi_sn_cn_dn, EllipticParameter};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_2d, QuadratureSpec, Rule};
use crate::report::{Check, Report};
use crate::surfaces::{
    bipolar_immersion, bipolar_parameters, bipolar_to_generalized, fundamental_domain,
    AmbientPoint, GeneralizedImmersion, Immersion, LawsonCase, LawsonPair,
};

const BRANCH_SLACK: f64 = 1e-12;

/// Grid points stay this far from the lines `sn = ±1`.
pub const BRANCH_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChangeOfVariables {
    pub pair: LawsonPair,
    pub case: LawsonCase,
    /// `a` and `c` of `T_{a,0,c}` in that order.
    pub a: u32,
    pub c: u32,
    pub k_param: EllipticParameter,
    pub ktilde_param: EllipticParameter,
    pub x_scale: u32,
    /// `K(k)`
    pub z_offset: f64,
    pub z_scale: f64,
    /// `K(k̃)`
    pub ktilde_quarter: f64,
}

impl ChangeOfVariables {
    /// `[0, 2π/s) × [0, 2K(k̃))`
    pub fn bipolar_rectangle(&self) -> ((f64, f64), (f64, f64)) {
        (
            (0.0, TAU / self.x_scale as f64),
            (0.0, 2.0 * self.ktilde_quarter),
        )
    }
}

pub fn build_change_of_variables(p: LawsonPair) -> Result<ChangeOfVariables> {
    let (a, c) = bipolar_parameters(p);
    let (af, cf) = (a as f64, c as f64);
    let gap = cf * cf - af * af;
    let k_param = EllipticParameter::new(-af * af / gap)?;
    let (r2, m2) = ((p.r() as f64).powi(2), (p.m() as f64).powi(2));
    let ktilde_param = EllipticParameter::new((r2 - m2) / r2)?;
    let x_scale = match p.case() {
        LawsonCase::Mod2 => 1,
        LawsonCase::Mod41 | LawsonCase::Mod43 => 2,
    };
    Ok(ChangeOfVariables {
        pair: p,
        case: p.case(),
        a,
        c,
        k_param,
        ktilde_param,
        x_scale,
        z_offset: comp_k(k_param)?,
        z_scale: 2.0 * gap.sqrt() / (af + cf),
        ktilde_quarter: comp_k(ktilde_param)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Mapped {
    x: f64,
    y: f64,
    /// dy/dw
    dy_dw: f64,
}

fn map_full(cov: &ChangeOfVariables, u: f64, w: f64) -> Result<Mapped> {
    let z = cov.z_scale * w + cov.z_offset;
    let j = jacobi_sn_cn_dn(z, cov.k_param)?;
    if j.sn.abs() > 1.0 + BRANCH_SLACK {
        return Err(Error::Branch(format!(
            "|sn({z})| = {} exceeds 1",
            j.sn.abs()
        )));
    }
    let y = jacobi_amplitude(z, cov.k_param)?;
    Ok(Mapped {
        x: cov.x_scale as f64 * u,
        y,
        dy_dw: cov.z_scale * j.dn,
    })
}

/// `(u, w) ↦ (x, y)`: the affine map followed by `y = am(z, k)`, the branch of
/// `arcsin sn(z, k)` that increases through `z = K, 3K`.
pub fn map_bipolar_to_t(cov: &ChangeOfVariables, u: f64, w: f64) -> Result<(f64, f64)> {
    let m = map_full(cov, u, w)?;
    Ok((m.x, m.y))
}

/// `v = am(w, k̃)` and `dv/dw = dn(w, k̃)`.
fn bipolar_v(cov: &ChangeOfVariables, w: f64) -> Result<(f64, f64)> {
    let v = jacobi_amplitude(w, cov.ktilde_param)?;
    let dn = jacobi_sn_cn_dn(w, cov.ktilde_param)?.dn;
    Ok((v, dn))
}

/// Bipolar metric in `(u, w)`.
fn gtilde_uw(cov: &ChangeOfVariables, w: f64) -> Result<MetricSample> {
    let (v, dv) = bipolar_v(cov, w)?;
    let m = metric_gtilde_closed(cov.pair, v);
    Ok(MetricSample {
        e: m.e,
        f: 0.0,
        g: m.g * dv * dv,
    })
}

/// Metric of `T_{a,0,c}` pulled back to `(u, w)`.
fn pulled_back_g(cov: &ChangeOfVariables, u: f64, w: f64) -> Result<MetricSample> {
    let mp = map_full(cov, u, w)?;
    let g = metric_g_ordered(cov.a as f64, 0.0, cov.c as f64, mp.y)?;
    let s = cov.x_scale as f64;
    Ok(MetricSample {
        e: s * s * g.e,
        f: s * mp.dy_dw * g.f,
        g: mp.dy_dw * mp.dy_dw * g.g,
    })
}

fn interior_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let span = hi - lo - 2.0 * BRANCH_MARGIN;
    (0..n).map(move |i| lo + BRANCH_MARGIN + span * (i as f64 + 0.5) / n as f64)
}

/// Max componentwise difference between the pulled-back metric of `T_{a,0,c}`
/// and the bipolar metric on an interior grid of the bipolar rectangle.
pub fn isometry_discrepancy(p: LawsonPair, grid: (usize, usize)) -> Result<f64> {
    if grid.0 < 16 || grid.1 < 16 {
        return Err(Error::InvalidParams(format!(
            "grid {grid:?} must be at least 16x16"
        )));
    }
    let cov = build_change_of_variables(p)?;
    let ((u0, u1), (w0, w1)) = cov.bipolar_rectangle();
    let mut worst: f64 = 0.0;
    for w in interior_grid(w0, w1, grid.1) {
        let target = gtilde_uw(&cov, w)?;
        for u in interior_grid(u0, u1, grid.0) {
            worst = worst.max(pulled_back_g(&cov, u, w)?.max_abs_diff(&target));
        }
    }
    Ok(worst)
}

/// `T_{a,0,c} ∘ Φ` as a surface in the bipolar coordinates `(u, w)`.
struct GeneralizedInBipolarCoords {
    cov: ChangeOfVariables,
    imm: GeneralizedImmersion,
}

impl Immersion for GeneralizedInBipolarCoords {
    fn ambient_dim(&self) -> usize {
        6
    }
    fn point(&self, u: f64, w: f64) -> Result<AmbientPoint> {
        let (x, y) = map_bipolar_to_t(&self.cov, u, w)?;
        Ok(self.imm.eval(x, y))
    }
}

/// `τ̃_{r,m}` in the coordinates `(u, w)`.
struct BipolarInEllipticCoords {
    cov: ChangeOfVariables,
}

impl Immersion for BipolarInEllipticCoords {
    fn ambient_dim(&self) -> usize {
        6
    }
    fn point(&self, u: f64, w: f64) -> Result<AmbientPoint> {
        let v = jacobi_amplitude(w, self.cov.ktilde_param)?;
        bipolar_immersion(self.cov.pair, u, v)
    }
}

/// Max relative difference `|g(DΦξ, DΦξ) - g̃(ξ, ξ)| / g̃(ξ, ξ)` with both
/// metrics measured by finite differences of the immersions themselves.
pub fn pointwise_isometry_check(
    p: LawsonPair,
    n_points: usize,
    n_vectors: usize,
    seed: u64,
) -> Result<f64> {
    let cov = build_change_of_variables(p)?;
    let (a, c) = (cov.a, cov.c);
    let lhs = GeneralizedInBipolarCoords {
        cov,
        imm: GeneralizedImmersion::ordered(a, 0, c)?,
    };
    let rhs = BipolarInEllipticCoords { cov };
    let ((u0, u1), (w0, w1)) = cov.bipolar_rectangle();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n_points {
        let u = rng.gen_range(u0..u1);
        let w = rng.gen_range(w0 + BRANCH_MARGIN..w1 - BRANCH_MARGIN);
        let g = first_fundamental_fd(&lhs, (u, w), 1e-5)?;
        let gt = first_fundamental_fd(&rhs, (u, w), 1e-5)?;
        for _ in 0..n_vectors {
            let xi = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let reference = gt.quadratic(xi);
            worst = worst.max((g.quadratic(xi) - reference).abs() / reference);
        }
    }
    Ok(worst)
}

/// Compares `s²·½(c² - a² + 2a² sn²(z, k))`, `z = ζw + K(k)`, with the bipolar
/// conformal factor written through `sn(w, k̃)`.
pub fn conformal_factor_discrepancy(p: LawsonPair, n: usize) -> Result<f64> {
    let cov = build_change_of_variables(p)?;
    let (a, c) = (cov.a as f64, cov.c as f64);
    let (r, m) = (p.r() as f64, p.m() as f64);
    let s = cov.x_scale as f64;
    let (_, (w0, w1)) = cov.bipolar_rectangle();
    let mut worst: f64 = 0.0;
    for w in interior_grid(w0, w1, n) {
        let sn_z = jacobi_sn_cn_dn(cov.z_scale * w + cov.z_offset, cov.k_param)?.sn;
        let lhs = s * s * 0.5 * (c * c - a * a + 2.0 * a * a * sn_z * sn_z);
        let sn_w = jacobi_sn_cn_dn(w, cov.ktilde_param)?.sn;
        let q = r * r - (r * r - m * m) * sn_w * sn_w;
        let rhs = (q * q + (r * m).powi(2)) / q;
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Areas of the bipolar rectangle under `g̃` and of its image under `g`.
pub fn transported_areas(p: LawsonPair, n: usize) -> Result<(f64, f64)> {
    let cov = build_change_of_variables(p)?;
    let q = QuadratureSpec::new(n, n, Rule::GaussLegendre)?;
    let (us, ws) = cov.bipolar_rectangle();
    let bipolar = integrate_2d(&q, us, ws, |_, w| Ok(gtilde_uw(&cov, w)?.det().sqrt()))?;
    let xs = (0.0, cov.x_scale as f64 * us.1);
    let ys = (FRAC_PI_2, FRAC_PI_2 + TAU);
    let (a, c) = (cov.a as f64, cov.c as f64);
    let image = integrate_2d(&q, xs, ys, |_, y| {
        Ok(metric_g_ordered(a, 0.0, c, y)?.det().sqrt())
    })?;
    Ok((bipolar, image))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainReport {
    pub r: u32,
    pub m: u32,
    pub case: LawsonCase,
    pub triple: (u32, u32, u32),
    pub u_extent: f64,
    pub w_extent: f64,
    pub report: Report,
}

impl DomainReport {
    pub fn all_pass(&self) -> bool {
        self.report.all_pass()
    }
}

/// Checks the extents of the rectangle correspondences for the pair's case.
pub fn domain_correspondence_check(p: LawsonPair) -> Result<DomainReport> {
    const TOL: f64 = 1e-10;
    let cov = build_change_of_variables(p)?;
    let triple = bipolar_to_generalized(p);
    let dom = fundamental_domain(&triple)?;
    let ell = dom
        .elliptic
        .ok_or_else(|| Error::InvalidParams(format!("{triple} has no elliptic rectangle")))?;
    let mut report = Report::default();

    // z ∈ [K, 5K) maps onto w ∈ [0, 2K(k̃)).
    let (z0, z1) = ell.z_range;
    let w_extent = (z1 - z0) / cov.z_scale;
    report.push(Check::below(
        "w-extent 4K(k)/zeta vs 2K(ktilde)",
        (w_extent - 2.0 * cov.ktilde_quarter).abs(),
        TOL,
    ));
    report.push(Check::below(
        "k parameter of elliptic rectangle",
        (ell.k_param - cov.k_param.param()).abs(),
        TOL,
    ));

    let u_extent = (ell.x_range.1 - ell.x_range.0) / cov.x_scale as f64;
    let expected_u = match p.case() {
        LawsonCase::Mod2 => TAU,
        LawsonCase::Mod41 => PI,
        LawsonCase::Mod43 => FRAC_PI_2,
    };
    report.push(Check::below(
        "u-extent for case",
        (u_extent - expected_u).abs(),
        TOL,
    ));

    let start = map_full(&cov, 0.0, 0.0)?;
    report.push(Check::below(
        "w = 0 maps to y = pi/2",
        (start.y - FRAC_PI_2).abs(),
        TOL,
    ));
    let end = map_full(&cov, 0.0, 2.0 * cov.ktilde_quarter)?;
    report.push(Check::below(
        "w = 2K(ktilde) maps to y = 5pi/2",
        (end.y - 5.0 * FRAC_PI_2).abs(),
        TOL,
    ));

    // One sheet of T in (x, y) has area raw/degree; it must match the bipolar
    // rectangle [0, u_extent) × [0, 2K(k̃)).
    let q = QuadratureSpec::new(64, 64, Rule::GaussLegendre)?;
    let (a, c) = (cov.a as f64, cov.c as f64);
    let sheet = integrate_2d(&q, ell.x_range, (FRAC_PI_2, FRAC_PI_2 + TAU), |_, y| {
        Ok(metric_g_ordered(a, 0.0, c, y)?.det().sqrt())
    })?;
    let rect = integrate_2d(
        &q,
        (0.0, u_extent),
        (0.0, 2.0 * cov.ktilde_quarter),
        |_, w| Ok(gtilde_uw(&cov, w)?.det().sqrt()),
    )?;
    report.push(Check::below(
        "sheet area vs bipolar rectangle area",
        (sheet - rect).abs(),
        1e-7,
    ));

    Ok(DomainReport {
        r: p.r(),
        m: p.m(),
        case: p.case(),
        triple: triple.abc(),
        u_extent,
        w_extent,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(r: u32, m: u32) -> LawsonPair {
        LawsonPair::new(r, m).unwrap()
    }

    #[test]
    fn change_of_variables_examples() {
        let cov = build_change_of_variables(pair(2, 1)).unwrap();
        assert_eq!(cov.x_scale, 1);
        assert!((cov.k_param.param() + 1.0 / 8.0).abs() < 1e-16);
        assert!((cov.ktilde_param.param() - 0.75).abs() < 1e-16);

        let cov = build_change_of_variables(pair(3, 1)).unwrap();
        assert_eq!(cov.x_scale, 2);
        assert!((cov.k_param.param() + 1.0 / 3.0).abs() < 1e-16);
        assert!((cov.ktilde_param.param() - 8.0 / 9.0).abs() < 1e-16);

        let cov = build_change_of_variables(pair(5, 1)).unwrap();
        assert_eq!(cov.x_scale, 2);
        assert!((cov.k_param.param() + 0.8).abs() < 1e-16);
        assert!((cov.ktilde_param.param() - 24.0 / 25.0).abs() < 1e-16);
    }

    #[test]
    fn map_endpoints_and_branch_consistency() {
        let cov = build_change_of_variables(pair(3, 1)).unwrap();
        let (x, y) = map_bipolar_to_t(&cov, 0.0, 0.0).unwrap();
        assert_eq!(x, 0.0);
        assert!((y - FRAC_PI_2).abs() < 1e-14);

        let (x, y) = map_bipolar_to_t(&cov, 0.3, 0.2).unwrap();
        assert_eq!(x, 0.6);
        let sn = jacobi_sn_cn_dn(cov.z_scale * 0.2 + cov.z_offset, cov.k_param)
            .unwrap()
            .sn;
        assert!((y.sin() - sn).abs() < 1e-12);

        let mut prev = f64::NEG_INFINITY;
        for i in 0..200 {
            let w = 2.0 * cov.ktilde_quarter * i as f64 / 200.0;
            let (_, y) = map_bipolar_to_t(&cov, 0.0, w).unwrap();
            assert!(y > prev);
            prev = y;
        }
    }

    #[test]
    fn isometry_examples() {
        for (r, m) in [(2, 1), (5, 1), (3, 1)] {
            let d = isometry_discrepancy(pair(r, m), (50, 50)).unwrap();
            assert!(d < 1e-8, "({r},{m}) discrepancy {d:e}");
        }
        assert!(isometry_discrepancy(pair(2, 1), (8, 50)).is_err());
    }

    #[test]
    fn domain_examples() {
        let expected = [((2, 1), TAU), ((5, 1), PI), ((3, 1), FRAC_PI_2)];
        for ((r, m), u_ext) in expected {
            let rep = domain_correspondence_check(pair(r, m)).unwrap();
            assert!(rep.all_pass(), "({r},{m}):\n{}", rep.report);
            assert!((rep.u_extent - u_ext).abs() < 1e-12);
        }
    }
}
