//! Complete elliptic integrals and Jacobi elliptic functions of real argument.
//!
//! Every entry point takes the parameter `m = k²`. Negative parameters encode a
//! purely imaginary modulus and are reduced to `0 < k² < 1` through the
//! imaginary-modulus transformation
//!
//! ```text
//! K(-k²/k'²) = k' K(k²)
//! E(-k²/k'²) = E(k²) / k'
//! sn(z, -k²/k'²) = k' sn(z/k', k²) / dn(z/k', k²)
//! ```
//!
//! K and E use the arithmetic-geometric mean; sn, cn, dn use the descending
//! AGM (Landen) scheme.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

const AGM_TOL: f64 = 1e-15;
const AGM_MAX_ITER: usize = 64;

/// Parameters closer than this to 1 are rejected by [`comp_k`].
pub const NEAR_SINGULAR_GAP: f64 = 1e-12;

/// Elliptic parameter `m = k²`, restricted to `m <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EllipticParameter(f64);

impl EllipticParameter {
    /// Accepts any finite `m < 1`.
    pub fn new(m: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::Domain(format!("parameter must be finite, got {m}")));
        }
        if m >= 1.0 {
            return Err(Error::Domain(format!("parameter must be < 1, got {m}")));
        }
        Ok(Self(m))
    }

    /// Accepts `m <= 1`. Only [`comp_e`] is defined at the boundary.
    pub fn with_boundary(m: f64) -> Result<Self> {
        if m == 1.0 {
            Ok(Self(1.0))
        } else {
            Self::new(m)
        }
    }

    /// Parameter from a real modulus `k` (so `m = k²` lies in `[0, 1)`).
    pub fn from_modulus(k: f64) -> Result<Self> {
        Self::new(k * k)
    }

    pub fn param(self) -> f64 {
        self.0
    }

    /// Complementary parameter `1 - m`.
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }

    /// Complementary modulus `k' = sqrt(1 - m)`.
    pub fn comp_modulus(self) -> f64 {
        self.complement().sqrt()
    }

    /// For `m < 0`, the positive parameter `k² = -m / (1 - m)` of the
    /// imaginary-modulus reduction; `None` otherwise.
    pub fn reduced(self) -> Option<Self> {
        (self.0 < 0.0).then(|| Self(-self.0 / (1.0 - self.0)))
    }
}

/// Values of sn, cn and dn at a common argument and parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

struct Agm {
    a: f64,
    /// Σ 2^(n-1) c_n², starting from c_0² = m.
    weighted_sum: f64,
}

fn agm(m: f64) -> Agm {
    debug_assert!((0.0..1.0).contains(&m));
    let mut a = 1.0;
    let mut b = (1.0 - m).sqrt();
    let mut c2 = m;
    let mut weight = 0.5;
    let mut sum = weight * c2;
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_TOL * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        // c_{n+1} = c_n² / (4 a_{n+1}), free of the cancellation in (a_n - b_n)/2
        c2 = c2 * c2 / (16.0 * an * an);
        weight *= 2.0;
        sum += weight * c2;
        a = an;
        b = bn;
    }
    Agm {
        a: 0.5 * (a + b),
        weighted_sum: sum,
    }
}

fn k_nonneg(m: f64) -> f64 {
    FRAC_PI_2 / agm(m).a
}

fn e_nonneg(m: f64) -> f64 {
    if m == 1.0 {
        return 1.0;
    }
    let g = agm(m);
    FRAC_PI_2 / g.a * (1.0 - g.weighted_sum)
}

/// Complete elliptic integral of the first kind `K(m)`.
pub fn comp_k(p: EllipticParameter) -> Result<f64> {
    let m = p.param();
    if m == 1.0 {
        return Err(Error::Divergent);
    }
    if m > 1.0 - NEAR_SINGULAR_GAP {
        return Err(Error::Domain(format!(
            "parameter {m} is within {NEAR_SINGULAR_GAP:e} of the logarithmic singularity"
        )));
    }
    Ok(match p.reduced() {
        Some(q) => p.comp_modulus().recip() * k_nonneg(q.param()),
        None => k_nonneg(m),
    })
}

/// Complete elliptic integral of the second kind `E(m)`; `E(1) = 1`.
pub fn comp_e(p: EllipticParameter) -> Result<f64> {
    let m = p.param();
    if m > 1.0 {
        return Err(Error::Domain(format!("parameter must be <= 1, got {m}")));
    }
    Ok(match p.reduced() {
        // k' of the reduced parameter is 1/sqrt(1 - m)
        Some(q) => p.comp_modulus() * e_nonneg(q.param()),
        None => e_nonneg(m),
    })
}

/// Convenience wrappers taking the raw parameter.
pub fn ellip_k(m: f64) -> Result<f64> {
    comp_k(EllipticParameter::new(m)?)
}

pub fn ellip_e(m: f64) -> Result<f64> {
    comp_e(EllipticParameter::with_boundary(m)?)
}

/// Amplitude `φ = am(u, m)` for `0 <= m < 1` by the descending AGM scheme.
fn amplitude_nonneg(u: f64, m: f64) -> f64 {
    if m == 0.0 {
        return u;
    }
    let mut a = [0.0_f64; AGM_MAX_ITER + 1];
    let mut c = [0.0_f64; AGM_MAX_ITER + 1];
    a[0] = 1.0;
    let mut b = (1.0 - m).sqrt();
    c[0] = m.sqrt();
    let mut n = 0;
    while n < AGM_MAX_ITER && c[n].abs() > AGM_TOL * a[n] {
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

fn jacobi_nonneg(u: f64, m: f64) -> JacobiTriple {
    let phi = amplitude_nonneg(u, m);
    let (sn, cn) = phi.sin_cos();
    // dn > 0 for real u and m < 1; this form avoids cancellation in 1 - m sn².
    let dn = (cn * cn + (1.0 - m) * sn * sn).sqrt();
    JacobiTriple { sn, cn, dn }
}

/// Jacobi elliptic functions `(sn, cn, dn)(u | m)` for real `u` and `m < 1`.
pub fn jacobi_sn_cn_dn(u: f64, p: EllipticParameter) -> Result<JacobiTriple> {
    if !u.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {u}")));
    }
    let m = p.param();
    if m >= 1.0 {
        return Err(Error::Domain(format!("parameter must be < 1, got {m}")));
    }
    Ok(match p.reduced() {
        Some(q) => {
            let kp = q.comp_modulus();
            let t = jacobi_nonneg(u / kp, q.param());
            JacobiTriple {
                sn: kp * t.sn / t.dn,
                cn: t.cn / t.dn,
                dn: 1.0 / t.dn,
            }
        }
        None => jacobi_nonneg(u, m),
    })
}

/// Jacobi amplitude `am(u | m)`: the continuous, increasing angle with
/// `sin am = sn` and `cos am = cn`.
pub fn jacobi_amplitude(u: f64, p: EllipticParameter) -> Result<f64> {
    if !u.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {u}")));
    }
    let m = p.param();
    if m >= 1.0 {
        return Err(Error::Domain(format!("parameter must be < 1, got {m}")));
    }
    Ok(match p.reduced() {
        Some(q) => {
            let kp = q.comp_modulus();
            let phi = amplitude_nonneg(u / kp, q.param());
            // θ with tan θ = k' tan φ in the same quadrant; |θ - φ| < π/2.
            let (s, c) = phi.sin_cos();
            phi + ((kp - 1.0) * s * c).atan2(c * c + kp * s * s)
        }
        None => amplitude_nonneg(u, m),
    })
}

/// Period of sn and cn in the real direction, `4K(m)`.
pub fn real_period(p: EllipticParameter) -> Result<f64> {
    Ok(4.0 * comp_k(p)?)
}
