//! Parameter types and the three immersion families: the Lawson tau-surface
//! `Ψ_{m,n}`, its bipolar surface `I ∧ I*`, and the generalized Lawson surface
//! `F_{a,b,c}` in S⁵.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::Serialize;

use crate::elliptic::{comp_k, EllipticParameter};
use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Torus,
    KleinBottle,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Torus => "torus",
            Topology::KleinBottle => "klein_bottle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `c² > a² + b²`
    Interior,
    /// `c² = a² + b²` with `a, b >= 1`: the Lawson surface `τ_{a,b}`.
    LawsonBoundary,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Interior => "interior",
            Regime::LawsonBoundary => "lawson_boundary",
        })
    }
}

/// Canonical parameters of a generalized Lawson surface `T_{a,b,c}`:
/// non-negative, `gcd(a,b,c) = 1`, `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneralizedTriple {
    a: u32,
    b: u32,
    c: u32,
    regime: Regime,
    topology: Topology,
}

impl GeneralizedTriple {
    pub fn a(&self) -> u32 {
        self.a
    }
    pub fn b(&self) -> u32 {
        self.b
    }
    pub fn c(&self) -> u32 {
        self.c
    }
    pub fn abc(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }
    pub fn regime(&self) -> Regime {
        self.regime
    }
    pub fn topology(&self) -> Topology {
        self.topology
    }
    pub fn sum(&self) -> u32 {
        self.a + self.b + self.c
    }
    /// Multiplicity of the square `[0,2π)²` over the surface.
    pub fn covering_degree(&self) -> u32 {
        if self.c.is_multiple_of(2) {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for GeneralizedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{},{})", self.a, self.b, self.c)
    }
}

/// Removes signs and common factors, orders `a <= b`, and classifies regime and
/// topology.
pub fn canonicalize_and_classify(a: i64, b: i64, c: i64) -> Result<GeneralizedTriple> {
    let (a, b, c) = (a.unsigned_abs(), b.unsigned_abs(), c.unsigned_abs());
    if a == 0 && b == 0 && c == 0 {
        return Err(Error::InvalidParams("a, b, c are all zero".into()));
    }
    let g = gcd(gcd(a, b), c);
    let (mut a, mut b, c) = (a / g, b / g, c / g);
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    if c > u32::MAX as u64 / 2 {
        return Err(Error::InvalidParams(format!("c = {c} is too large")));
    }
    let (a2, b2, c2) = ((a as u128).pow(2), (b as u128).pow(2), (c as u128).pow(2));
    let regime = if c2 > a2 + b2 {
        Regime::Interior
    } else if c2 == a2 + b2 {
        if a == 0 {
            return Err(Error::InvalidParams(format!(
                "c² = a² + b² requires a, b nonzero (got {a}, {b}, {c})"
            )));
        }
        Regime::LawsonBoundary
    } else {
        return Err(Error::InvalidParams(format!(
            "need c² >= a² + b² (got {a}, {b}, {c})"
        )));
    };
    let topology = match regime {
        Regime::Interior if c % 2 == 0 && (a + b) % 2 == 1 => Topology::KleinBottle,
        Regime::Interior => Topology::Torus,
        Regime::LawsonBoundary if a % 2 == 0 || b % 2 == 0 => Topology::KleinBottle,
        Regime::LawsonBoundary => Topology::Torus,
    };
    Ok(GeneralizedTriple {
        a: a as u32,
        b: b as u32,
        c: c as u32,
        regime,
        topology,
    })
}

/// Residue class of `rm` that selects the bipolar parameter map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LawsonCase {
    /// `rm ≡ 0 (mod 2)`
    Mod2,
    /// `rm ≡ 1 (mod 4)`
    Mod41,
    /// `rm ≡ 3 (mod 4)`
    Mod43,
}

impl LawsonCase {
    pub fn topology(self) -> Topology {
        match self {
            LawsonCase::Mod43 => Topology::KleinBottle,
            _ => Topology::Torus,
        }
    }
}

/// Coprime `r > m > 0` indexing the bipolar surface `τ̃_{r,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LawsonPair {
    r: u32,
    m: u32,
    case: LawsonCase,
}

impl LawsonPair {
    pub fn new(r: u32, m: u32) -> Result<Self> {
        if m == 0 || r <= m {
            return Err(Error::InvalidParams(format!(
                "need r > m > 0 (got {r}, {m})"
            )));
        }
        if gcd(r as u64, m as u64) != 1 {
            return Err(Error::InvalidParams(format!(
                "r = {r} and m = {m} are not coprime"
            )));
        }
        let rm = r as u64 * m as u64;
        let case = match rm % 4 {
            1 => LawsonCase::Mod41,
            3 => LawsonCase::Mod43,
            _ => LawsonCase::Mod2,
        };
        Ok(Self { r, m, case })
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn case(&self) -> LawsonCase {
        self.case
    }
}

impl fmt::Display for LawsonPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.m)
    }
}

/// Coprime positive frequencies of the Lawson immersion `Ψ_{m,n}`. Unlike
/// [`LawsonPair`] this admits `m = n = 1` (the Clifford torus) and either order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LawsonTau {
    m: u32,
    n: u32,
}

impl LawsonTau {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParams(format!(
                "need m, n >= 1 (got {m}, {n})"
            )));
        }
        if gcd(m as u64, n as u64) != 1 {
            return Err(Error::InvalidParams(format!(
                "m = {m} and n = {n} are not coprime"
            )));
        }
        Ok(Self { m, n })
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn topology(&self) -> Topology {
        if self.m % 2 == 1 && self.n % 2 == 1 {
            Topology::Torus
        } else {
            Topology::KleinBottle
        }
    }
}

impl From<LawsonPair> for LawsonTau {
    fn from(p: LawsonPair) -> Self {
        Self { m: p.r, n: p.m }
    }
}

/// A point of S³ ⊂ R⁴ or S⁵ ⊂ R⁶.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientPoint {
    coords: [f64; 6],
    dim: usize,
}

impl AmbientPoint {
    pub fn new4(c: [f64; 4]) -> Self {
        Self {
            coords: [c[0], c[1], c[2], c[3], 0.0, 0.0],
            dim: 4,
        }
    }
    pub fn new6(coords: [f64; 6]) -> Self {
        Self { coords, dim: 6 }
    }
    pub fn from_slice(c: &[f64]) -> Self {
        assert!(c.len() <= 6, "ambient dimension at most 6");
        let mut coords = [0.0; 6];
        coords[..c.len()].copy_from_slice(c);
        Self {
            coords,
            dim: c.len(),
        }
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn as_slice(&self) -> &[f64] {
        &self.coords[..self.dim]
    }
    pub fn norm(&self) -> f64 {
        self.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt()
    }
    pub fn dot(&self, other: &AmbientPoint) -> f64 {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(x, y)| x * y)
            .sum()
    }
    pub fn distance(&self, other: &AmbientPoint) -> f64 {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }
}

impl std::ops::Index<usize> for AmbientPoint {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

/// A parametrized surface `R² → S^{n}`.
pub trait Immersion: Sync {
    fn ambient_dim(&self) -> usize;
    fn point(&self, x: f64, y: f64) -> Result<AmbientPoint>;
}

/// `Ψ_{m,n}(x,y) = (cos mx cos y, sin mx cos y, cos nx sin y, sin nx sin y)`.
pub fn lawson_tau_point(t: LawsonTau, x: f64, y: f64) -> AmbientPoint {
    let (sm, cm) = (t.m as f64 * x).sin_cos();
    let (sn, cn) = (t.n as f64 * x).sin_cos();
    let (sy, cy) = y.sin_cos();
    AmbientPoint::new4([cm * cy, sm * cy, cn * sy, sn * sy])
}

/// The Lawson immersion `I(u,v)` underlying `τ̃_{r,m}`.
pub fn lawson_immersion(p: LawsonPair, u: f64, v: f64) -> AmbientPoint {
    lawson_tau_point(p.into(), u, v)
}

impl Immersion for LawsonTau {
    fn ambient_dim(&self) -> usize {
        4
    }
    fn point(&self, x: f64, y: f64) -> Result<AmbientPoint> {
        Ok(lawson_tau_point(*self, x, y))
    }
}

const DEGENERACY_GUARD: f64 = 1e-14;

fn normal_denominator(p: LawsonPair, v: f64) -> Result<f64> {
    let (r, m) = (p.r as f64, p.m as f64);
    let (sv, cv) = v.sin_cos();
    let d = (r * r * cv * cv + m * m * sv * sv).sqrt();
    if d < DEGENERACY_GUARD {
        return Err(Error::Degeneracy(format!(
            "normal denominator {d:e} at v = {v}"
        )));
    }
    Ok(d)
}

/// Unit normal `I*` of the Lawson surface inside S³.
pub fn gauss_normal(p: LawsonPair, u: f64, v: f64) -> Result<AmbientPoint> {
    let (r, m) = (p.r as f64, p.m as f64);
    let d = normal_denominator(p, v)?;
    let (sr, cr) = (r * u).sin_cos();
    let (sm, cm) = (m * u).sin_cos();
    let (sv, cv) = v.sin_cos();
    Ok(AmbientPoint::new4([
        m * sr * sv / d,
        -m * cr * sv / d,
        -r * sm * cv / d,
        r * cm * cv / d,
    ]))
}

/// Explicit closed form of the bipolar immersion `Ĩ = I ∧ I*`.
pub fn bipolar_immersion(p: LawsonPair, u: f64, v: f64) -> Result<AmbientPoint> {
    let (r, m) = (p.r as f64, p.m as f64);
    let d = normal_denominator(p, v)?;
    let (sr, cr) = (r * u).sin_cos();
    let (sm, cm) = (m * u).sin_cos();
    let (sv, cv) = v.sin_cos();
    let (c2, s2) = (cv * cv, sv * sv);
    Ok(AmbientPoint::new6([
        -m * sv * cv / d,
        r * sv * cv / d,
        (-r * c2 * sm * cr - m * s2 * sr * cm) / d,
        (r * c2 * cm * sr + m * s2 * cr * sm) / d,
        (-r * c2 * sm * sr + m * s2 * cr * cm) / d,
        (r * c2 * cm * cr - m * s2 * sr * sm) / d,
    ]))
}

/// Index pairs of the basis `e_i ∧ e_j` of Λ²R⁴, lexicographic.
pub const WEDGE_BASIS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Generic exterior product of two vectors of R⁴ in [`WEDGE_BASIS`] coordinates.
pub fn wedge4(x: &AmbientPoint, y: &AmbientPoint) -> [f64; 6] {
    assert!(x.dim() == 4 && y.dim() == 4, "wedge4 needs vectors of R⁴");
    WEDGE_BASIS.map(|(i, j)| x[i] * y[j] - x[j] * y[i])
}

/// Slot `i` of the permuted vector is `sign[i] * w[source[i]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedPermutation {
    pub source: [usize; 6],
    pub sign: [i8; 6],
}

impl SignedPermutation {
    pub fn apply(&self, w: &[f64; 6]) -> [f64; 6] {
        std::array::from_fn(|i| self.sign[i] as f64 * w[self.source[i]])
    }
}

/// Maps lexicographic wedge coordinates (12,13,14,23,24,34) onto the slots of
/// the explicit bipolar formula: (12, 34, 13, 24, 23, 14), all signs positive.
pub const BIPOLAR_WEDGE_PERMUTATION: SignedPermutation = SignedPermutation {
    source: [0, 5, 1, 4, 3, 2],
    sign: [1, 1, 1, 1, 1, 1],
};

/// Recovers the signed permutation relating [`wedge4`] of `I` and `I*` to
/// [`bipolar_immersion`] by matching components at one generic point.
pub fn calibrate_wedge_permutation() -> Result<SignedPermutation> {
    let p = LawsonPair::new(7, 3)?;
    let (u, v) = (0.4123, 0.9371);
    let w = wedge4(&lawson_immersion(p, u, v), &gauss_normal(p, u, v)?);
    let explicit = bipolar_immersion(p, u, v)?;
    let mut source = [usize::MAX; 6];
    let mut sign = [0i8; 6];
    for (slot, &target) in explicit.as_slice().iter().enumerate() {
        let (idx, s, err) = (0..6)
            .flat_map(|j| [(j, 1i8), (j, -1i8)])
            .map(|(j, s)| (j, s, (s as f64 * w[j] - target).abs()))
            .min_by(|a, b| a.2.total_cmp(&b.2))
            .expect("six candidates");
        if err > 1e-12 || source.contains(&idx) {
            return Err(Error::Degeneracy(format!(
                "wedge calibration failed at slot {slot} (residual {err:e})"
            )));
        }
        source[slot] = idx;
        sign[slot] = s;
    }
    Ok(SignedPermutation { source, sign })
}

impl Immersion for LawsonPair {
    fn ambient_dim(&self) -> usize {
        6
    }
    /// The bipolar surface `τ̃_{r,m}`.
    fn point(&self, u: f64, v: f64) -> Result<AmbientPoint> {
        bipolar_immersion(*self, u, v)
    }
}

/// The immersion `F_{a,b,c}` with the parameters in a fixed (not necessarily
/// canonical) order. Complex component `k` occupies real slots `2k-1, 2k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedImmersion {
    a: f64,
    b: f64,
    c: f64,
    amp: [f64; 3],
    /// `(b² - a²)/(c² - a²)`
    stretch: f64,
}

impl GeneralizedImmersion {
    /// Uses the canonical ordering of `t`.
    pub fn new(t: &GeneralizedTriple) -> Self {
        Self::build(t.a as f64, t.b as f64, t.c as f64)
    }

    /// Uses `(a, b, c)` in the given order; requires the same constraints as
    /// [`canonicalize_and_classify`] but no common-factor reduction.
    pub fn ordered(a: u32, b: u32, c: u32) -> Result<Self> {
        canonicalize_and_classify(a as i64, b as i64, c as i64)?;
        Ok(Self::build(a as f64, b as f64, c as f64))
    }

    fn build(a: f64, b: f64, c: f64) -> Self {
        let (a2, b2, c2) = (a * a, b * b, c * c);
        // Third radicand written as (c²-a²-b²)/(2(c²-b²)) to stay real.
        let amp = [
            ((b2 + c2 - a2) / (2.0 * (c2 - a2))).sqrt(),
            ((a2 + c2 - b2) / (2.0 * (c2 - b2))).sqrt(),
            ((c2 - a2 - b2) / (2.0 * (c2 - b2))).sqrt(),
        ];
        Self {
            a,
            b,
            c,
            amp,
            stretch: (b2 - a2) / (c2 - a2),
        }
    }

    pub fn params(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn eval(&self, x: f64, y: f64) -> AmbientPoint {
        let (sy, cy) = y.sin_cos();
        let (sa, ca) = (self.a * x).sin_cos();
        let (sb, cb) = (self.b * x).sin_cos();
        let (sc, cc) = (self.c * x).sin_cos();
        let radial = (1.0 - self.stretch * sy * sy).sqrt();
        let [p, q, s] = self.amp;
        AmbientPoint::new6([
            p * ca * sy,
            p * sa * sy,
            q * cb * cy,
            q * sb * cy,
            s * cc * radial,
            s * sc * radial,
        ])
    }
}

impl Immersion for GeneralizedImmersion {
    fn ambient_dim(&self) -> usize {
        6
    }
    fn point(&self, x: f64, y: f64) -> Result<AmbientPoint> {
        Ok(self.eval(x, y))
    }
}

impl Immersion for GeneralizedTriple {
    fn ambient_dim(&self) -> usize {
        6
    }
    fn point(&self, x: f64, y: f64) -> Result<AmbientPoint> {
        Ok(generalized_immersion(self, x, y))
    }
}

pub fn generalized_immersion(t: &GeneralizedTriple, x: f64, y: f64) -> AmbientPoint {
    GeneralizedImmersion::new(t).eval(x, y)
}

/// The bipolar surface `τ̃_{r,m}` as a surface `T_{a,0,c}`, canonicalized
/// to `(0, a, c)`.
pub fn bipolar_to_generalized(p: LawsonPair) -> GeneralizedTriple {
    let (a, c) = bipolar_parameters(p);
    canonicalize_and_classify(a as i64, 0, c as i64)
        .expect("bipolar parameters always satisfy c > a >= 1")
}

/// `(a, c)` of the surface `T_{a,0,c}` isometric to `τ̃_{r,m}`.
pub fn bipolar_parameters(p: LawsonPair) -> (u32, u32) {
    match p.case {
        LawsonCase::Mod2 => (p.r - p.m, p.r + p.m),
        LawsonCase::Mod41 | LawsonCase::Mod43 => ((p.r - p.m) / 2, (p.r + p.m) / 2),
    }
}

/// Inverse of [`bipolar_to_generalized`]; `None` when the triple is not a
/// bipolar Lawson surface.
pub fn generalized_to_bipolar(t: &GeneralizedTriple) -> Option<LawsonPair> {
    if t.a != 0 || t.regime != Regime::Interior {
        return None;
    }
    let (a0, c) = (t.b, t.c);
    let (r, m) = if a0 % 2 == 1 && c % 2 == 1 {
        ((c + a0) / 2, (c - a0) / 2)
    } else {
        (c + a0, c - a0)
    };
    LawsonPair::new(r, m).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticRectangle {
    pub x_range: (f64, f64),
    pub z_range: (f64, f64),
    /// Parameter `k² = -a²/(c² - a²)` of the substitution `sin y = sn(z, k)`.
    pub k_param: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FundamentalDomain {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub covering_degree: u32,
    pub elliptic: Option<EllipticRectangle>,
}

pub fn fundamental_domain(t: &GeneralizedTriple) -> Result<FundamentalDomain> {
    let degree = t.covering_degree();
    let elliptic = if t.a == 0 && t.b > 0 && t.regime == Regime::Interior {
        let (a, c) = (t.b as f64, t.c as f64);
        let k_param = EllipticParameter::new(-a * a / (c * c - a * a))?;
        let k = comp_k(k_param)?;
        let x_end = if t.c.is_multiple_of(2) { PI } else { TAU };
        Some(EllipticRectangle {
            x_range: (0.0, x_end),
            z_range: (k, 5.0 * k),
            k_param: k_param.param(),
        })
    } else {
        None
    };
    Ok(FundamentalDomain {
        x_range: (0.0, TAU),
        y_range: (0.0, TAU),
        covering_degree: degree,
        elliptic,
    })
}
