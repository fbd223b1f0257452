//! Closed-form spectral quantities: `S(a,b,c)`, extremal indices and values of
//! `Λ_j = λ_j · Area` for the three families, the lower bounds for
//! `sup Λ_n`, and the maximality classification of `T_{a,b,c}`.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::elliptic::{ellip_e, ellip_k};
use crate::error::{Error, Result};
use crate::surfaces::{
    generalized_to_bipolar, GeneralizedTriple, LawsonCase, LawsonPair, LawsonTau, Regime, Topology,
};

/// Parameter `k² = 8/9` of the modulus `2√2/3`.
pub const KLEIN_MODULUS_PARAM: f64 = 8.0 / 9.0;

/// `S(a,b,c)` with the parameters in the given order; the elliptic parameter
/// `(b² - a²)/(c² - a²)` is negative when `a > b`.
pub fn s_ordered(a: f64, b: f64, c: f64) -> Result<f64> {
    let (a2, b2, c2) = (a * a, b * b, c * c);
    if c2 <= a2 {
        return Err(Error::Domain(format!("S({a},{b},{c}) needs c > a")));
    }
    let gap = c2 - a2;
    let m = (b2 - a2) / gap;
    Ok(4.0 * PI / gap.sqrt() * (2.0 * gap * ellip_e(m)? - (gap - b2) * ellip_k(m)?))
}

pub fn s_abc(t: &GeneralizedTriple) -> Result<f64> {
    s_ordered(t.a() as f64, t.b() as f64, t.c() as f64)
}

/// `E` at the modulus `√(r² - m²)/r` of the bipolar surface.
fn bipolar_e(p: LawsonPair) -> Result<f64> {
    let (r2, m2) = ((p.r() as f64).powi(2), (p.m() as f64).powi(2));
    ellip_e((r2 - m2) / r2)
}

/// Extremal index and `Λ` of the bipolar surface `τ̃_{r,m}`.
pub fn bipolar_lambda(p: LawsonPair) -> Result<(u32, f64)> {
    let r = p.r();
    let e = bipolar_e(p)?;
    let rf = r as f64;
    Ok(match p.case() {
        LawsonCase::Mod2 => (4 * r - 2, 16.0 * PI * rf * e),
        LawsonCase::Mod41 => (2 * r - 2, 8.0 * PI * rf * e),
        LawsonCase::Mod43 => (r - 2, 4.0 * PI * rf * e),
    })
}

/// Extremal index and `Λ` of the Lawson surface `τ_{m,n}`; the larger
/// frequency plays the role of `a` in `8πa E(√(a²-b²)/a)`.
pub fn lawson_lambda(t: LawsonTau) -> Result<(u32, f64)> {
    let (hi, lo) = (t.m().max(t.n()) as u64, t.m().min(t.n()) as u64);
    let norm2 = hi * hi + lo * lo;
    let j = 2 * (isqrt(norm2) / 2) + hi + lo - 1;
    let (hf, lf) = (hi as f64, lo as f64);
    let value = 8.0 * PI * hf * ellip_e((hf * hf - lf * lf) / (hf * hf))?;
    Ok((j as u32, value))
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Lower bound for `sup Λ_n` over all metrics on the torus or Klein bottle.
pub fn prop1_bound(topology: Topology, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("index n must be >= 1".into()));
    }
    let base = 8.0 * PI * (n as f64 - 1.0);
    Ok(match topology {
        Topology::Torus => base + 8.0 * PI * PI / 3f64.sqrt(),
        Topology::KleinBottle => base + 12.0 * PI * ellip_e(KLEIN_MODULUS_PARAM)?,
    })
}

/// `(16 - 6E(2√2/3))/(4 - π)`: above this `a+b+c` the crude bound
/// `S < 2π²(a+b+c)` already implies the Klein-bottle inequality.
pub fn klein_threshold() -> Result<f64> {
    Ok((16.0 - 6.0 * ellip_e(KLEIN_MODULUS_PARAM)?) / (4.0 - PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Maximal,
    NotMaximal,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Maximal => "maximal",
            Verdict::NotMaximal => "not_maximal",
        })
    }
}

/// `lhs < rhs` (or `<=` when not strict), with `margin = rhs - lhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inequality {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub strict: bool,
    pub holds: bool,
}

impl Inequality {
    fn new(label: impl Into<String>, lhs: f64, rhs: f64, strict: bool) -> Self {
        let margin = rhs - lhs;
        Self {
            label: label.into(),
            lhs,
            rhs,
            margin,
            strict,
            holds: if strict { margin > 0.0 } else { margin >= 0.0 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Inequality(Inequality),
    /// `Λ` attains the lower bound for `sup Λ_j`.
    EqualityWitness {
        label: String,
        lambda: f64,
        bound: f64,
    },
    /// Established outside this computation.
    Citation {
        label: String,
    },
}

/// Which of the three strict inequalities applies to an `abc ≠ 0` triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop2Case {
    /// `a`, `b` of different parity, `c` even (Klein bottle).
    MixedParityEvenC,
    /// `a`, `b` odd, `c` even.
    OddOddEvenC,
    /// `c` odd.
    OddC,
}

const EXCEPTIONAL_MIXED: [(u32, u32, u32); 3] = [(1, 2, 4), (1, 2, 6), (2, 3, 4)];
const EXCEPTIONAL_ODD_ODD: [(u32, u32, u32); 6] = [
    (1, 1, 4),
    (1, 1, 6),
    (1, 1, 8),
    (1, 3, 4),
    (1, 3, 6),
    (3, 3, 4),
];
const EXCEPTIONAL_ODD_C: [(u32, u32, u32); 1] = [(1, 1, 3)];

/// The equilateral torus, where the second inequality is an equality.
pub const EQUILATERAL: (u32, u32, u32) = (1, 1, 2);
/// The bipolar Klein bottle `τ̃_{3,1}`.
pub const BIPOLAR_KLEIN: (u32, u32, u32) = (0, 1, 2);

/// Triples below the threshold sum that need an explicit check.
pub fn proof_exceptional_triples() -> impl Iterator<Item = (u32, u32, u32)> {
    EXCEPTIONAL_MIXED
        .into_iter()
        .chain(EXCEPTIONAL_ODD_ODD)
        .chain(EXCEPTIONAL_ODD_C)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop2Check {
    pub case: Prop2Case,
    pub inequality: Inequality,
    pub proof_exceptional: bool,
    pub equality_witness: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Audit {
    /// `S(a,b,c) < 2π²(a+b+c)`, non-strict on the Lawson boundary and at
    /// `(0,0,1)`, where both sides equal `2π²`.
    pub prop3: Inequality,
    /// Present for `abc ≠ 0` interior triples.
    pub prop2: Option<Prop2Check>,
}

pub fn prop2_prop3_audit(t: &GeneralizedTriple) -> Result<Audit> {
    let (a, b, c) = t.abc();
    let s = s_abc(t)?;
    let sum = t.sum() as f64;
    let prop3 = Inequality::new(
        "S(a,b,c) < 2 pi^2 (a+b+c)",
        s,
        2.0 * PI * PI * sum,
        t.regime() == Regime::Interior && (a, b, c) != (0, 0, 1),
    );
    if a == 0 || t.regime() != Regime::Interior {
        return Ok(Audit { prop3, prop2: None });
    }
    let (case, index, lambda, exceptional) = if c % 2 == 0 && (a + b) % 2 == 1 {
        (
            Prop2Case::MixedParityEvenC,
            t.sum() - 3,
            s,
            &EXCEPTIONAL_MIXED[..],
        )
    } else if c % 2 == 0 {
        (
            Prop2Case::OddOddEvenC,
            t.sum() - 3,
            s,
            &EXCEPTIONAL_ODD_ODD[..],
        )
    } else {
        (
            Prop2Case::OddC,
            2 * t.sum() - 3,
            2.0 * s,
            &EXCEPTIONAL_ODD_C[..],
        )
    };
    let bound = prop1_bound(t.topology(), index)?;
    let label = format!(
        "Lambda_{index}(T) < sup-Lambda lower bound ({})",
        t.topology()
    );
    Ok(Audit {
        prop3,
        prop2: Some(Prop2Check {
            case,
            inequality: Inequality::new(label, lambda, bound, true),
            proof_exceptional: exceptional.contains(&(a, b, c)),
            equality_witness: (a, b, c) == EQUILATERAL,
        }),
    })
}

/// Index, value and provenance of `Λ` for a canonical triple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralRecord {
    pub triple: (u32, u32, u32),
    pub topology: Topology,
    pub regime: Regime,
    pub index_j: u32,
    pub lambda_value: f64,
    pub verdict: Verdict,
    pub bipolar_pair: Option<(u32, u32)>,
    pub note: Option<String>,
    pub evidence: Vec<Evidence>,
}

/// Index and `Λ` value of `T_{a,b,c}`, dispatched by family.
pub fn extremal_lambda(t: &GeneralizedTriple) -> Result<(u32, f64)> {
    let (a, b, c) = t.abc();
    if t.regime() == Regime::LawsonBoundary {
        return lawson_lambda(LawsonTau::new(a, b)?);
    }
    if (a, b, c) == (0, 0, 1) {
        // Clifford torus with metric halved: λ₁ = 2 with multiplicity 4.
        return Ok((1, 2.0 * s_abc(t)?));
    }
    if let Some(p) = generalized_to_bipolar(t) {
        return bipolar_lambda(p);
    }
    let s = s_abc(t)?;
    Ok(if c % 2 == 0 {
        (t.sum() - 3, s)
    } else {
        (2 * t.sum() - 3, 2.0 * s)
    })
}

/// `Λ` computed from `S(a,b,c)` by the parity of `c`, ignoring the family.
pub fn s_branch_lambda(t: &GeneralizedTriple) -> Result<f64> {
    let s = s_abc(t)?;
    Ok(if t.c().is_multiple_of(2) { s } else { 2.0 * s })
}

pub fn maximality_verdict(t: &GeneralizedTriple) -> Result<(Verdict, Vec<Evidence>)> {
    let abc = t.abc();
    let (index, lambda) = extremal_lambda(t)?;
    let bound = prop1_bound(t.topology(), index)?;
    let mut evidence = Vec::new();
    let verdict = if abc == EQUILATERAL || abc == BIPOLAR_KLEIN {
        evidence.push(Evidence::EqualityWitness {
            label: format!(
                "Lambda_{index} equals the {} lower bound at n = {index}",
                t.topology()
            ),
            lambda,
            bound,
        });
        Verdict::Maximal
    } else {
        Verdict::NotMaximal
    };
    if verdict == Verdict::NotMaximal {
        match (t.regime(), abc) {
            (Regime::LawsonBoundary, _) => evidence.push(Evidence::Citation {
                label: "Lawson tau-surface: extremal metrics shown non-maximal in prior work".into(),
            }),
            (_, (0, 0, 1)) => evidence.push(Evidence::Citation {
                label: "Clifford torus with metric multiplied by 1/2: extremal, not maximal".into(),
            }),
            (_, (0, _, _)) => evidence.push(Evidence::Citation {
                label: "bipolar Lawson surface: extremal metrics other than tau~(3,1) shown non-maximal in prior work"
                    .into(),
            }),
            _ => {
                let audit = prop2_prop3_audit(t)?;
                if let Some(p2) = audit.prop2 {
                    evidence.push(Evidence::Inequality(p2.inequality));
                }
            }
        }
    }
    evidence.push(Evidence::Inequality(prop2_prop3_audit(t)?.prop3));
    Ok((verdict, evidence))
}

pub fn spectral_record(t: &GeneralizedTriple) -> Result<SpectralRecord> {
    let (index_j, lambda_value) = extremal_lambda(t)?;
    let (verdict, evidence) = maximality_verdict(t)?;
    let note = match t.abc() {
        (0, 0, 1) => Some("Clifford torus with metric multiplied by 1/2".to_string()),
        EQUILATERAL => Some("equilateral torus".to_string()),
        BIPOLAR_KLEIN => Some("bipolar Lawson Klein bottle tau~(3,1)".to_string()),
        _ => None,
    };
    Ok(SpectralRecord {
        triple: t.abc(),
        topology: t.topology(),
        regime: t.regime(),
        index_j,
        lambda_value,
        verdict,
        bipolar_pair: generalized_to_bipolar(t).map(|p| (p.r(), p.m())),
        note,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::canonicalize_and_classify;

    fn triple(a: i64, b: i64, c: i64) -> GeneralizedTriple {
        canonicalize_and_classify(a, b, c).unwrap()
    }

    #[test]
    fn s_examples() {
        let s = s_abc(&triple(1, 1, 2)).unwrap();
        assert!((s - 8.0 * PI * PI / 3f64.sqrt()).abs() < 1e-12);
        let s = s_abc(&triple(0, 1, 2)).unwrap();
        assert!((2.0 * s - 24.0 * PI * ellip_e(8.0 / 9.0).unwrap()).abs() < 1e-11);
        let d = s_ordered(1.0, 2.0, 4.0).unwrap() - s_ordered(2.0, 1.0, 4.0).unwrap();
        assert!(d.abs() < 1e-10);
        assert!(s_ordered(3.0, 0.0, 3.0).is_err());
    }

    #[test]
    fn lawson_clifford() {
        let (j, l) = lawson_lambda(LawsonTau::new(1, 1).unwrap()).unwrap();
        assert_eq!(j, 1);
        assert_eq!(l, 4.0 * PI * PI);
    }

    #[test]
    fn record_examples() {
        let r = spectral_record(&triple(1, 0, 2)).unwrap();
        assert_eq!((r.index_j, r.verdict), (1, Verdict::Maximal));
        assert_eq!(r.bipolar_pair, Some((3, 1)));
        assert!((r.lambda_value - 12.0 * PI * ellip_e(8.0 / 9.0).unwrap()).abs() < 1e-12);

        let r = spectral_record(&triple(1, 1, 2)).unwrap();
        assert_eq!((r.index_j, r.verdict), (1, Verdict::Maximal));
        assert!((r.lambda_value - 8.0 * PI * PI / 3f64.sqrt()).abs() < 1e-12);

        let r = spectral_record(&triple(1, 2, 4)).unwrap();
        assert_eq!(
            (r.index_j, r.topology, r.verdict),
            (4, Topology::KleinBottle, Verdict::NotMaximal)
        );
        assert!((r.lambda_value - s_ordered(1.0, 2.0, 4.0).unwrap()).abs() < 1e-12);

        let r = spectral_record(&triple(0, 0, 1)).unwrap();
        assert_eq!((r.index_j, r.verdict), (1, Verdict::NotMaximal));
        assert!((r.lambda_value - 4.0 * PI * PI).abs() < 1e-12);
        assert!(r.note.unwrap().contains("Clifford"));

        let r = spectral_record(&triple(3, 4, 5)).unwrap();
        let (j, l) = lawson_lambda(LawsonTau::new(4, 3).unwrap()).unwrap();
        assert_eq!((r.index_j, r.lambda_value), (j, l));
        assert_eq!(j, 2 * 2 + 7 - 1);
    }

    #[test]
    fn prop1_examples() {
        assert!(
            (prop1_bound(Topology::Torus, 1).unwrap() - 8.0 * PI * PI / 3f64.sqrt()).abs() < 1e-12
        );
        let kb = prop1_bound(Topology::KleinBottle, 1).unwrap();
        assert!((kb - 12.0 * PI * ellip_e(8.0 / 9.0).unwrap()).abs() < 1e-12);
        let t2 = prop1_bound(Topology::Torus, 2).unwrap();
        assert!((t2 - 8.0 * PI * (1.0 + PI / 3f64.sqrt())).abs() < 1e-12);
        assert!(prop1_bound(Topology::Torus, 0).is_err());
    }

    #[test]
    fn audit_examples() {
        let a = prop2_prop3_audit(&triple(1, 1, 3)).unwrap();
        let p2 = a.prop2.unwrap();
        assert_eq!(p2.case, Prop2Case::OddC);
        assert!(p2.proof_exceptional && p2.inequality.holds);
        let want = 8.0 * PI * (2.0 * 5.0 - 4.0 + PI / 3f64.sqrt());
        assert!((p2.inequality.rhs - want).abs() < 1e-12);

        let p2 = prop2_prop3_audit(&triple(1, 1, 2)).unwrap().prop2.unwrap();
        assert!(p2.equality_witness);
        assert!(p2.inequality.margin.abs() < 1e-12);

        let p2 = prop2_prop3_audit(&triple(2, 3, 4)).unwrap().prop2.unwrap();
        assert_eq!(p2.case, Prop2Case::MixedParityEvenC);
        assert!(p2.proof_exceptional && p2.inequality.margin > 0.0);

        assert!(prop2_prop3_audit(&triple(0, 1, 3)).unwrap().prop2.is_none());
        let boundary = prop2_prop3_audit(&triple(3, 4, 5)).unwrap();
        assert!(!boundary.prop3.strict && boundary.prop3.holds);
    }

    #[test]
    fn threshold_between_ten_and_eleven() {
        let t = klein_threshold().unwrap();
        assert!((10.0..11.0).contains(&t), "{t}");
    }
}
