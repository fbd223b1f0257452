//! Desk-scale check suites behind `lawson verify`.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lawson_core::catalog::canonical_triples;
use lawson_core::diffgeo::{laplace_beltrami_residual, raw_area_integral, PerturbedSphere};
use lawson_core::elliptic::{ellip_e, ellip_k, jacobi_sn_cn_dn, EllipticParameter};
use lawson_core::isometry::{domain_correspondence_check, isometry_discrepancy};
use lawson_core::quadrature::QuadratureSpec;
use lawson_core::report::{Check, Report};
use lawson_core::spectral::s_abc;
use lawson_core::surfaces::{
    canonicalize_and_classify, GeneralizedImmersion, GeneralizedTriple, Immersion, LawsonPair,
    LawsonTau,
};

use crate::Failure;

const SEED: u64 = 0x01a5_50e7;
const LB_STEP: f64 = 1e-3;

pub fn run(suite: &str, params: &[String], tol: Option<f64>) -> Result<(), Failure> {
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    let report = match suite {
        "minimal" => minimal(params, tol.unwrap_or(1e-4))?,
        "isometry" => isometry(params, tol.unwrap_or(1e-8))?,
        "area" => area(params, tol.unwrap_or(1e-8))?,
        "elliptic" => elliptic(params, tol.unwrap_or(1e-10))?,
        other => {
            return Err(Failure::Usage(format!(
                "unknown suite {other:?}; expected minimal, isometry, area or elliptic"
            )))
        }
    };
    println!("suite {suite}");
    print!("{report}");
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    if failed == 0 {
        println!(
            "{} of {} checks passed",
            report.checks.len(),
            report.checks.len()
        );
        Ok(())
    } else {
        println!("{failed} of {} checks failed", report.checks.len());
        Err(Failure::ChecksFailed)
    }
}

fn ints<T: std::str::FromStr>(words: &[String]) -> Result<Vec<T>, Failure> {
    words
        .iter()
        .map(|w| {
            w.parse()
                .map_err(|_| Failure::Usage(format!("expected an integer parameter, got {w:?}")))
        })
        .collect()
}

fn floats(words: &[String]) -> Result<Vec<f64>, Failure> {
    words
        .iter()
        .map(|w| {
            w.parse()
                .map_err(|_| Failure::Usage(format!("expected a number, got {w:?}")))
        })
        .collect()
}

type Surface = (String, Box<dyn Immersion>);

fn surface(params: &[String]) -> Result<Surface, Failure> {
    let (family, rest) = params
        .split_first()
        .ok_or_else(|| Failure::Usage("missing surface".into()))?;
    let n: Vec<u32> = ints(rest)?;
    let fam = family.to_ascii_lowercase();
    Ok(match (fam.as_str(), n.as_slice()) {
        ("tau" | "τ", &[m, k]) => (format!("tau({m},{k})"), Box::new(LawsonTau::new(m, k)?)),
        ("bipolar", &[r, m]) => (format!("tau~({r},{m})"), Box::new(LawsonPair::new(r, m)?)),
        ("t", &[a, b, c]) => (
            format!("T({a},{b},{c})"),
            Box::new(GeneralizedImmersion::ordered(a, b, c)?),
        ),
        _ => {
            return Err(Failure::Usage(format!(
                "expected `tau m n`, `bipolar r m` or `T a b c`, got {params:?}"
            )))
        }
    })
}

fn minimal(params: &[String], tol: f64) -> Result<Report, Failure> {
    let default = params.is_empty();
    let surfaces: Vec<Surface> = if default {
        [
            "tau 2 1",
            "tau 3 1",
            "bipolar 2 1",
            "bipolar 3 1",
            "T 1 0 2",
            "T 1 1 2",
            "T 1 2 4",
            "T 1 1 3",
        ]
        .iter()
        .map(|s| surface(&s.split(' ').map(String::from).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()?
    } else {
        vec![surface(params)?]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let points: Vec<(f64, f64)> = (0..100)
        .map(|_| (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)))
        .collect();
    let worst = |s: &dyn Immersion| -> Result<f64, Failure> {
        let mut w: f64 = 0.0;
        for &pt in &points {
            w = w.max(laplace_beltrami_residual(s, pt, LB_STEP)?);
        }
        Ok(w)
    };
    let mut r = Report::default();
    for (name, s) in &surfaces {
        r.push(Check::below(
            format!("{name} max |Lx - 2x|, 100 points"),
            worst(s.as_ref())?,
            tol,
        ));
    }
    if default {
        let control = worst(&PerturbedSphere::default())?;
        r.push(Check::above("perturbed control detected", control, 1e-2));
    }
    Ok(r)
}

fn isometry(params: &[String], tol: f64) -> Result<Report, Failure> {
    let pairs: Vec<(u32, u32)> = match ints::<u32>(params)?.as_slice() {
        [] => vec![(2, 1), (4, 1), (3, 2), (5, 1), (9, 5), (3, 1), (7, 5)],
        &[r, m] => vec![(r, m)],
        _ => return Err(Failure::Usage("isometry takes `r m`".into())),
    };
    let mut r = Report::default();
    for (rr, m) in pairs {
        let p = LawsonPair::new(rr, m)?;
        r.push(Check::below(
            format!("{p} pullback vs g~, 50x50"),
            isometry_discrepancy(p, (50, 50))?,
            tol,
        ));
        for mut c in domain_correspondence_check(p)?.report.checks {
            c.name = format!("{p} {}", c.name);
            r.push(c);
        }
    }
    Ok(r)
}

fn area(params: &[String], tol: f64) -> Result<Report, Failure> {
    let words = match params.first() {
        Some(w) if w.eq_ignore_ascii_case("t") => &params[1..],
        _ => params,
    };
    let triples: Vec<GeneralizedTriple> = match ints::<i64>(words)?.as_slice() {
        [] => canonical_triples(9),
        &[a, b, c] => vec![canonicalize_and_classify(a, b, c)?],
        _ => return Err(Failure::Usage("area takes `T a b c`".into())),
    };
    let q = QuadratureSpec::trapezoid(256)?;
    let mut r = Report::default();
    for t in &triples {
        let err = (raw_area_integral(t, &q)? - s_abc(t)?).abs();
        r.push(Check::below(
            format!("{t} raw quadrature vs S(a,b,c)"),
            err,
            tol,
        ));
    }
    Ok(r)
}

fn elliptic(params: &[String], tol: f64) -> Result<Report, Failure> {
    let ms = if params.is_empty() {
        (1..=50).map(|i| -2.0 + 2.99 * i as f64 / 50.0).collect()
    } else {
        floats(params)?
    };
    let mut r = Report::default();
    for m in ms {
        let p = EllipticParameter::new(m)?;
        let k = ellip_k(m)?;
        let mut ident: f64 = 0.0;
        for i in 0..64 {
            let t = jacobi_sn_cn_dn(4.0 * k * i as f64 / 64.0, p)?;
            ident = ident
                .max((t.sn * t.sn + t.cn * t.cn - 1.0).abs())
                .max((t.dn * t.dn + m * t.sn * t.sn - 1.0).abs());
        }
        ident = ident.max((jacobi_sn_cn_dn(k, p)?.sn - 1.0).abs());
        r.push(Check::below(
            format!("m = {m:+.4}: sn/cn/dn identities, sn(K) = 1"),
            ident,
            tol,
        ));
        if m > 0.0 && m < 1.0 {
            let (kc, e, ec) = (ellip_k(1.0 - m)?, ellip_e(m)?, ellip_e(1.0 - m)?);
            let legendre = (e * kc + ec * k - k * kc - FRAC_PI_2).abs();
            r.push(Check::below(
                format!("m = {m:+.4}: Legendre relation"),
                legendre,
                tol,
            ));
        }
    }
    Ok(r)
}
