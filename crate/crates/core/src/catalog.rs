//! Sweep over canonical triples and its CSV/JSON serializations.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::spectral::{prop1_bound, prop2_prop3_audit, spectral_record, Verdict};
use crate::surfaces::{canonicalize_and_classify, GeneralizedTriple, Regime, Topology};

pub const CSV_HEADER: &str =
    "a,b,c,topology,regime,index_j,lambda,lambda_over_bound,verdict,prop3_margin";

/// Smallest accepted `--max-sum`.
pub const MIN_MAX_SUM: u32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogRow {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub topology: Topology,
    pub regime: Regime,
    pub index_j: u32,
    pub lambda_value: f64,
    /// `Λ` divided by the lower bound for `sup Λ_j` at its own index.
    pub lambda_over_bound: f64,
    pub verdict: Verdict,
    /// `2π²(a+b+c) - S(a,b,c)`
    pub prop3_margin: f64,
}

/// Every canonical triple with `a + b + c <= max_sum`, sorted by
/// `(a+b+c, a, b, c)`.
pub fn canonical_triples(max_sum: u32) -> Vec<GeneralizedTriple> {
    let mut out = Vec::new();
    for a in 0..=max_sum {
        for b in a..=max_sum.saturating_sub(a) {
            for c in 1..=max_sum.saturating_sub(a + b) {
                if let Ok(t) = canonicalize_and_classify(a as i64, b as i64, c as i64) {
                    if t.abc() == (a, b, c) {
                        out.push(t);
                    }
                }
            }
        }
    }
    out.sort_by_key(|t| (t.sum(), t.a(), t.b(), t.c()));
    out
}

pub fn catalog_row(t: &GeneralizedTriple) -> Result<CatalogRow> {
    let rec = spectral_record(t)?;
    let audit = prop2_prop3_audit(t)?;
    let bound = prop1_bound(t.topology(), rec.index_j)?;
    Ok(CatalogRow {
        a: t.a(),
        b: t.b(),
        c: t.c(),
        topology: t.topology(),
        regime: t.regime(),
        index_j: rec.index_j,
        lambda_value: rec.lambda_value,
        lambda_over_bound: rec.lambda_value / bound,
        verdict: rec.verdict,
        prop3_margin: audit.prop3.margin,
    })
}

/// Rows come back in triple order whether or not the sweep runs in parallel.
pub fn build_catalog(max_sum: u32, parallel: bool) -> Result<Vec<CatalogRow>> {
    if max_sum < MIN_MAX_SUM {
        return Err(Error::InvalidParams(format!(
            "max-sum must be at least {MIN_MAX_SUM} (got {max_sum})"
        )));
    }
    let triples = canonical_triples(max_sum);
    if parallel {
        triples.par_iter().map(catalog_row).collect()
    } else {
        triples.iter().map(catalog_row).collect()
    }
}

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(rows: &[CatalogRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.a,
            r.b,
            r.c,
            r.topology,
            r.regime,
            r.index_j,
            fmt_f64(r.lambda_value),
            fmt_f64(r.lambda_over_bound),
            r.verdict,
            fmt_f64(r.prop3_margin)
        )?;
    }
    Ok(())
}

/// A float serialized verbatim at 17 significant digits.
pub fn raw_number(x: f64) -> Box<RawValue> {
    RawValue::from_string(fmt_f64(x)).expect("finite floats format as JSON numbers")
}

#[derive(Serialize)]
struct JsonRow {
    a: u32,
    b: u32,
    c: u32,
    topology: Topology,
    regime: Regime,
    index_j: u32,
    lambda: Box<RawValue>,
    lambda_over_bound: Box<RawValue>,
    verdict: Verdict,
    prop3_margin: Box<RawValue>,
}

pub fn write_json<W: Write>(rows: &[CatalogRow], mut w: W) -> std::io::Result<()> {
    let json: Vec<JsonRow> = rows
        .iter()
        .map(|r| JsonRow {
            a: r.a,
            b: r.b,
            c: r.c,
            topology: r.topology,
            regime: r.regime,
            index_j: r.index_j,
            lambda: raw_number(r.lambda_value),
            lambda_over_bound: raw_number(r.lambda_over_bound),
            verdict: r.verdict,
            prop3_margin: raw_number(r.prop3_margin),
        })
        .collect();
    serde_json::to_writer_pretty(&mut w, &json)?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalog_contents() {
        let rows = build_catalog(4, false).unwrap();
        let abc: Vec<_> = rows.iter().map(|r| (r.a, r.b, r.c)).collect();
        assert_eq!(abc, vec![(0, 0, 1), (0, 1, 2), (0, 1, 3), (1, 1, 2)]);
        let maximal: Vec<_> = rows
            .iter()
            .filter(|r| r.verdict == Verdict::Maximal)
            .map(|r| (r.a, r.b, r.c))
            .collect();
        assert_eq!(maximal, vec![(0, 1, 2), (1, 1, 2)]);
        assert!(build_catalog(2, false).is_err());
    }

    #[test]
    fn boundary_rows_are_included() {
        let rows = build_catalog(12, false).unwrap();
        assert!(rows
            .iter()
            .any(|r| (r.a, r.b, r.c) == (3, 4, 5) && r.regime == Regime::LawsonBoundary));
    }

    #[test]
    fn csv_and_json_are_stable() {
        let rows = build_catalog(10, true).unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&rows, &mut a).unwrap();
        write_csv(&build_catalog(10, false).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        assert!(text.contains("1,1,2,torus,interior,1,"));

        let mut j = Vec::new();
        write_json(&rows, &mut j).unwrap();
        let parsed: serde_json::Value = serde_json::from_slice(&j).unwrap();
        assert_eq!(parsed.as_array().unwrap().len(), rows.len());
        let lam = parsed[0]["lambda"].as_f64().unwrap();
        assert_eq!(lam, rows[0].lambda_value);
    }
}
