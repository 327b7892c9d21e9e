use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use latgap::fibration::{make_pka, make_qab};
use latgap::monoid::{closure, facet_normality, hilbert_basis, is_normal_dilation, is_very_ample, ClosureLedger};
use latgap::monoid::{FacetNormality, VeryAmpleVerdict};
use latgap::oracle::{
    corollary_pka_predicates, gap_formula_pka, gap_formula_qab, hilbert_basis_pka, holes_pka, holes_qab,
    product_identities,
};
use latgap::{ComputeConfig, GradedPoint, LatticePolytope};
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::default_hilbert_degree;
use crate::fail::{CliError, CliResult};
use crate::instance::InstanceSpec;
use crate::output::{Output, Table};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: &'static str,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), status: if pass { "PASS" } else { "FAIL" }, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == "PASS"
    }
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    target: &'static str,
    params: Value,
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    data: Value,
    status: &'static str,
}

/// A finished verification; `passed` is false if any check failed.
pub struct Verdict {
    pub output: Output,
    pub passed: bool,
}

fn finish(target: &'static str, params: Value, checks: Vec<Check>, data: Value) -> CliResult<Verdict> {
    let passed = checks.iter().all(Check::passed);
    let mut t = Table::new(&["check", "status", "detail"]);
    for c in &checks {
        t.push(vec![c.name.clone(), c.status.to_string(), c.detail.clone()]);
    }
    let report =
        VerifyReport { command: "verify", target, params, checks, data, status: if passed { "PASS" } else { "FAIL" } };
    Ok(Verdict { output: Output::new(&report, t)?, passed })
}

fn compare<T: PartialEq + std::fmt::Debug>(name: &str, engine: &T, oracle: &T) -> Check {
    if engine == oracle {
        Check::new(name, true, format!("{engine:?}"))
    } else {
        Check::new(name, false, format!("engine {engine:?}, oracle {oracle:?}"))
    }
}

fn set_check(name: &str, engine: &[GradedPoint], oracle: &[GradedPoint]) -> Check {
    let a: BTreeSet<&GradedPoint> = engine.iter().collect();
    let b: BTreeSet<&GradedPoint> = oracle.iter().collect();
    let missing = b.difference(&a).count();
    let extra = a.difference(&b).count();
    let pass = missing == 0 && extra == 0 && a.len() == engine.len();
    Check::new(name, pass, format!("{} points, {missing} missing, {extra} unexpected", a.len()))
}

fn hole_checks(
    ledger: &ClosureLedger,
    oracle: impl Fn(u64) -> latgap::Result<Vec<GradedPoint>>,
) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for l in &ledger.levels {
        if l.holes_truncated {
            out.push(Check::new(format!("holes_{}", l.degree), false, "hole list truncated by the hole cap"));
            continue;
        }
        let want = oracle(l.degree)?;
        if !want.is_empty() || !l.holes.is_empty() {
            out.push(set_check(&format!("holes_{}", l.degree), &l.holes, &want));
        }
    }
    Ok(out)
}

/// Engine against closed forms on `P_{k,a}`: gap vector, hole sets, Hilbert basis.
pub fn pka(k: u64, a: i64, max_degree: Option<u64>, config: &ComputeConfig) -> CliResult<Verdict> {
    let p = make_pka(k, a)?;
    let d = match max_degree {
        Some(d) => d,
        None => u64::try_from(a).map_err(|_| CliError::Input("a must be positive".into()))? + 2,
    };
    let ledger = closure(&p, d, config)?;
    let mut checks = vec![compare("gap_vector", &ledger.gap_vector(), &gap_formula_pka(k, a, d)?)];
    checks.extend(hole_checks(&ledger, |level| holes_pka(k, a, level))?);
    let hb = hilbert_basis(&p, default_hilbert_degree(&p).max(k), config)?;
    let mut want = hilbert_basis_pka(k, a)?;
    // coordinate 0 is the degree, so this is by degree and then lexicographic
    want.sort();
    checks.push(set_check("hilbert_basis", &hb.elements, &want));
    checks.push(Check::new("hilbert_order", hb.elements == want, format!("top degree {}", hb.max_degree())));
    finish("pka", json!({"k": k, "a": a, "max_degree": d}), checks, Value::Null)
}

/// Parses `lo..hi` (inclusive).
pub fn parse_degrees(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u64 = lo.trim().parse().map_err(|e| format!("{lo:?}: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("{hi:?}: {e}"))?;
    if lo > hi || hi == 0 {
        return Err(format!("empty degree range {s:?}"));
    }
    Ok(lo..=hi)
}

/// Degrees `d` inside the window with `g[d-1] > g[d] < g[d+1]`.
fn valleys(g: &[u64], window: &RangeInclusive<u64>) -> Vec<u64> {
    let (lo, hi) = (*window.start() as usize, *window.end() as usize);
    (lo + 1..hi).filter(|&d| g[d - 1] > g[d] && g[d] < g[d + 1]).map(|d| d as u64).collect()
}

/// Engine against closed forms on `Q_{a,b}` up to the end of the window.
pub fn qab(a: i64, b: i64, degrees: RangeInclusive<u64>, config: &ComputeConfig) -> CliResult<Verdict> {
    let q = make_qab(a, b)?;
    let d = *degrees.end();
    let ledger = closure(&q, d, config)?;
    let g = ledger.gap_vector();
    let mut checks = vec![compare("gap_vector", &g, &gap_formula_qab(a, b, d)?)];
    // there are no holes below level 2
    let oracle = |level| if level < 2 { Ok(Vec::new()) } else { holes_qab(a, b, level) };
    checks.extend(hole_checks(&ledger, oracle)?);
    let window: Vec<u64> = degrees.clone().map(|i| g[i as usize]).collect();
    let dips = valleys(&g, &degrees);
    let shape: Vec<String> =
        dips.iter().map(|&i| format!("{} > {} < {}", g[i as usize - 1], g[i as usize], g[i as usize + 1])).collect();
    let data = json!({"window": window, "non_unimodal": !dips.is_empty(), "valleys": shape});
    let params = json!({"a": a, "b": b, "degrees": [degrees.start(), degrees.end()]});
    finish("qab", params, checks, data)
}

/// Normality of the dilations of `P_{k,k+2}` against the divisor rule.
pub fn corollary(k: u64, max_dilation: u64, multiples: u64, config: &ComputeConfig) -> CliResult<Verdict> {
    if max_dilation < 1 || multiples < 2 {
        return Err(CliError::Input("needs S >= 1 and M >= 2".into()));
    }
    let a = i64::try_from(k).map_err(|_| CliError::Input("k too large".into()))? + 2;
    let p = make_pka(k, a)?;
    let mut checks = Vec::new();
    let mut normal = Vec::new();
    for s in 1..=max_dilation {
        let pred = corollary_pka_predicates(k, s)?;
        // a hole of degree at most k of P needs up to ceil(k / s) multiples of sP
        let m = multiples.max(k.div_ceil(s));
        let got = is_normal_dilation(&p, s, m, config)?;
        normal.push(got);
        let word = |b: bool| if b { "normal" } else { "non-normal" };
        checks.push(Check::new(
            format!("dilation_{s}"),
            got == pred.normal,
            format!("{}P {} up to {m} multiples, predicted {}", s, word(got), word(pred.normal)),
        ));
    }
    let pred = corollary_pka_predicates(k, 1)?;
    let hb = hilbert_basis(&p, default_hilbert_degree(&p).max(k), config)?;
    checks.push(compare("mu_hilb", &hb.max_degree(), &pred.mu_hilb));
    let midp = normal.iter().position(|&b| b).map(|i| i as u64 + 1);
    if pred.mu_midp <= max_dilation {
        checks.push(compare("mu_midp", &midp, &Some(pred.mu_midp)));
    }
    if pred.mu_idp <= max_dilation {
        let tail = normal.iter().rev().take_while(|&&b| b).count() as u64;
        let idp = (tail > 0).then(|| max_dilation - tail + 1);
        checks.push(compare("mu_idp", &idp, &Some(pred.mu_idp)));
    }
    let data = json!({
        "normal_dilations": normal,
        "predicted": {"mu_hilb": pred.mu_hilb, "mu_midp": pred.mu_midp, "mu_idp": pred.mu_idp,
                      "midp_adjusted": pred.midp_adjusted},
    });
    finish("corollary", json!({"k": k, "S": max_dilation, "M": multiples}), checks, data)
}

/// Level and reachable counts of `P x Q` against the products of the factors' counts.
pub fn product(
    left: &InstanceSpec,
    right: &InstanceSpec,
    max_degree: u64,
    config: &ComputeConfig,
) -> CliResult<Verdict> {
    let p = left.build(config.arith)?;
    let q = right.build(config.arith)?;
    let pq = p.product(&q)?;
    let lp = closure(&p, max_degree, config)?;
    let lq = closure(&q, max_degree, config)?;
    let lpq = closure(&pq, max_degree, config)?;
    let pred = product_identities(&lp, &lq)?;
    let checks = vec![
        compare("level_points", &lpq.ehrhart_counts(), &pred.level_points),
        compare("reachable", &lpq.hilbert_function(), &pred.reachable),
        compare("gap_vector", &lpq.gap_vector(), &pred.gap_vector),
    ];
    let gap_degrees: Vec<u64> = lpq.levels.iter().filter(|l| l.hole_count > 0).map(|l| l.degree).collect();
    let params = json!({"left": left, "right": right, "max_degree": max_degree});
    finish("product", params, checks, json!({"gap_degrees": gap_degrees}))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FacetExpectation {
    /// Every facet is normal up to the degree bound.
    AllNormal,
    /// Some facet has a hole up to the degree bound.
    SomeNonNormal,
}

pub fn normal_facets(
    spec: &InstanceSpec,
    max_degree: u64,
    expect: FacetExpectation,
    config: &ComputeConfig,
) -> CliResult<Verdict> {
    let p: LatticePolytope = spec.build(config.arith)?;
    let facets: Vec<FacetNormality> = facet_normality(&p, max_degree, config)?;
    let bad = facets.iter().filter(|f| !f.normal).count();
    let pass = match expect {
        FacetExpectation::AllNormal => !facets.is_empty() && bad == 0,
        FacetExpectation::SomeNonNormal => bad > 0,
    };
    let detail = format!("{bad} of {} facets with holes up to degree {max_degree}", facets.len());
    let checks = vec![Check::new("facets", pass, detail)];
    let data = serde_json::to_value(&facets).map_err(|e| CliError::Input(e.to_string()))?;
    let expect = match expect {
        FacetExpectation::AllNormal => "all-normal",
        FacetExpectation::SomeNonNormal => "some-non-normal",
    };
    let params = json!({"instance": spec, "max_degree": max_degree, "expect": expect});
    finish("normal-facets", params, checks, json!({"facets": data}))
}

pub fn very_ample(spec: &InstanceSpec, bound: u64, config: &ComputeConfig) -> CliResult<Verdict> {
    let p = spec.build(config.arith)?;
    let v = is_very_ample(&p, bound, config)?;
    let detail = match &v {
        VeryAmpleVerdict::VeryAmpleUpTo { bound } => format!("vertex cones generated up to {bound}"),
        VeryAmpleVerdict::NotVeryAmple { vertex, witness } => {
            format!("vertex {vertex:?}: {witness:?} is not generated")
        }
    };
    let checks = vec![Check::new("very_ample", v.is_very_ample(), detail)];
    let data = serde_json::to_value(&v).map_err(|e| CliError::Input(e.to_string()))?;
    finish("very-ample", json!({"instance": spec, "bound": bound}), checks, json!({"verdict": data}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("9..11").unwrap(), 9..=11);
        assert_eq!(parse_degrees("2..=4").unwrap(), 2..=4);
        assert!(parse_degrees("5..3").is_err());
        assert!(parse_degrees("7").is_err());
    }

    #[test]
    fn valley_detection() {
        let g = [0, 0, 5, 3, 4, 4, 2, 1];
        assert_eq!(valleys(&g, &(0..=7)), vec![3]);
        assert_eq!(valleys(&g, &(4..=7)), Vec::<u64>::new());
    }
}
