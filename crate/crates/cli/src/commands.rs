use latgap::monoid::{closure, hilbert_basis, mu_invariants, mu_invariants_product, MuReport};
use latgap::{ComputeConfig, Engine, GradedPoint, LatticePolytope};
use serde::Serialize;

use crate::fail::CliResult;
use crate::instance::InstanceSpec;
use crate::output::{joined, Output, Table};

/// Searching up to degree `dim P - 1` finds the whole Hilbert basis.
pub fn default_hilbert_degree(p: &LatticePolytope) -> u64 {
    (p.dim() as u64).saturating_sub(1).max(1)
}

#[derive(Serialize)]
struct GapLevel {
    degree: u64,
    level_points: u64,
    reachable: u64,
    gap: u64,
}

#[derive(Serialize)]
struct GapReport<'a> {
    command: &'static str,
    instance: &'a InstanceSpec,
    max_degree: u64,
    engine: Engine,
    levels: Vec<GapLevel>,
    gap_vector: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    holes: Option<Vec<&'a [i64]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    holes_truncated: Option<bool>,
}

pub fn gap(spec: &InstanceSpec, max_degree: u64, with_holes: bool, config: &ComputeConfig) -> CliResult<Output> {
    let p = spec.build(config.arith)?;
    let ledger = closure(&p, max_degree, config)?;
    let levels = ledger
        .levels
        .iter()
        .map(|l| GapLevel { degree: l.degree, level_points: l.level_points, reachable: l.reachable, gap: l.hole_count })
        .collect();
    let holes: Vec<&[i64]> = ledger.holes().map(|h| h.coords.as_slice()).collect();
    let truncated = ledger.levels.iter().any(|l| l.holes_truncated);
    let table = if with_holes {
        points_table(ledger.holes())
    } else {
        let mut t = Table::new(&["degree", "level_points", "reachable", "gap"]);
        for l in &ledger.levels {
            t.push(vec![
                l.degree.to_string(),
                l.level_points.to_string(),
                l.reachable.to_string(),
                l.hole_count.to_string(),
            ]);
        }
        t
    };
    let report = GapReport {
        command: "gap",
        instance: spec,
        max_degree,
        engine: ledger.engine,
        levels,
        gap_vector: ledger.gap_vector(),
        holes: with_holes.then_some(holes),
        holes_truncated: with_holes.then_some(truncated),
    };
    Output::new(&report, table)
}

fn points_table<'a>(points: impl Iterator<Item = &'a GradedPoint>) -> Table {
    let mut t = Table::new(&["degree", "point"]);
    for x in points {
        t.push(vec![x.degree().to_string(), joined(x.point())]);
    }
    t
}

#[derive(Serialize)]
struct HilbertReport<'a> {
    command: &'static str,
    instance: &'a InstanceSpec,
    max_degree_searched: u64,
    complete: bool,
    /// The search reached `dim P - 1`, beyond which no basis element exists.
    covers_degree_bound: bool,
    count: usize,
    max_degree: u64,
    elements: Vec<&'a [i64]>,
}

pub fn hilbert(spec: &InstanceSpec, max_degree: Option<u64>, config: &ComputeConfig) -> CliResult<Output> {
    let p = spec.build(config.arith)?;
    let d = max_degree.unwrap_or_else(|| default_hilbert_degree(&p));
    let hb = hilbert_basis(&p, d, config)?;
    let report = HilbertReport {
        command: "hilbert",
        instance: spec,
        max_degree_searched: hb.max_degree_searched,
        complete: hb.complete,
        covers_degree_bound: d + 1 >= p.dim() as u64,
        count: hb.elements.len(),
        max_degree: hb.max_degree(),
        elements: hb.elements.iter().map(|x| x.coords.as_slice()).collect(),
    };
    Output::new(&report, points_table(hb.elements.iter()))
}

#[derive(Serialize)]
struct MuOutput<'a> {
    command: &'static str,
    instance: &'a InstanceSpec,
    /// Computed from the two factors.
    product_law: bool,
    #[serde(flatten)]
    report: &'a MuReport,
}

pub struct MuBounds {
    pub max_degree: Option<u64>,
    pub max_dilation: u64,
    pub multiples: u64,
}

pub fn mu(spec: &InstanceSpec, bounds: &MuBounds, config: &ComputeConfig) -> CliResult<Output> {
    let (s, m) = (bounds.max_dilation, bounds.multiples);
    let r = if let Some((a, b)) = spec.binary_factors() {
        let (p, q) = (a.build(config.arith)?, b.build(config.arith)?);
        let d = bounds.max_degree.unwrap_or_else(|| default_hilbert_degree(&p).max(default_hilbert_degree(&q)));
        mu_invariants_product(&p, &q, d, s, m, config)?
    } else {
        let p = spec.build(config.arith)?;
        let d = bounds.max_degree.unwrap_or_else(|| default_hilbert_degree(&p));
        mu_invariants(&p, d, s, m, config)?
    };
    let mut t = Table::new(&["key", "value"]);
    let rows = [
        ("mu_hilb", r.mu_hilb.to_string()),
        ("mu_midp", r.mu_midp.to_string()),
        ("mu_idp", r.mu_idp.to_string()),
        ("hilbert_degree_bound", r.hilbert_degree_bound.to_string()),
        ("hilbert_complete", r.hilbert_complete.to_string()),
        ("mu_hilb_lower_bound", r.mu_hilb_lower_bound.to_string()),
        ("dilation_bound", r.dilation_bound.to_string()),
        ("multiple_bound", r.multiple_bound.to_string()),
    ];
    for (k, v) in rows {
        t.push(vec![k.to_string(), v]);
    }
    for (i, n) in r.normal_dilations.iter().enumerate() {
        t.push(vec![format!("normal_{}", i + 1), n.to_string()]);
    }
    let out = MuOutput { command: "mu", instance: spec, product_law: spec.binary_factors().is_some(), report: &r };
    Output::new(&out, t)
}
