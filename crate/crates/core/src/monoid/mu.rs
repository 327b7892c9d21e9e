use serde::Serialize;

use super::closure::closure;
use super::hilbert::hilbert_basis;
use crate::config::ComputeConfig;
use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;

/// Whether `sP` is normal up to multiples `m <= max_multiple`: every point
/// of `L_{sm}(P)` is a sum of `m` points of `L_s(P)`.
pub fn is_normal_dilation(p: &LatticePolytope, s: u64, max_multiple: u64, config: &ComputeConfig) -> Result<bool> {
    if s < 1 || max_multiple < 2 {
        return Err(Error::InvalidInput(format!(
            "dilation check needs s >= 1 and M >= 2, got s={s}, M={max_multiple}"
        )));
    }
    Ok(closure(&p.dilate(s)?, max_multiple, config)?.is_hole_free())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuReport {
    pub mu_hilb: u64,
    pub mu_midp: u64,
    pub mu_idp: u64,
    /// Degree bound of the Hilbert basis search.
    pub hilbert_degree_bound: u64,
    pub hilbert_complete: bool,
    /// `mu_hilb` is only known to be at least the reported value.
    pub mu_hilb_lower_bound: bool,
    /// Largest dilation factor examined.
    pub dilation_bound: u64,
    /// Requested multiple bound for each dilation check.
    pub multiple_bound: u64,
    /// `normal_dilations[s - 1]`: whether `sP` passed its check.
    pub normal_dilations: Vec<bool>,
}

fn first_normal(normal: &[bool]) -> Option<u64> {
    normal.iter().position(|&b| b).map(|i| i as u64 + 1)
}

fn first_stable(normal: &[bool]) -> Option<u64> {
    if !normal.last().copied().unwrap_or(false) {
        return None;
    }
    let tail = normal.iter().rev().take_while(|&&b| b).count();
    Some((normal.len() - tail) as u64 + 1)
}

fn check_bounds(max_degree: u64, max_dilation: u64, max_multiple: u64) -> Result<()> {
    if max_degree < 1 || max_dilation < 1 || max_multiple < 2 {
        return Err(Error::InvalidInput("bounds must be positive, with at least 2 multiples".into()));
    }
    Ok(())
}

/// Normality of `sP` for `s <= max_dilation`. A hole of degree at most
/// `max_degree` in `sP` has multiple at most `ceil(max_degree / s)`, so each
/// check uses at least that many multiples.
fn dilation_table(
    p: &LatticePolytope,
    max_degree: u64,
    max_dilation: u64,
    max_multiple: u64,
    config: &ComputeConfig,
) -> Result<Vec<bool>> {
    (1..=max_dilation).map(|s| is_normal_dilation(p, s, max_multiple.max(max_degree.div_ceil(s)), config)).collect()
}

fn report(
    mu_hilb: u64,
    hilbert_complete: bool,
    mu_hilb_lower_bound: bool,
    normal: Vec<bool>,
    bounds: (u64, u64, u64),
) -> Result<MuReport> {
    let (max_degree, max_dilation, max_multiple) = bounds;
    let not_found = || Error::NotFoundWithinBounds(format!("no normal dilation with factor at most {max_dilation}"));
    Ok(MuReport {
        mu_hilb,
        mu_midp: first_normal(&normal).ok_or_else(not_found)?,
        mu_idp: first_stable(&normal).ok_or_else(not_found)?,
        hilbert_degree_bound: max_degree,
        hilbert_complete,
        mu_hilb_lower_bound,
        dilation_bound: max_dilation,
        multiple_bound: max_multiple,
        normal_dilations: normal,
    })
}

/// `mu_hilb` is the top degree of the Hilbert basis up to `max_degree`;
/// `mu_midp` is the least `s <= max_dilation` with `sP` normal and
/// `mu_idp` the least `s` with `s'P` normal for all `s <= s' <= max_dilation`.
pub fn mu_invariants(
    p: &LatticePolytope,
    max_degree: u64,
    max_dilation: u64,
    max_multiple: u64,
    config: &ComputeConfig,
) -> Result<MuReport> {
    check_bounds(max_degree, max_dilation, max_multiple)?;
    let hb = hilbert_basis(p, max_degree, config)?;
    let normal = dilation_table(p, max_degree, max_dilation, max_multiple, config)?;
    report(hb.max_degree(), hb.complete, false, normal, (max_degree, max_dilation, max_multiple))
}

/// The invariants of `P x Q` from those of the factors: `s(P x Q)` is normal
/// exactly when `sP` and `sQ` are. For `mu_hilb` only the lower bound
/// `max(mu_hilb(P), mu_hilb(Q))` is reported.
pub fn mu_invariants_product(
    p: &LatticePolytope,
    q: &LatticePolytope,
    max_degree: u64,
    max_dilation: u64,
    max_multiple: u64,
    config: &ComputeConfig,
) -> Result<MuReport> {
    check_bounds(max_degree, max_dilation, max_multiple)?;
    let hp = hilbert_basis(p, max_degree, config)?;
    let hq = hilbert_basis(q, max_degree, config)?;
    let np = dilation_table(p, max_degree, max_dilation, max_multiple, config)?;
    let nq = dilation_table(q, max_degree, max_dilation, max_multiple, config)?;
    let normal = np.iter().zip(&nq).map(|(a, b)| *a && *b).collect();
    report(
        hp.max_degree().max(hq.max_degree()),
        hp.complete && hq.complete,
        true,
        normal,
        (max_degree, max_dilation, max_multiple),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetNormality {
    pub support: Vec<i64>,
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
    pub gap_vector: Vec<u64>,
    pub normal: bool,
}

/// Gap vector up to `max_degree` of every facet in its own lattice.
pub fn facet_normality(p: &LatticePolytope, max_degree: u64, config: &ComputeConfig) -> Result<Vec<FacetNormality>> {
    if max_degree < 2 {
        return Err(Error::InvalidInput("facet normality needs a maximal degree of at least 2".into()));
    }
    p.facets()?
        .into_iter()
        .map(|f| {
            let gap_vector = closure(&f.polytope, max_degree, config)?.gap_vector();
            Ok(FacetNormality {
                normal: gap_vector.iter().all(|&g| g == 0),
                dim: f.polytope.dim(),
                support: f.support,
                vertex_indices: f.vertex_indices,
                gap_vector,
            })
        })
        .collect()
}
