use serde::Serialize;

use crate::config::ComputeConfig;
use crate::error::{Error, Result};
use crate::polytope::{GradedPoint, LatticePolytope};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertBasisReport {
    /// Irreducible cone lattice points of degree at most `max_degree_searched`,
    /// by degree and then lexicographically.
    pub elements: Vec<GradedPoint>,
    pub max_degree_searched: u64,
    /// No element was found in the top `dim(P)` searched degrees.
    pub complete: bool,
}

impl HilbertBasisReport {
    pub fn max_degree(&self) -> u64 {
        self.elements.iter().map(GradedPoint::degree).max().unwrap_or(0)
    }
}

/// Hilbert basis elements of the cone over `{1} x P` up to degree `max_degree`.
///
/// A point `x` of degree `d >= 2` is reducible iff `x - y` lies in the cone
/// for some basis element `y` of smaller degree, which is tested on the
/// vector of inequality values.
pub fn hilbert_basis(p: &LatticePolytope, max_degree: u64, config: &ComputeConfig) -> Result<HilbertBasisReport> {
    if max_degree < 1 {
        return Err(Error::InvalidInput("Hilbert basis search needs a maximal degree of at least 1".into()));
    }
    let ineqs = p.cone().inequalities();
    let values = |q: &GradedPoint| -> Vec<i64> {
        ineqs.iter().map(|r| r.iter().zip(&q.coords).map(|(a, b)| a * b).sum()).collect()
    };
    let mut elements = p.points_at_degree(1, config)?;
    let mut basis_values: Vec<Vec<i64>> = elements.iter().map(values).collect();
    for d in 2..=max_degree {
        let level = p.points_at_degree(d, config)?;
        let found = basis_values.len();
        for x in level {
            let vx = values(&x);
            let reducible = basis_values[..found].iter().any(|vy| vx.iter().zip(vy).all(|(a, b)| a >= b));
            if !reducible {
                basis_values.push(vx);
                elements.push(x);
            }
        }
    }
    let top = elements.iter().map(GradedPoint::degree).max().unwrap_or(0);
    let complete = max_degree.saturating_sub(top) >= p.dim() as u64;
    Ok(HilbertBasisReport { elements, max_degree_searched: max_degree, complete })
}
