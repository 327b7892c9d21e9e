use num_integer::Integer;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::config::ComputeConfig;
use crate::error::{Error, Result};
use crate::exactlin::double_description_with;
use crate::polytope::{Enumerator, LatticePolytope};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VeryAmpleVerdict {
    /// Every vertex cone is generated by the edge directions up to `ℓ <= bound`.
    VeryAmpleUpTo { bound: u64 },
    /// `witness` lies in the cone of `P - vertex` but is not a sum of
    /// lattice points of `P - vertex`.
    NotVeryAmple { vertex: Vec<i64>, witness: Vec<i64> },
}

impl VeryAmpleVerdict {
    pub fn is_very_ample(&self) -> bool {
        matches!(self, VeryAmpleVerdict::VeryAmpleUpTo { .. })
    }
}

/// Bounded check that the semigroup generated by `P - v` is saturated in
/// its cone for every vertex `v`.
///
/// `ℓ` is the sum of the facet normals of the vertex cone, positive on every
/// nonzero cone point. All cone lattice points with `ℓ <= bound` are visited
/// in increasing `ℓ`; a point is generated when it is a generator or
/// differs from a generated point by a generator. A point that is not
/// generated is an exact counterexample, since all partial sums of a
/// decomposition have smaller `ℓ`.
pub fn is_very_ample(p: &LatticePolytope, bound: u64, config: &ComputeConfig) -> Result<VeryAmpleVerdict> {
    if bound < 1 {
        return Err(Error::InvalidInput("very ampleness bound must be positive".into()));
    }
    let bound = i64::try_from(bound).map_err(|_| Error::Overflow("very ampleness bound"))?;
    let n = p.ambient_dim();
    let mut lattice = Vec::new();
    p.level_rows(1, config)?.for_each_point(|x| lattice.push(x.to_vec()));
    for v in p.vertices() {
        let gens: Vec<Vec<i64>> = lattice
            .iter()
            .map(|x| x.iter().zip(v).map(|(a, b)| a - b).collect::<Vec<i64>>())
            .filter(|g| g.iter().any(|&c| c != 0))
            .collect();
        if gens.is_empty() {
            continue;
        }
        let cone = double_description_with(&gens, config.arith)?;
        let mut ell = vec![0i64; n];
        for r in cone.inequalities() {
            for (e, c) in ell.iter_mut().zip(r) {
                *e += c;
            }
        }
        let ell_of = |x: &[i64]| -> i64 { ell.iter().zip(x).map(|(a, b)| a * b).sum() };
        // the region ℓ <= bound of the cone lies in the hull of 0 and bound * g / ℓ(g)
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for g in &gens {
            let lg = ell_of(g);
            debug_assert!(lg > 0);
            for i in 0..n {
                let num = bound * g[i];
                lo[i] = lo[i].min(Integer::div_floor(&num, &lg));
                hi[i] = hi[i].max(Integer::div_ceil(&num, &lg));
            }
        }
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut homog = |r: &[i64], c: i64| {
            let mut row = vec![c];
            row.extend_from_slice(r);
            rows.push(row);
        };
        for r in cone.inequalities() {
            homog(r, 0);
        }
        for e in cone.equations() {
            homog(e, 0);
            homog(&e.iter().map(|x| -x).collect::<Vec<_>>(), 0);
        }
        homog(&ell.iter().map(|x| -x).collect::<Vec<_>>(), bound);
        let region = Enumerator::from_rows(rows, lo, hi).level(1, config.max_points)?;
        let mut points: Vec<(i64, Vec<i64>)> = Vec::with_capacity(region.point_count() as usize);
        region.for_each_point(|x| points.push((ell_of(x), x.to_vec())));
        points.sort();
        let gen_set: FxHashSet<&[i64]> = gens.iter().map(Vec::as_slice).collect();
        let mut generated: FxHashSet<Vec<i64>> = FxHashSet::default();
        let mut diff = vec![0i64; n];
        for (l, x) in points {
            if l == 0 {
                continue;
            }
            let ok = gen_set.contains(x.as_slice())
                || gens.iter().any(|g| {
                    for i in 0..n {
                        diff[i] = x[i] - g[i];
                    }
                    generated.contains(diff.as_slice())
                });
            if !ok {
                return Ok(VeryAmpleVerdict::NotVeryAmple { vertex: v.clone(), witness: x });
            }
            generated.insert(x);
        }
    }
    Ok(VeryAmpleVerdict::VeryAmpleUpTo { bound: bound as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_very_ample() {
        let s = LatticePolytope::new(1, vec![vec![0], vec![1]]).unwrap();
        let q = s.product(&s).unwrap();
        assert!(is_very_ample(&q, 10, &ComputeConfig::default()).unwrap().is_very_ample());
    }

    #[test]
    fn reeve_like_simplex_is_not() {
        // conv(0, e1, e2, (1,1,3)) has lattice points only at its vertices
        let p = LatticePolytope::new(3, vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 3]]).unwrap();
        let v = is_very_ample(&p, 30, &ComputeConfig::default()).unwrap();
        assert!(!v.is_very_ample());
    }
}
