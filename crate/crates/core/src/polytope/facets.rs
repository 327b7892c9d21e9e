use super::{homogenize, LatticePolytope};
use crate::error::Result;
use crate::exactlin::{dot128, lattice_coordinates, matrix_rank, saturate, HRepCone};

/// A facet of a polytope, re-expressed in a basis of its own affine lattice.
///
/// A parent point on the facet is `origin + y * basis` for a unique integer
/// vector `y`, and `polytope` is the facet in those coordinates. A facet of
/// dimension zero is represented as the point `0` of `Z^1`.
#[derive(Debug, Clone)]
pub struct FacetSlice {
    pub support: Vec<i64>,
    pub vertex_indices: Vec<usize>,
    pub origin: Vec<i64>,
    pub basis: Vec<Vec<i64>>,
    pub polytope: LatticePolytope,
}

impl FacetSlice {
    /// Parent coordinates of the induced point `y`.
    pub fn embed(&self, y: &[i64]) -> Vec<i64> {
        let mut x = self.origin.clone();
        for (c, b) in y.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * bi;
            }
        }
        x
    }
}

impl LatticePolytope {
    /// The facets of the polytope, one per facet inequality of its cone.
    pub fn facets(&self) -> Result<Vec<FacetSlice>> {
        let cone = self.cone();
        let h = homogenize(&self.vertices);
        let mut tight_sets: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for n in cone.inequalities() {
            let tight: Vec<usize> = (0..h.len()).filter(|&i| dot128(n, &h[i]) == 0).collect();
            if tight.is_empty() || tight_sets.contains(&tight) {
                continue;
            }
            let rows: Vec<Vec<i64>> = tight.iter().map(|&i| h[i].clone()).collect();
            if matrix_rank(&rows)? + 1 != self.dim() + 1 {
                continue;
            }
            out.push(self.slice(n, &tight)?);
            tight_sets.push(tight);
        }
        Ok(out)
    }

    fn slice(&self, support: &[i64], tight: &[usize]) -> Result<FacetSlice> {
        let n = self.ambient_dim;
        let origin = self.vertices[tight[0]].clone();
        let directions: Vec<Vec<i64>> =
            tight.iter().map(|&i| self.vertices[i].iter().zip(&origin).map(|(a, b)| a - b).collect()).collect();
        let basis = saturate(&directions, n)?;
        let induced: Vec<Vec<i64>> = tight
            .iter()
            .map(|&i| {
                let diff: Vec<i64> = self.vertices[i].iter().zip(&origin).map(|(a, b)| a - b).collect();
                lattice_coordinates(&basis, &diff).expect("facet vertex in its own lattice")
            })
            .collect();
        let polytope = if basis.is_empty() {
            let cone = HRepCone::new(2, vec![vec![0, 1]], vec![vec![1, 0]])?.canonical()?;
            LatticePolytope::with_cone(1, vec![vec![0]], cone)
        } else {
            // (d, x) with x = d * origin + y * basis
            let map = |r: &Vec<i64>| -> Vec<i64> {
                let mut out = Vec::with_capacity(basis.len() + 1);
                out.push(r[0] + r[1..].iter().zip(&origin).map(|(a, b)| a * b).sum::<i64>());
                out.extend(basis.iter().map(|b| r[1..].iter().zip(b).map(|(a, c)| a * c).sum::<i64>()));
                out
            };
            let c = self.cone();
            let cone = HRepCone::new(
                basis.len() + 1,
                c.equations().iter().map(map).collect(),
                c.inequalities().iter().map(map).collect(),
            )?
            .canonical()?;
            LatticePolytope::with_cone(basis.len(), induced, cone)
        };
        Ok(FacetSlice { support: support.to_vec(), vertex_indices: tight.to_vec(), origin, basis, polytope })
    }
}
