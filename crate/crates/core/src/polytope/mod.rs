//! Lattice polytopes given by vertices, and the graded lattice points of the
//! cone over `{1} x P`.
//!
//! A point of the cone is a [`GradedPoint`]: its coordinate 0 is the degree
//! and the remaining coordinates are the polytope coordinates. The level at
//! degree `d` is the set of lattice points of `dP`.

mod ehrhart;
mod enumerate;
mod facets;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::config::{Arith, ComputeConfig};
use crate::error::{Error, Result};
use crate::exactlin::{double_description, double_description_with, matrix_rank, HRepCone};

pub use enumerate::LevelRows;
pub use facets::FacetSlice;

pub(crate) use enumerate::Enumerator;

/// A lattice point of the cone over `{1} x P`; `coords[0]` is the degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GradedPoint {
    pub coords: Vec<i64>,
}

impl GradedPoint {
    pub fn new(degree: u64, point: &[i64]) -> Self {
        let mut coords = Vec::with_capacity(point.len() + 1);
        coords.push(degree as i64);
        coords.extend_from_slice(point);
        Self { coords }
    }

    pub fn degree(&self) -> u64 {
        self.coords[0] as u64
    }

    /// The polytope coordinates, without the degree.
    pub fn point(&self) -> &[i64] {
        &self.coords[1..]
    }
}

#[derive(Debug)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<i64>>,
    cone: OnceLock<HRepCone>,
    enumerator: OnceLock<Enumerator>,
    // set for products, whose levels are assembled from the factors' levels
    factors: Option<Arc<(LatticePolytope, LatticePolytope)>>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        let cone = OnceLock::new();
        if let Some(c) = self.cone.get() {
            let _ = cone.set(c.clone());
        }
        Self {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
            cone,
            enumerator: OnceLock::new(),
            factors: self.factors.clone(),
        }
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl LatticePolytope {
    /// Builds a polytope from its vertex list.
    ///
    /// Fails unless the vertices are distinct, have length `ambient_dim`, and
    /// each one spans an extreme ray of the cone over `{1} x P`.
    pub fn new(ambient_dim: usize, vertices: Vec<Vec<i64>>) -> Result<Self> {
        Self::new_with(ambient_dim, vertices, Arith::Auto)
    }

    /// [`LatticePolytope::new`] with a chosen arithmetic backend.
    pub fn new_with(ambient_dim: usize, vertices: Vec<Vec<i64>>, arith: Arith) -> Result<Self> {
        check_shape(ambient_dim, &vertices)?;
        let mut seen = vertices.clone();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("repeated vertex".into()));
        }
        let cone = double_description_with(&homogenize(&vertices), arith)?;
        for v in &vertices {
            if !is_extreme(&cone, v)? {
                return Err(Error::InvalidInput(format!("{v:?} is not a vertex of the convex hull")));
            }
        }
        Ok(Self::with_cone(ambient_dim, vertices, cone))
    }

    /// Convex hull of arbitrary lattice points; non-vertices are discarded.
    pub fn from_points(ambient_dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_points_with(ambient_dim, points, Arith::Auto)
    }

    pub fn from_points_with(ambient_dim: usize, points: Vec<Vec<i64>>, arith: Arith) -> Result<Self> {
        check_shape(ambient_dim, &points)?;
        let mut points = points;
        points.sort();
        points.dedup();
        let cone = double_description_with(&homogenize(&points), arith)?;
        let mut vertices = Vec::new();
        for p in points {
            if is_extreme(&cone, &p)? {
                vertices.push(p);
            }
        }
        Ok(Self::with_cone(ambient_dim, vertices, cone))
    }

    /// For constructions whose vertex set and cone are known to be correct.
    pub(crate) fn with_cone(ambient_dim: usize, vertices: Vec<Vec<i64>>, cone: HRepCone) -> Self {
        debug_assert!(vertices.iter().all(|v| {
            let mut h = vec![1];
            h.extend_from_slice(v);
            cone.contains(&h)
        }));
        let lock = OnceLock::new();
        let _ = lock.set(cone);
        Self { ambient_dim, vertices, cone: lock, enumerator: OnceLock::new(), factors: None }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// H-representation of the cone over `{1} x P` in dimension `ambient_dim + 1`.
    pub fn cone(&self) -> &HRepCone {
        self.cone
            .get_or_init(|| double_description(&homogenize(&self.vertices)).expect("cone over a validated polytope"))
    }

    /// Dimension of the polytope.
    pub fn dim(&self) -> usize {
        let rank = matrix_rank(&homogenize(&self.vertices)).expect("rank of small integer matrix");
        rank - 1
    }

    /// Whether `(degree, x)` lies in the cone, i.e. `x` is a lattice point of `degree * P`.
    pub fn contains(&self, degree: u64, x: &[i64]) -> bool {
        let mut h = Vec::with_capacity(x.len() + 1);
        h.push(degree as i64);
        h.extend_from_slice(x);
        x.len() == self.ambient_dim && self.cone().contains(&h)
    }

    fn enumerator(&self) -> &Enumerator {
        self.enumerator.get_or_init(|| Enumerator::new(self.cone(), &self.vertices))
    }

    /// The level at `degree` as rows of consecutive points in the last coordinate.
    pub fn level_rows(&self, degree: u64, config: &ComputeConfig) -> Result<LevelRows> {
        if let Some(f) = &self.factors {
            let p = f.0.level_rows(degree, config)?;
            let q = f.1.level_rows(degree, config)?;
            return LevelRows::product(&p, &q, config.max_points);
        }
        self.enumerator().level(degree, config.max_points)
    }

    /// Number of lattice points of `degree * P`.
    pub fn count_at_degree(&self, degree: u64, config: &ComputeConfig) -> Result<u64> {
        Ok(self.level_rows(degree, config)?.point_count())
    }

    /// The lattice points of `degree * P` in lexicographic order.
    pub fn points_at_degree(&self, degree: u64, config: &ComputeConfig) -> Result<Vec<GradedPoint>> {
        let rows = self.level_rows(degree, config)?;
        let mut out = Vec::with_capacity(rows.point_count() as usize);
        rows.for_each_point(|x| out.push(GradedPoint::new(degree, x)));
        Ok(out)
    }

    /// Cartesian product; the cone is assembled from the factors' cones.
    pub fn product(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        let (n, m) = (self.ambient_dim, other.ambient_dim);
        let mut vertices = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                let mut u = v.clone();
                u.extend_from_slice(w);
                vertices.push(u);
            }
        }
        let left = |r: &Vec<i64>| {
            let mut out = r.clone();
            out.resize(1 + n + m, 0);
            out
        };
        let right = |r: &Vec<i64>| {
            let mut out = vec![0; 1 + n + m];
            out[0] = r[0];
            out[1 + n..].copy_from_slice(&r[1..]);
            out
        };
        let (a, b) = (self.cone(), other.cone());
        let equations = a.equations().iter().map(left).chain(b.equations().iter().map(right)).collect();
        let inequalities = a.inequalities().iter().map(left).chain(b.inequalities().iter().map(right)).collect();
        let cone = HRepCone::new(1 + n + m, equations, inequalities)?.canonical()?;
        let mut out = Self::with_cone(n + m, vertices, cone);
        out.factors = Some(Arc::new((self.clone(), other.clone())));
        Ok(out)
    }

    /// The dilation `sP`.
    pub fn dilate(&self, s: u64) -> Result<LatticePolytope> {
        if s == 0 {
            return Err(Error::InvalidInput("dilation factor must be positive".into()));
        }
        if let Some(f) = &self.factors {
            return f.0.dilate(s)?.product(&f.1.dilate(s)?);
        }
        let f = i64::try_from(s).map_err(|_| Error::Overflow("dilation factor"))?;
        let scale = |v: &Vec<i64>| -> Result<Vec<i64>> {
            v.iter().map(|&x| x.checked_mul(f).ok_or(Error::Overflow("dilation"))).collect()
        };
        let vertices = self.vertices.iter().map(scale).collect::<Result<_>>()?;
        // (d, x) in C(sP) iff (s d, x) in C(P)
        let rescale = |r: &Vec<i64>| -> Result<Vec<i64>> {
            let mut out = r.clone();
            out[0] = r[0].checked_mul(f).ok_or(Error::Overflow("dilation"))?;
            Ok(out)
        };
        let c = self.cone();
        let cone = HRepCone::new(
            c.dim(),
            c.equations().iter().map(rescale).collect::<Result<_>>()?,
            c.inequalities().iter().map(rescale).collect::<Result<_>>()?,
        )?
        .canonical()?;
        Ok(Self::with_cone(self.ambient_dim, vertices, cone))
    }
}

fn check_shape(ambient_dim: usize, vertices: &[Vec<i64>]) -> Result<()> {
    if ambient_dim == 0 {
        return Err(Error::InvalidInput("ambient dimension must be positive".into()));
    }
    if vertices.is_empty() {
        return Err(Error::InvalidInput("a polytope needs at least one vertex".into()));
    }
    if let Some(v) = vertices.iter().find(|v| v.len() != ambient_dim) {
        return Err(Error::InvalidInput(format!("vertex of length {} in ambient dimension {ambient_dim}", v.len())));
    }
    Ok(())
}

pub(crate) fn homogenize(vertices: &[Vec<i64>]) -> Vec<Vec<i64>> {
    vertices
        .iter()
        .map(|v| {
            let mut h = Vec::with_capacity(v.len() + 1);
            h.push(1);
            h.extend_from_slice(v);
            h
        })
        .collect()
}

/// `(1, v)` spans an extreme ray: the constraints tight at it have rank `dim - 1`.
fn is_extreme(cone: &HRepCone, v: &[i64]) -> Result<bool> {
    let mut h = vec![1];
    h.extend_from_slice(v);
    let mut tight: Vec<Vec<i64>> = cone.equations().to_vec();
    tight.extend(cone.inequalities().iter().filter(|n| crate::exactlin::dot128(n, &h) == 0).cloned());
    Ok(matrix_rank(&tight)? + 1 == cone.dim())
}
