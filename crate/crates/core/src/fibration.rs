//! Lattice segmental fibrations: polytopes whose projection forgetting the
//! last coordinate has a lattice segment of positive length over every
//! lattice point of the base.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::config::ComputeConfig;
use crate::error::{Error, Result};
use crate::exactlin::{HRepCone, Rational};
use crate::graphs::edge_vertex;
use crate::polytope::LatticePolytope;

/// A base polytope with a segment `[lo, hi]` over each of its vertices.
#[derive(Debug, Clone)]
pub struct FiberSpec {
    pub base: LatticePolytope,
    pub heights: Vec<(i64, i64)>,
}

/// The polytope with vertices `(v, lo_v)` and `(v, hi_v)` over each base vertex `v`.
pub fn build_fibration(spec: &FiberSpec) -> Result<LatticePolytope> {
    let base = spec.base.vertices();
    if spec.heights.len() != base.len() {
        return Err(Error::InvalidInput(format!("{} heights for {} base vertices", spec.heights.len(), base.len())));
    }
    let mut vertices = Vec::with_capacity(2 * base.len());
    for (v, &(lo, hi)) in base.iter().zip(&spec.heights) {
        if hi < lo + 1 {
            return Err(Error::InvalidInput(format!("segment [{lo}, {hi}] over {v:?} has length zero")));
        }
        for t in [lo, hi] {
            let mut w = v.clone();
            w.push(t);
            vertices.push(w);
        }
    }
    LatticePolytope::new(spec.base.ambient_dim() + 1, vertices)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub base_point: Vec<i64>,
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
    pub endpoints_integral: bool,
    pub lattice_points: u64,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibrationReport {
    /// Fibers over the lattice points of the base, sorted by base point.
    pub fibers: Vec<Fiber>,
    pub endpoints_integral: bool,
    pub positive_length: bool,
    pub valid: bool,
}

impl FibrationReport {
    fn failures(&self) -> String {
        let bad: Vec<String> = self
            .fibers
            .iter()
            .filter(|f| !f.endpoints_integral || f.lattice_points < 2)
            .take(3)
            .map(|f| format!("{:?} -> [{}, {}]", f.base_point, f.lo, f.hi))
            .collect();
        bad.join(", ")
    }
}

/// Computes the fiber over every lattice point of the projection that
/// forgets the last coordinate.
pub fn validate_fibration(p: &LatticePolytope, config: &ComputeConfig) -> Result<FibrationReport> {
    let n = p.ambient_dim();
    if n < 2 {
        return Err(Error::InvalidInput("a fibration needs ambient dimension at least 2".into()));
    }
    let projected: Vec<Vec<i64>> = p.vertices().iter().map(|v| v[..n - 1].to_vec()).collect();
    let base = LatticePolytope::from_points_with(n - 1, projected, config.arith)?;
    let rows = base.level_rows(1, config)?;
    let cone = p.cone();
    let mut fibers = Vec::with_capacity(rows.point_count() as usize);
    let mut failure = None;
    rows.for_each_point(|x| {
        if failure.is_none() {
            match fiber_over(cone, x) {
                Ok(f) => fibers.push(f),
                Err(e) => failure = Some(e),
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let endpoints_integral = fibers.iter().all(|f| f.endpoints_integral);
    let positive_length = fibers.iter().all(|f| f.lattice_points >= 2);
    Ok(FibrationReport { fibers, endpoints_integral, positive_length, valid: endpoints_integral && positive_length })
}

/// `Ok(())` when the report is valid, `NotAFibration` otherwise.
pub fn require_fibration(p: &LatticePolytope, config: &ComputeConfig) -> Result<FibrationReport> {
    let report = validate_fibration(p, config)?;
    if !report.valid {
        return Err(Error::NotAFibration(report.failures()));
    }
    Ok(report)
}

fn fiber_over(cone: &HRepCone, x: &[i64]) -> Result<Fiber> {
    let last = cone.dim() - 1;
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut tighten = |row: &[i64], as_equation: bool| {
        // row . (1, x, t) >= 0  <=>  c + a t >= 0
        let c: i128 = row[0] as i128 + row[1..last].iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum::<i128>();
        let a = row[last] as i128;
        if a == 0 {
            return;
        }
        let bound = Rational::new((-c).into(), a.into());
        if (a > 0 || as_equation) && lo.as_ref().is_none_or(|l| bound > *l) {
            lo = Some(bound.clone());
        }
        if (a < 0 || as_equation) && hi.as_ref().is_none_or(|h| bound < *h) {
            hi = Some(bound);
        }
    };
    for e in cone.equations() {
        tighten(e, true);
    }
    for r in cone.inequalities() {
        tighten(r, false);
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Err(Error::InvalidInput(format!("unbounded fiber over {x:?}")));
    };
    let count = if lo > hi {
        num_bigint::BigInt::zero()
    } else {
        (hi.floor() - lo.ceil()).to_integer() + num_bigint::BigInt::one()
    };
    let lattice_points = u64::try_from(count.max(num_bigint::BigInt::zero())).unwrap_or(u64::MAX);
    Ok(Fiber { base_point: x.to_vec(), endpoints_integral: lo.is_integer() && hi.is_integer(), lo, hi, lattice_points })
}

fn check_pka(k: u64, a: i64) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k must be at least 2, got {k}")));
    }
    if a < 0 {
        return Err(Error::InvalidInput(format!("a must be nonnegative, got {a}")));
    }
    usize::try_from(k).ok().filter(|&k| k <= 1 << 20).ok_or_else(|| Error::InvalidInput("k too large".into()))
}

/// `P_{k,a}`: the fibration over the edge polytope of the cycle `C_{2k}`
/// with segment `[a, a+1]` over `V(1,2)` and `[0, 1]` over every other edge.
///
/// Vertices are listed as `(V(i,i+1), 0), (V(i,i+1), 1)` for `i = 2..2k`
/// followed by `(V(1,2), a), (V(1,2), a+1)`, in `Z^{2k+1}`.
pub fn make_pka(k: u64, a: i64) -> Result<LatticePolytope> {
    let k = check_pka(k, a)?;
    let m = 2 * k;
    let mut vertices = Vec::with_capacity(2 * m);
    let mut push = |v: Vec<i64>, lo: i64| {
        for t in [lo, lo + 1] {
            let mut w = v.clone();
            w.push(t);
            vertices.push(w);
        }
    };
    for i in 2..=m {
        push(edge_vertex(m, i, i % m + 1), 0);
    }
    push(edge_vertex(m, 1, 2), a);
    let cone = pka_hrep(k as u64, a)?;
    Ok(LatticePolytope::with_cone(m + 1, vertices, cone))
}

/// Explicit H-representation of the cone over `{1} x P_{k,a}` in
/// coordinates `(v_0, v_1, .., v_{2k}, t)`.
///
/// Writing a base point as a nonnegative combination of the edges, the
/// coefficient `s` of `V(1,2)` ranges over an interval whose ends are
/// linear in `v`:
///
/// - `s >= 0` and `s >= W_m = sum_{i<=m} (v_{2i} - v_{2i+1})` for `m < k`,
/// - `s <= U_j = v_2 - v_3 + .. + v_{2j}` for `j < k`, and `s <= v_1`.
///
/// The fiber is then `a * s_min <= t <= v_0 + a * s_max`.
pub fn pka_hrep(k: u64, a: i64) -> Result<HRepCone> {
    let k = check_pka(k, a)?;
    let m = 2 * k;
    let dim = m + 2;
    let t = m + 1;
    let unit = |i: usize| {
        let mut r = vec![0i64; dim];
        r[i] = 1;
        r
    };
    let mut equations = Vec::new();
    for parity in [1, 2] {
        let mut e = unit(0);
        for i in (parity..=m).step_by(2) {
            e[i] = -1;
        }
        equations.push(e);
    }
    let mut ineqs = Vec::new();
    for i in 1..=m {
        ineqs.push(unit(i));
        let mut r = vec![0i64; dim];
        r[i] = -1;
        r[if i == 1 { m } else { i - 1 }] += 1;
        r[if i == m { 1 } else { i + 1 }] += 1;
        ineqs.push(r);
    }
    ineqs.push(unit(t));
    // t - a * W_j >= 0
    let mut w = vec![0i64; dim];
    for j in 1..k {
        w[2 * j] += 1;
        w[2 * j + 1] -= 1;
        let mut r: Vec<i64> = w.iter().map(|&x| -a * x).collect();
        r[t] = 1;
        ineqs.push(r);
    }
    // v_0 + a * U_j - t >= 0
    let mut u = vec![0i64; dim];
    for j in 1..=k {
        let s = if j == k {
            unit(1)
        } else {
            if j > 1 {
                u[2 * j - 1] -= 1;
            }
            u[2 * j] += 1;
            u.clone()
        };
        let mut r: Vec<i64> = s.iter().map(|&x| a * x).collect();
        r[0] += 1;
        r[t] = -1;
        ineqs.push(r);
    }
    HRepCone::new(dim, equations, ineqs)?.canonical()
}

/// `Q_{a,b}`: the fibration over the octahedron `P(K_4)` with the segments
/// `[0,1]` over `V(1,2), V(2,3), V(1,3)`, `[0,b]` over `V(4,1)`,
/// `[b+4a+2, 2b+4a+2]` over `V(4,2)` and `[2b+11a+4, 3b+11a+4]` over `V(4,3)`.
pub fn make_qab(a: i64, b: i64) -> Result<LatticePolytope> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidInput(format!("a and b must be positive, got a={a}, b={b}")));
    }
    let height = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow("Q_{a,b} heights"));
    let (a128, b128) = (a as i128, b as i128);
    let h42 = height(b128 + 4 * a128 + 2)?;
    let h43 = height(2 * b128 + 11 * a128 + 4)?;
    height(h43 as i128 + b128)?;
    let heights = [
        ((1, 2), 0, 1),
        ((2, 3), 0, 1),
        ((1, 3), 0, 1),
        ((4, 1), 0, b),
        ((4, 2), h42, h42 + b),
        ((4, 3), h43, h43 + b),
    ];
    let mut vertices = Vec::with_capacity(12);
    for ((i, j), lo, hi) in heights {
        for t in [lo, hi] {
            let mut v = edge_vertex(4, i, j);
            v.push(t);
            vertices.push(v);
        }
    }
    LatticePolytope::new(5, vertices)
}
