//! Closed-form predictions for the families `P_{k,a}` and `Q_{a,b}`: gap
//! vectors, explicit hole sets, Hilbert bases, normality of dilations and
//! the product rule for level counts.
//!
//! Nothing here enumerates a cone; each function evaluates a formula so that
//! its output can be compared with the engines in [`crate::monoid`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::edge_vertex;
use crate::monoid::ClosureLedger;
use crate::polytope::GradedPoint;

fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

fn check_pka(k: u64, a: i64) -> Result<()> {
    if k < 2 || a < 0 {
        return Err(Error::InvalidInput(format!("P_(k,a) needs k >= 2 and a >= 0, got k={k}, a={a}")));
    }
    Ok(())
}

fn check_qab(a: i64, b: i64) -> Result<()> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidInput(format!("Q_(a,b) needs a, b >= 1, got a={a}, b={b}")));
    }
    if b <= 7 * a {
        return Err(Error::PreconditionViolated(format!("the gap formula for Q_(a,b) needs b > 7a, got a={a}, b={b}")));
    }
    Ok(())
}

/// `gamma_i = (a - i - 1) * C(i + k - 1, 2k - 1)` for `k <= i <= a - 2`, zero otherwise.
pub fn gap_formula_pka(k: u64, a: i64, max_degree: u64) -> Result<Vec<u64>> {
    check_pka(k, a)?;
    (0..=max_degree)
        .map(|i| {
            if i < k || (i as i64) > a - 2 {
                Ok(0)
            } else {
                Ok((a - i as i64 - 1) as u64 * binomial(i + k - 1, 2 * k - 1)?)
            }
        })
        .collect()
}

/// Multisets of size `size` over `0..kinds`, as nondecreasing index lists.
fn multisets(kinds: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(kinds: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for e in start..kinds {
            cur.push(e);
            rec(kinds, size, e, cur, out);
            cur.pop();
        }
    }
    rec(kinds, size, 0, &mut cur, &mut out);
    out
}

/// Edges of one level: each is a base vertex with its segment `[h_l, h_u]`.
struct Edge {
    vertex: Vec<i64>,
    lo: i64,
    hi: i64,
}

/// Holes `(level, 1 + S(M), t)` with `t` in `[c + h_u(M), e + h_l(M)]`,
/// over all multisets `M` of `edges` with `|M| = size`.
fn hole_family(level: u64, edges: &[Edge], size: usize, windows: &[(i64, i64)]) -> Vec<GradedPoint> {
    let n = edges[0].vertex.len();
    let mut out = Vec::new();
    for m in multisets(edges.len(), size) {
        let mut base = vec![1i64; n];
        let (mut hl, mut hu) = (0i64, 0i64);
        for &e in &m {
            for (b, v) in base.iter_mut().zip(&edges[e].vertex) {
                *b += v;
            }
            hl += edges[e].lo;
            hu += edges[e].hi;
        }
        for &(c, e) in windows {
            for t in c + hu..=e + hl {
                let mut x = base.clone();
                x.push(t);
                out.push(GradedPoint::new(level, &x));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn pka_edges(k: u64, a: i64) -> Vec<Edge> {
    let m = 2 * k as usize;
    (1..=m)
        .map(|i| {
            let lo = if i == 1 { a } else { 0 };
            Edge { vertex: edge_vertex(m, i, i % m + 1), lo, hi: lo + 1 }
        })
        .collect()
}

/// The holes of `P_{k,a}` at `level`: for every multiset `M` of `level - k`
/// cycle edges, the points `(level, 1 + S(M), t)` with
/// `k + 1 + h_u(M) <= t <= a - 1 + h_l(M)`. Empty below level `k`.
pub fn holes_pka(k: u64, a: i64, level: u64) -> Result<Vec<GradedPoint>> {
    check_pka(k, a)?;
    if level < k {
        return Ok(Vec::new());
    }
    let window = [(k as i64 + 1, a - 1)];
    Ok(hole_family(level, &pka_edges(k, a), (level - k) as usize, &window))
}

/// The lattice points of `{1} x P_{k,a}` together with
/// `(k, 1, .., 1, t)` for `k + 1 <= t <= a - 1`.
pub fn hilbert_basis_pka(k: u64, a: i64) -> Result<Vec<GradedPoint>> {
    check_pka(k, a)?;
    let mut out = Vec::new();
    for e in pka_edges(k, a) {
        for t in [e.lo, e.hi] {
            let mut x = e.vertex.clone();
            x.push(t);
            out.push(GradedPoint::new(1, &x));
        }
    }
    for t in k as i64 + 1..a {
        let mut x = vec![1i64; 2 * k as usize];
        x.push(t);
        out.push(GradedPoint::new(k, &x));
    }
    out.sort_by(|p, q| p.degree().cmp(&q.degree()).then_with(|| p.cmp(q)));
    Ok(out)
}

/// `gamma_{i+2} = C(i + 2, 2) * (max(4a - i, 0) + max(7a - i, 0))`, valid for `b > 7a`.
pub fn gap_formula_qab(a: i64, b: i64, max_degree: u64) -> Result<Vec<u64>> {
    check_qab(a, b)?;
    (0..=max_degree)
        .map(|d| {
            if d < 2 {
                return Ok(0);
            }
            let i = d - 2;
            let len = (4 * a - i as i64).max(0) + (7 * a - i as i64).max(0);
            Ok(binomial(i + 2, 2)? * len as u64)
        })
        .collect()
}

/// The holes of `Q_{a,b}` at `level`, over multisets `M` of the triangle
/// edges `(1,2), (2,3), (1,3)` with `|M| = level - 2`, in the windows
/// `[b + 2 + h_u(M), b + 4a + 1 + h_l(M)]` and
/// `[2b + 4a + 4 + h_u(M), 2b + 11a + 3 + h_l(M)]`.
pub fn holes_qab(a: i64, b: i64, level: u64) -> Result<Vec<GradedPoint>> {
    check_qab(a, b)?;
    if level < 2 {
        return Err(Error::InvalidInput("holes of Q_(a,b) start at level 2".into()));
    }
    let edges: Vec<Edge> =
        [(1, 2), (2, 3), (1, 3)].iter().map(|&(i, j)| Edge { vertex: edge_vertex(4, i, j), lo: 0, hi: 1 }).collect();
    let windows = [(b + 2, b + 4 * a + 1), (2 * b + 4 * a + 4, 2 * b + 11 * a + 3)];
    Ok(hole_family(level, &edges, (level - 2) as usize, &windows))
}

/// Predictions for the dilations of `P_{k,k+2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryPrediction {
    pub k: u64,
    pub s: u64,
    /// `sP` is normal iff `s` does not divide `k` or `s >= k`.
    pub normal: bool,
    pub mu_hilb: u64,
    /// `min(smallest non-divisor of k, k)`.
    pub mu_midp: u64,
    /// Largest proper divisor of `k`, plus one.
    pub mu_idp: u64,
    pub smallest_non_divisor: u64,
    /// The smallest non-divisor of `k` is not the least normal dilation.
    pub midp_adjusted: bool,
}

pub fn corollary_pka_predicates(k: u64, s: u64) -> Result<CorollaryPrediction> {
    if k < 2 || s < 1 {
        return Err(Error::InvalidInput(format!("needs k >= 2 and s >= 1, got k={k}, s={s}")));
    }
    let smallest_non_divisor = (2..).find(|&d| !k.is_multiple_of(d)).unwrap_or(k + 1);
    let largest_proper_divisor = (1..k).rev().find(|&d| k.is_multiple_of(d)).unwrap_or(1);
    let mu_midp = smallest_non_divisor.min(k);
    Ok(CorollaryPrediction {
        k,
        s,
        normal: !k.is_multiple_of(s) || s >= k,
        mu_hilb: k,
        mu_midp,
        mu_idp: largest_proper_divisor + 1,
        smallest_non_divisor,
        midp_adjusted: mu_midp != smallest_non_divisor,
    })
}

/// Level counts of `P x Q` predicted from the factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductPrediction {
    pub level_points: Vec<u64>,
    pub reachable: Vec<u64>,
    pub gap_vector: Vec<u64>,
}

/// Level sets of a product are products of level sets, and a sum of `d`
/// points of `P x Q` splits coordinatewise, so `|L_d|` and `|G_d|` multiply.
pub fn product_identities(p: &ClosureLedger, q: &ClosureLedger) -> Result<ProductPrediction> {
    if p.max_degree != q.max_degree {
        return Err(Error::InvalidInput("ledgers must share the maximal degree".into()));
    }
    let mul = |a: u64, b: u64| a.checked_mul(b).ok_or(Error::Overflow("product level count"));
    let level_points: Vec<u64> =
        p.levels.iter().zip(&q.levels).map(|(x, y)| mul(x.level_points, y.level_points)).collect::<Result<_>>()?;
    let reachable: Vec<u64> =
        p.levels.iter().zip(&q.levels).map(|(x, y)| mul(x.reachable, y.reachable)).collect::<Result<_>>()?;
    let gap_vector = level_points.iter().zip(&reachable).map(|(l, g)| l - g).collect();
    Ok(ProductPrediction { level_points, reachable, gap_vector })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pka_formula() {
        assert_eq!(gap_formula_pka(3, 5, 6).unwrap(), vec![0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(gap_formula_pka(3, 7, 7).unwrap(), vec![0, 0, 0, 3, 12, 21, 0, 0]);
        assert!(gap_formula_pka(3, 4, 6).unwrap().iter().all(|&g| g == 0));
    }

    #[test]
    fn pka_holes_and_basis() {
        let h = holes_pka(3, 5, 3).unwrap();
        assert_eq!(h, vec![GradedPoint { coords: vec![3, 1, 1, 1, 1, 1, 1, 4] }]);
        assert_eq!(holes_pka(3, 7, 3).unwrap().len(), 3);
        for k in 2..=4u64 {
            for a in 0..=8i64 {
                let f = gap_formula_pka(k, a, 9).unwrap();
                for level in 0..=9 {
                    assert_eq!(
                        holes_pka(k, a, level).unwrap().len() as u64,
                        f[level as usize],
                        "k={k} a={a} level={level}"
                    );
                }
            }
        }
        assert_eq!(hilbert_basis_pka(3, 5).unwrap().len(), 13);
        assert_eq!(hilbert_basis_pka(3, 4).unwrap().len(), 12);
        let b = hilbert_basis_pka(4, 6).unwrap();
        assert_eq!(b.last().unwrap().coords, vec![4, 1, 1, 1, 1, 1, 1, 1, 1, 5]);
    }

    #[test]
    fn qab_formula_and_holes() {
        assert_eq!(gap_formula_qab(1, 8, 9).unwrap(), vec![0, 0, 11, 27, 42, 50, 45, 42, 28, 0]);
        let g = gap_formula_qab(2, 15, 12).unwrap();
        assert_eq!((g[9], g[10], g[11]), (288, 270, 275));
        assert!(matches!(gap_formula_qab(1, 7, 5), Err(Error::PreconditionViolated(_))));
        let h = holes_qab(1, 8, 2).unwrap();
        let t: Vec<i64> = h.iter().map(|p| p.coords[5]).collect();
        assert_eq!(t, vec![10, 11, 12, 13, 24, 25, 26, 27, 28, 29, 30]);
        assert!(h.iter().all(|p| p.coords[1..5] == [1, 1, 1, 1]));
        let f = gap_formula_qab(1, 8, 10).unwrap();
        for level in 2..=10 {
            assert_eq!(holes_qab(1, 8, level).unwrap().len() as u64, f[level as usize]);
        }
    }

    #[test]
    fn corollary() {
        let c = corollary_pka_predicates(4, 2).unwrap();
        assert!(!c.normal);
        assert_eq!((c.mu_hilb, c.mu_midp, c.mu_idp), (4, 3, 3));
        assert!(corollary_pka_predicates(4, 3).unwrap().normal);
        assert!(!corollary_pka_predicates(4, 1).unwrap().normal);
        let two = corollary_pka_predicates(2, 2).unwrap();
        assert_eq!(two.mu_midp, 2);
        assert!(two.midp_adjusted);
        let k25 = |s| corollary_pka_predicates(25, s).unwrap().normal;
        assert!(k25(2) && k25(3) && !k25(5));
    }

    #[test]
    fn multiset_counts() {
        for (kinds, size) in [(6usize, 3usize), (8, 2), (3, 6)] {
            assert_eq!(multisets(kinds, size).len() as u64, binomial((kinds + size - 1) as u64, size as u64).unwrap());
        }
    }
}
