//! Depth-first enumeration of the lattice points of one level of the cone.

use crate::error::{Error, Result};
use crate::exactlin::HRepCone;

/// The lattice points of a level, grouped by every coordinate except the
/// last: row `i` stands for `(prefix(i), t)` with `lo(i) <= t <= hi(i)`.
/// Rows appear in lexicographic order, so expanding them yields the level in
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRows {
    degree: u64,
    width: usize,
    prefixes: Vec<i64>,
    bounds: Vec<(i64, i64)>,
    points: u64,
}

impl LevelRows {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Number of coordinates in each prefix (the polytope dimension minus one).
    pub fn prefix_width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn prefix(&self, i: usize) -> &[i64] {
        &self.prefixes[i * self.width..(i + 1) * self.width]
    }

    pub fn bounds(&self, i: usize) -> (i64, i64) {
        self.bounds[i]
    }

    pub fn point_count(&self) -> u64 {
        self.points
    }

    /// Polytope coordinates (degree excluded) of every point, in order.
    pub fn for_each_point(&self, mut f: impl FnMut(&[i64])) {
        let mut buf = vec![0i64; self.width + 1];
        for i in 0..self.len() {
            buf[..self.width].copy_from_slice(self.prefix(i));
            let (lo, hi) = self.bounds[i];
            for t in lo..=hi {
                buf[self.width] = t;
                f(&buf);
            }
        }
    }

    /// The level of `P x Q` from the levels of `P` and `Q` at the same degree.
    pub(crate) fn product(p: &LevelRows, q: &LevelRows, budget: u64) -> Result<LevelRows> {
        debug_assert_eq!(p.degree, q.degree);
        let points = p.points.checked_mul(q.points).filter(|&n| n <= budget);
        let Some(points) = points else {
            return Err(Error::DegreeTooLarge { degree: p.degree, budget });
        };
        let width = p.width + 1 + q.width;
        let mut prefixes = Vec::with_capacity(p.points as usize * q.len() * width);
        let mut bounds = Vec::with_capacity(p.points as usize * q.len());
        p.for_each_point(|x| {
            for j in 0..q.len() {
                prefixes.extend_from_slice(x);
                prefixes.extend_from_slice(q.prefix(j));
                bounds.push(q.bounds[j]);
            }
        });
        Ok(LevelRows { degree: p.degree, width, prefixes, bounds, points })
    }
}

#[derive(Debug)]
pub(crate) struct Enumerator {
    n: usize,
    rows: Vec<Vec<i64>>,
    vmin: Vec<i64>,
    vmax: Vec<i64>,
    // rows with a nonzero coefficient on coordinate i (cone index i + 1)
    active: Vec<Vec<usize>>,
}

impl Enumerator {
    pub(crate) fn new(cone: &HRepCone, vertices: &[Vec<i64>]) -> Self {
        let n = cone.dim() - 1;
        let mut rows: Vec<Vec<i64>> = cone.inequalities().to_vec();
        for e in cone.equations() {
            rows.push(e.clone());
            rows.push(e.iter().map(|x| -x).collect());
        }
        let vmin = (0..n).map(|i| vertices.iter().map(|v| v[i]).min().unwrap_or(0)).collect();
        let vmax = (0..n).map(|i| vertices.iter().map(|v| v[i]).max().unwrap_or(0)).collect();
        Self::from_rows(rows, vmin, vmax)
    }

    /// Points `x` with `r[0] * d + r[1..] . x >= 0` for every row `r`, inside
    /// the box `d * vmin <= x <= d * vmax`.
    pub(crate) fn from_rows(rows: Vec<Vec<i64>>, vmin: Vec<i64>, vmax: Vec<i64>) -> Self {
        let n = vmin.len();
        debug_assert!(n >= 1 && rows.iter().all(|r| r.len() == n + 1));
        let active = (0..n).map(|i| (0..rows.len()).filter(|&r| rows[r][i + 1] != 0).collect()).collect();
        Self { n, rows, vmin, vmax, active }
    }

    pub(crate) fn level(&self, degree: u64, budget: u64) -> Result<LevelRows> {
        let d = i64::try_from(degree).map_err(|_| Error::Overflow("degree"))?;
        let n = self.n;
        let lo: Vec<i128> = self.vmin.iter().map(|&m| m as i128 * d as i128).collect();
        let hi: Vec<i128> = self.vmax.iter().map(|&m| m as i128 * d as i128).collect();
        // maxrest[r * (n + 1) + i]: largest value of sum_{j >= i} a_j x_j over the box
        let mut maxrest = vec![0i128; self.rows.len() * (n + 1)];
        let mut partial = Vec::with_capacity(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for i in (0..n).rev() {
                let a = row[i + 1] as i128;
                let best = (a * lo[i]).max(a * hi[i]);
                maxrest[r * (n + 1) + i] = maxrest[r * (n + 1) + i + 1] + best;
            }
            let s = row[0] as i128 * d as i128;
            if s + maxrest[r * (n + 1)] < 0 {
                return Ok(self.empty(degree));
            }
            partial.push(s);
        }
        let mut out = self.empty(degree);
        let mut prefix = vec![0i64; n];
        let mut walk = Walk { e: self, lo: &lo, hi: &hi, maxrest: &maxrest, budget, out: &mut out };
        walk.descend(0, &mut partial, &mut prefix)?;
        Ok(out)
    }

    fn empty(&self, degree: u64) -> LevelRows {
        LevelRows { degree, width: self.n.saturating_sub(1), prefixes: Vec::new(), bounds: Vec::new(), points: 0 }
    }
}

struct Walk<'a> {
    e: &'a Enumerator,
    lo: &'a [i128],
    hi: &'a [i128],
    maxrest: &'a [i128],
    budget: u64,
    out: &'a mut LevelRows,
}

impl Walk<'_> {
    fn range(&self, i: usize, partial: &[i128]) -> Option<(i128, i128)> {
        let n = self.e.n;
        let (mut lo, mut hi) = (self.lo[i], self.hi[i]);
        for &r in &self.e.active[i] {
            let a = self.e.rows[r][i + 1] as i128;
            // a x_i >= -(partial + maxrest over later coordinates)
            let rhs = -(partial[r] + self.maxrest[r * (n + 1) + i + 1]);
            if a > 0 {
                lo = lo.max(div_ceil(rhs, a));
            } else {
                hi = hi.min(div_floor(rhs, a));
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    fn descend(&mut self, i: usize, partial: &mut [i128], prefix: &mut [i64]) -> Result<()> {
        let n = self.e.n;
        let Some((lo, hi)) = self.range(i, partial) else {
            return Ok(());
        };
        if i + 1 == n {
            let count = (hi - lo + 1) as u64;
            self.out.points += count;
            if self.out.points > self.budget {
                return Err(Error::DegreeTooLarge { degree: self.out.degree, budget: self.budget });
            }
            self.out.prefixes.extend_from_slice(&prefix[..n - 1]);
            self.out.bounds.push((lo as i64, hi as i64));
            return Ok(());
        }
        for x in lo..=hi {
            prefix[i] = x as i64;
            for &r in &self.e.active[i] {
                partial[r] += self.e.rows[r][i + 1] as i128 * x;
            }
            let res = self.descend(i + 1, partial, prefix);
            for &r in &self.e.active[i] {
                partial[r] -= self.e.rows[r][i + 1] as i128 * x;
            }
            res?;
        }
        Ok(())
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}
