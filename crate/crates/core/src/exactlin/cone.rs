use serde::{Deserialize, Serialize};

use super::hnf::saturate;
use crate::error::{Error, Result};

/// A polyhedral cone `{x : e.x = 0 for e in equations, n.x >= 0 for n in
/// inequalities}` with primitive integer normals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HRepCone {
    dim: usize,
    equations: Vec<Vec<i64>>,
    inequalities: Vec<Vec<i64>>,
}

impl HRepCone {
    /// Validates lengths, makes every normal primitive and drops zero rows.
    pub fn new(dim: usize, equations: Vec<Vec<i64>>, inequalities: Vec<Vec<i64>>) -> Result<Self> {
        let prep = |rows: Vec<Vec<i64>>| -> Result<Vec<Vec<i64>>> {
            let mut out = Vec::with_capacity(rows.len());
            for mut r in rows {
                if r.len() != dim {
                    return Err(Error::InvalidInput(format!(
                        "normal of length {} in a cone of dimension {dim}",
                        r.len()
                    )));
                }
                if primitive_i64(&mut r) {
                    out.push(r);
                }
            }
            Ok(out)
        };
        Ok(Self { dim, equations: prep(equations)?, inequalities: prep(inequalities)? })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equations(&self) -> &[Vec<i64>] {
        &self.equations
    }

    pub fn inequalities(&self) -> &[Vec<i64>] {
        &self.inequalities
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        debug_assert_eq!(x.len(), self.dim);
        self.equations.iter().all(|e| dot128(e, x) == 0) && self.inequalities.iter().all(|n| dot128(n, x) >= 0)
    }

    /// True when the cone contains no line.
    pub fn is_pointed(&self) -> Result<bool> {
        let rows: Vec<Vec<i64>> = self.equations.iter().chain(&self.inequalities).cloned().collect();
        Ok(super::hnf::matrix_rank(&rows)? == self.dim)
    }

    /// Canonical form for set comparison: equations replaced by the HNF basis
    /// of their saturated lattice, inequalities reduced to zero on the
    /// equation pivot columns, made primitive, sorted and deduplicated.
    pub fn canonical(&self) -> Result<Self> {
        let equations = saturate(&self.equations, self.dim)?;
        let mut inequalities = Vec::with_capacity(self.inequalities.len());
        for n in &self.inequalities {
            let mut v: Vec<i128> = n.iter().map(|&x| x as i128).collect();
            for e in &equations {
                let c = e.iter().position(|&x| x != 0).expect("nonzero HNF row");
                let p = e[c] as i128;
                let q = v[c];
                if q == 0 {
                    continue;
                }
                for (vi, &ei) in v.iter_mut().zip(e) {
                    *vi = vi
                        .checked_mul(p)
                        .and_then(|a| a.checked_sub(q.checked_mul(ei as i128)?))
                        .ok_or(Error::Overflow("inequality reduction"))?;
                }
                let g = v.iter().fold(0i128, |g, &x| num_integer::Integer::gcd(&g, &x));
                if g > 1 {
                    v.iter_mut().for_each(|x| *x /= g);
                }
            }
            let mut r: Vec<i64> = v
                .into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("inequality reduction")))
                .collect::<Result<_>>()?;
            if primitive_i64(&mut r) {
                inequalities.push(r);
            }
        }
        inequalities.sort();
        inequalities.dedup();
        Ok(Self { dim: self.dim, equations, inequalities })
    }

    /// Same lattice points inside the box `[lo, hi]^dim`.
    pub fn agrees_on_box(&self, other: &HRepCone, lo: i64, hi: i64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let mut x = vec![lo; self.dim];
        loop {
            if self.contains(&x) != other.contains(&x) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == self.dim {
                    return true;
                }
                if x[i] < hi {
                    x[i] += 1;
                    break;
                }
                x[i] = lo;
                i += 1;
            }
        }
    }
}

pub(crate) fn dot128(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn primitive_i64(v: &mut [i64]) -> bool {
    let g = v.iter().fold(0i64, |g, &x| num_integer::Integer::gcd(&g, &x));
    if g == 0 {
        return false;
    }
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    true
}
