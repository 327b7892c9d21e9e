use num_traits::{One, Zero};

use super::LatticePolytope;
use crate::config::ComputeConfig;
use crate::error::{Error, Result};
use crate::exactlin::Rational;

impl LatticePolytope {
    /// Coefficients (constant term first) of the Ehrhart polynomial,
    /// interpolated through degrees `0..=dim` and checked at `dim + 1`.
    pub fn ehrhart_polynomial(&self, config: &ComputeConfig) -> Result<Vec<Rational>> {
        let n = self.dim();
        let counts: Vec<u64> = (0..=n as u64 + 1).map(|d| self.count_at_degree(d, config)).collect::<Result<_>>()?;
        let ys: Vec<Rational> = counts[..=n].iter().map(|&c| Rational::from_integer(c.into())).collect();
        let coeffs = interpolate(&ys);
        let check = evaluate(&coeffs, n as u64 + 1);
        if check != Rational::from_integer(counts[n + 1].into()) {
            return Err(Error::PreconditionViolated(format!(
                "interpolated Ehrhart polynomial predicts {check} points at degree {}, found {}",
                n + 1,
                counts[n + 1]
            )));
        }
        Ok(coeffs)
    }
}

/// Newton interpolation through `(i, ys[i])`, returned in the monomial basis.
pub(crate) fn interpolate(ys: &[Rational]) -> Vec<Rational> {
    let n = ys.len();
    let mut diff = ys.to_vec();
    let mut newton = Vec::with_capacity(n);
    for k in 0..n {
        newton.push(diff[0].clone());
        diff = diff.windows(2).map(|w| (&w[1] - &w[0]) / Rational::from_integer((k as i64 + 1).into())).collect();
    }
    // sum_k newton[k] * x (x - 1) .. (x - k + 1)
    let mut out = vec![Rational::zero(); n.max(1)];
    let mut basis = vec![Rational::one()];
    for (k, c) in newton.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            out[i] += c * b;
        }
        let mut next = vec![Rational::zero(); basis.len() + 1];
        let shift = Rational::from_integer((k as i64).into());
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * &shift;
        }
        basis = next;
    }
    out
}

pub(crate) fn evaluate(coeffs: &[Rational], x: u64) -> Rational {
    let x = Rational::from_integer(x.into());
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
}
